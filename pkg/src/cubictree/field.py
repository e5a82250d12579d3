"""Exact arithmetic in prime fields F_p and quadratic extension towers.

A :class:`FiniteField` is either a prime field F_p or a degree-2 extension of
another FiniteField, defined by a monic irreducible quadratic
``X^2 + m1*X + m0`` over the base; ``omega`` denotes a fixed root of it.
Towers arise internally (e.g. the quadratic extension of F_{p^2} used by
smoothness scans); the public constructor :func:`make_field` exposes only
F_p and F_{p^2}.

Elements are immutable and hashable.  The extension modulus is selected
deterministically: the first irreducible ``X^2 + m1*X + m0`` in lexicographic
order of ``(m1, m0)`` (by element index), so omega is reproducible.
"""

from . import errors

_prime_cache = {}


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FiniteField:
    """A finite field of order p^(2^h), built as a tower of quadratic extensions."""

    __slots__ = ("p", "base", "modulus", "order", "zero", "one", "_ext")

    def __init__(self, p=None, base=None, modulus=None):
        if base is None:
            self.p = p
            self.base = None
            self.modulus = None
            self.order = p
        else:
            self.p = base.p
            self.base = base
            self.modulus = modulus  # (m0, m1): X^2 + m1*X + m0
            self.order = base.order ** 2
        self.zero = self._make(0)
        self.one = self._make(1)
        self._ext = None

    def _make(self, idx):
        if self.base is None:
            return FieldElem(self, idx % self.p)
        b = self.base.order
        return FieldElem(self, (self.base._make(idx % b), self.base._make(idx // b)))

    def __call__(self, value):
        """Element from an integer (reduced mod p for prime fields, base-p^e digits otherwise)."""
        if isinstance(value, FieldElem):
            if value.field is not self:
                raise errors.CurveMismatch("element from a different field")
            return value
        if self.base is None:
            return FieldElem(self, value % self.p)
        return self._make(value % self.order)

    def elements(self):
        """All field elements in index order."""
        return [self._make(i) for i in range(self.order)]

    @property
    def omega(self):
        """The adjoined root of the extension modulus."""
        if self.base is None:
            raise errors.CubicTreeError("prime field has no omega")
        return FieldElem(self, (self.base.zero, self.base.one))

    def lift(self, elem):
        """Embed an element of the base field into this extension."""
        if elem.field is self:
            return elem
        if self.base is None or elem.field is not self.base:
            if self.base is not None:
                return FieldElem(self, (self.base.lift(elem), self.base.zero))
            raise errors.CurveMismatch("cannot lift element into this field")
        return FieldElem(self, (elem, self.base.zero))

    def extension(self):
        """The quadratic extension of this field, with a deterministic modulus."""
        if self._ext is None:
            mod = self._find_modulus()
            self._ext = FiniteField(base=self, modulus=mod)
        return self._ext

    def _find_modulus(self):
        elems = self.elements()
        for m1 in elems:
            for m0 in elems:
                # irreducible iff X^2 + m1*X + m0 has no root here
                if all(x * x + m1 * x + m0 for x in elems):
                    return (m0, m1)
        raise errors.NoIrreducibleFound(
            f"no irreducible quadratic over field of order {self.order}"
        )

    def __repr__(self):
        return f"GF({self.order})"


class FieldElem:
    """An element of a FiniteField.  ``val`` is an int (prime field) or a pair of base elements."""

    __slots__ = ("field", "val")

    def __init__(self, field, val):
        self.field = field
        self.val = val

    def __add__(self, other):
        f = self.field
        if f.base is None:
            return FieldElem(f, (self.val + other.val) % f.p)
        a0, a1 = self.val
        b0, b1 = other.val
        return FieldElem(f, (a0 + b0, a1 + b1))

    def __sub__(self, other):
        f = self.field
        if f.base is None:
            return FieldElem(f, (self.val - other.val) % f.p)
        a0, a1 = self.val
        b0, b1 = other.val
        return FieldElem(f, (a0 - b0, a1 - b1))

    def __neg__(self):
        f = self.field
        if f.base is None:
            return FieldElem(f, -self.val % f.p)
        a0, a1 = self.val
        return FieldElem(f, (-a0, -a1))

    def __mul__(self, other):
        f = self.field
        if f.base is None:
            return FieldElem(f, (self.val * other.val) % f.p)
        a0, a1 = self.val
        b0, b1 = other.val
        m0, m1 = f.modulus
        c2 = a1 * b1  # omega^2 = -m1*omega - m0
        return FieldElem(f, (a0 * b0 - c2 * m0, a0 * b1 + a1 * b0 - c2 * m1))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        return self * other.inverse()

    def __bool__(self):
        if self.field.base is None:
            return self.val != 0
        return bool(self.val[0]) or bool(self.val[1])

    def __eq__(self, other):
        return (
            isinstance(other, FieldElem)
            and self.field is other.field
            and self.val == other.val
        )

    def __hash__(self):
        return hash((id(self.field), self.index()))

    def index(self):
        """Canonical integer index in [0, order)."""
        if self.field.base is None:
            return self.val
        c0, c1 = self.val
        return c0.index() + c1.index() * self.field.base.order

    def __repr__(self):
        if self.field.base is None:
            return str(self.val)
        c0, c1 = self.val
        if not c1:
            return repr(c0)
        return f"({c0!r}+{c1!r}w)"


def make_field(p, e=1):
    """Construct F_p (e=1) or F_{p^2} (e=2)."""
    if not _is_prime(p):
        raise errors.NotPrime(f"{p} is not prime")
    if e not in (1, 2):
        raise ValueError("extension degree must be 1 or 2")
    if p not in _prime_cache:
        _prime_cache[p] = FiniteField(p=p)
    fp = _prime_cache[p]
    return fp if e == 1 else fp.extension()


def quad_roots(c2, c1, c0):
    """All y in the field with c2*y^2 + c1*y + c0 = 0, by enumeration.

    Characteristic-agnostic; requires c2 != 0.
    """
    if not c2:
        raise errors.LeadingZero("leading coefficient is zero")
    return {y for y in c2.field.elements() if not (c2 * y * y + c1 * y + c0)}
