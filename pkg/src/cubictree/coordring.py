"""Canonical arithmetic in the coordinate ring A = k[x,y]/(F) and its fraction field.

Elements of A are stored in the normal form u(x) + v(x)*y; products eliminate
y^2 via the curve relation y^2 = x^3 + a2 x^2 + a4 x + a6 - a1 x y - a3 y.
Fractions are never reduced to lowest terms; equality cross-multiplies.

The pole-order valuation at infinity is v(x) = -2, v(y) = -3, so
v(u + v*y) = min(-2 deg u, -3 - 2 deg v) exactly (the candidates have
opposite parity, so no cancellation is possible).
"""

import itertools
import math

from . import errors
from .polys import Poly

DEFAULT_BUDGET = 10**9


class AElem:
    """u(x) + v(x)*y in the coordinate ring of a fixed curve."""

    __slots__ = ("curve", "u", "v")

    def __init__(self, curve, u, v):
        self.curve = curve
        self.u = u
        self.v = v

    @classmethod
    def const(cls, curve, c):
        return cls(curve, Poly.const(curve.k(c)), Poly(curve.k))

    @classmethod
    def from_uv(cls, curve, u, v):
        return cls(curve, u, v)

    @classmethod
    def x(cls, curve):
        return cls(curve, Poly.x(curve.k), Poly(curve.k))

    @classmethod
    def y(cls, curve):
        return cls(curve, Poly(curve.k), Poly.const(curve.k.one))

    def _check(self, other):
        if self.curve != other.curve:
            raise errors.CurveMismatch("elements of different coordinate rings")

    def __add__(self, other):
        self._check(other)
        return AElem(self.curve, self.u + other.u, self.v + other.v)

    def __sub__(self, other):
        self._check(other)
        return AElem(self.curve, self.u - other.u, self.v - other.v)

    def __neg__(self):
        return AElem(self.curve, -self.u, -self.v)

    def __mul__(self, other):
        self._check(other)
        c = self.curve
        k = c.k
        uu = self.u * other.u
        uv = self.u * other.v + self.v * other.u
        vv = self.v * other.v
        if vv:
            # y^2 = S(x) - (a1 x + a3) y
            s = Poly(k, (c.a6, c.a4, c.a2, k.one))
            lin = Poly(k, (c.a3, c.a1))
            uu = uu + vv * s
            uv = uv - vv * lin
        return AElem(c, uu, uv)

    def scale(self, c):
        return AElem(self.curve, self.u.scale(c), self.v.scale(c))

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def __eq__(self, other):
        return (
            isinstance(other, AElem)
            and self.curve == other.curve
            and self.u == other.u
            and self.v == other.v
        )

    def __hash__(self):
        return hash((self.u, self.v))

    def conj(self):
        """The image under y -> -y - a1 x - a3 (the other root of the fiber quadratic)."""
        c = self.curve
        lin = Poly(c.k, (c.a3, c.a1))
        return AElem(c, self.u - self.v * lin, -self.v)

    def norm(self):
        """self * self.conj(), a polynomial in x (the y-part cancels)."""
        prod = self * self.conj()
        if prod.v:  # pragma: no cover
            raise errors.CubicTreeError("norm has a y-component")
        return prod.u

    def is_constant(self):
        return self.u.degree <= 0 and not self.v

    def constant_value(self):
        if not self.is_constant():
            raise errors.CubicTreeError("not a constant")
        return self.u.coeff(0)

    def __repr__(self):
        if not self.v:
            return f"[{self.u!r}]"
        return f"[{self.u!r} + ({self.v!r})*y]"


def v_infinity(a):
    """Pole-order valuation at infinity; +inf for zero."""
    cand = []
    if a.u:
        cand.append(-2 * a.u.degree)
    if a.v:
        cand.append(-3 - 2 * a.v.degree)
    return min(cand) if cand else math.inf


class AFrac:
    """A fraction num/den of AElems; den nonzero; no canonical reduction."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if not den:
            raise errors.ZeroDenominator("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_a(cls, a):
        return cls(a, AElem.const(a.curve, 1))

    def __add__(self, other):
        return AFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return AFrac(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return AFrac(-self.num, self.den)

    def __mul__(self, other):
        return AFrac(self.num * other.num, self.den * other.den)

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero fraction")
        return AFrac(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return frac_eq(self, other)

    def __hash__(self):  # pragma: no cover
        raise TypeError("AFrac is unhashable (equality is cross-multiplicative)")

    def __repr__(self):
        return f"{self.num!r}/{self.den!r}"


def frac_eq(a, b):
    """Cross-multiplicative equality in the fraction field."""
    return a.num * b.den == b.num * a.den


class Mat2:
    """A 2x2 matrix over any ring whose elements support +, -, *."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    def __mul__(self, other):
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self):
        return self.a * self.d - self.b * self.c

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def map(self, f):
        return Mat2(f(self.a), f(self.b), f(self.c), f(self.d))

    def adjugate(self):
        return Mat2(self.d, -self.b, -self.c, self.a)

    def frac_inverse(self):
        """Inverse of a matrix over AFrac (or of AElems lifted to AFrac)."""
        m = self.map(lambda e: e if isinstance(e, AFrac) else AFrac.from_a(e))
        det = m.det()
        inv = det.inverse()
        return m.adjugate().map(lambda e: e * inv)

    def __eq__(self, other):
        return (
            isinstance(other, Mat2)
            and self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"[{self.a!r} {self.b!r}; {self.c!r} {self.d!r}]"


def lspace_basis(curve, n):
    """Monomial basis of L(n*infinity): x^i y^j with j <= 1 and 2i + 3j <= n."""
    if n < 0:
        raise ValueError("pole bound must be nonnegative")
    basis = []
    for j in (0, 1):
        for i in itertools.count():
            if 2 * i + 3 * j > n:
                break
            mono = AElem.x(curve)
            elem = AElem.const(curve, 1)
            for _ in range(i):
                elem = elem * mono
            if j:
                elem = elem * AElem.y(curve)
            basis.append(elem)
    basis.sort(key=lambda a: -v_infinity(a))
    return basis


def lspace_elements(curve, n):
    """All elements of L(n*infinity), enumerated deterministically."""
    basis = lspace_basis(curve, n)
    elems = curve.k.elements()
    for coeffs in itertools.product(elems, repeat=len(basis)):
        acc = AElem.const(curve, 0)
        for c, b in zip(coeffs, basis):
            acc = acc + b.scale(c)
        yield acc


def enumerate_bounded_gl2a(curve, bound, budget=DEFAULT_BUDGET):
    """All 2x2 matrices with entries in L(bound*infinity) and det in k^x.

    Streams deterministically.  The raw search space has size
    q^(4*dim L(bound)); a budget guard rejects oversized requests.
    """
    dim = len(lspace_basis(curve, bound))
    q = curve.k.order
    if q ** (4 * dim) > budget:
        raise errors.BudgetExceeded(
            f"raw search space q^(4*{dim}) exceeds budget {budget}"
        )
    pool = list(lspace_elements(curve, bound))
    for a, b, c, d in itertools.product(pool, repeat=4):
        m = Mat2(a, b, c, d)
        det = m.det()
        if det.is_constant() and det.constant_value():
            yield m
