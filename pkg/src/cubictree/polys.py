"""Univariate polynomials over a FiniteField, as trimmed coefficient tuples."""

from . import errors


class Poly:
    """Polynomial sum(coeffs[i] * X^i); coeffs trimmed so the last entry is nonzero."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        while coeffs and not coeffs[-1]:
            coeffs = coeffs[:-1]
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def const(cls, c):
        return cls(c.field, (c,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @property
    def degree(self):
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, tuple(self.coeff(i) - other.coeff(i) for i in range(n)))

    def __neg__(self):
        return Poly(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return Poly(self.field)
        self._check(other)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, tuple(out))

    def scale(self, c):
        return Poly(self.field, tuple(c * a for a in self.coeffs))

    def __call__(self, x):
        """Evaluate by Horner's rule; x may live in an extension of the coefficient field."""
        acc = x.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + x.field.lift(c)
        return acc

    def shift_arg(self, c):
        """The polynomial p(X + c)."""
        acc = Poly(self.field)
        lin = Poly(self.field, (c, self.field.one))
        for a in reversed(self.coeffs):
            acc = acc * lin + Poly.const(a)
        return acc

    def lift(self, ext):
        """Coefficients embedded into the extension field ``ext``."""
        return Poly(ext, tuple(ext.lift(c) for c in self.coeffs))

    def _check(self, other):
        if self.field is not other.field:
            raise errors.CurveMismatch("polynomials over different fields")

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c!r}*x^{i}" if i else repr(c))
        return " + ".join(terms)
