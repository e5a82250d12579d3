"""Truncated Laurent series over k in the uniformizer t = x/y.

A series knows its coefficients on the window [n0, prec); everything below n0
is exactly zero, everything at or beyond prec is unknown.  prec = math.inf
marks an exact series (a Laurent polynomial in t).  Arithmetic tracks the
window conservatively and never reports a coefficient it cannot certify.

The embedding of the coordinate ring sends x, y to series with v(x) = -2,
v(y) = -3 and leading coefficient 1; it is computed once per curve by Newton
iteration on the curve equation restricted to x = t*y.
"""

import math

from . import errors
from .coordring import AElem, v_infinity

DEFAULT_PREC = 64


class LaurentSeries:
    __slots__ = ("field", "n0", "coeffs", "prec")

    def __init__(self, field, n0, coeffs, prec):
        # trim leading zeros (they are exact zeros by convention)
        coeffs = list(coeffs)
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            n0 += 1
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if prec == math.inf:
            prec = math.inf
        if not coeffs:
            n0 = 0 if prec == math.inf else prec
        if prec != math.inf and len(coeffs) > prec - n0:
            coeffs = coeffs[: prec - n0]
            while coeffs and not coeffs[-1]:
                coeffs.pop()
            if not coeffs:
                n0 = prec
        self.field = field
        self.n0 = n0
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field, prec=math.inf):
        return cls(field, 0, (), prec)

    @classmethod
    def const(cls, c, prec=math.inf):
        return cls(c.field, 0, (c,), prec)

    @classmethod
    def t_pow(cls, field, k, prec=math.inf):
        return cls(field, k, (field.one,), prec)

    @classmethod
    def from_tail(cls, field, tail):
        """Exact series from a finite {exponent: coefficient} map."""
        if not tail:
            return cls.zero(field)
        lo = min(tail)
        hi = max(tail)
        coeffs = [tail.get(e, field.zero) for e in range(lo, hi + 1)]
        return cls(field, lo, coeffs, math.inf)

    # -- inspection ---------------------------------------------------------

    def coeff(self, e):
        """Coefficient at exponent e; raises if e is beyond the known window."""
        if e >= self.prec:
            raise errors.InsufficientPrecision(
                f"coefficient at t^{e} unknown (prec {self.prec})", required=e + 1
            )
        if e < self.n0 or e >= self.n0 + len(self.coeffs):
            return self.field.zero
        return self.coeffs[e - self.n0]

    def val(self):
        """Valuation: lowest nonzero exponent; math.inf for exact zero; None if unknown."""
        if self.coeffs:
            return self.n0
        return math.inf if self.prec == math.inf else None

    def is_zero_window(self):
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def known_items(self):
        return [
            (self.n0 + i, c) for i, c in enumerate(self.coeffs) if c
        ]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.field is not other.field:
            raise errors.CurveMismatch("series over different fields")

    def __add__(self, other):
        self._check(other)
        prec = min(self.prec, other.prec)
        lo = min(self.n0, other.n0)
        hi = min(prec, max(self.n0 + len(self.coeffs), other.n0 + len(other.coeffs)))
        if hi <= lo:
            return LaurentSeries(self.field, 0, (), prec)
        out = []
        for e in range(lo, hi):
            a = self.coeffs[e - self.n0] if 0 <= e - self.n0 < len(self.coeffs) else self.field.zero
            b = other.coeffs[e - other.n0] if 0 <= e - other.n0 < len(other.coeffs) else self.field.zero
            out.append(a + b)
        return LaurentSeries(self.field, lo, out, prec)

    def __neg__(self):
        return LaurentSeries(self.field, self.n0, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if not self.coeffs and self.prec == math.inf:
            return LaurentSeries.zero(self.field)
        if not other.coeffs and other.prec == math.inf:
            return LaurentSeries.zero(self.field)
        prec = min(self.prec + other.n0, other.prec + self.n0)
        if not self.coeffs or not other.coeffs:
            return LaurentSeries(self.field, 0, (), prec)
        n0 = self.n0 + other.n0
        if prec == math.inf:
            width = len(self.coeffs) + len(other.coeffs) - 1
        else:
            width = prec - n0
            if width <= 0:
                return LaurentSeries(self.field, 0, (), prec)
        out = [self.field.zero] * width
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            jmax = min(len(other.coeffs), width - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return LaurentSeries(self.field, n0, out, prec)

    def scale(self, c):
        return LaurentSeries(self.field, self.n0, [c * a for a in self.coeffs], self.prec)

    def shift(self, k):
        """Multiplication by t^k."""
        prec = self.prec if self.prec == math.inf else self.prec + k
        return LaurentSeries(self.field, self.n0 + k, self.coeffs, prec)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return LaurentSeries(self.field, self.n0, self.coeffs, prec)

    def inverse(self, target_prec=None):
        """Multiplicative inverse, known on a window derived from self (or target_prec).

        For an exact series with infinitely many terms the caller must supply
        target_prec (an absolute exponent bound for the result).
        """
        v = self.val()
        if v is None:
            raise errors.InsufficientPrecision(
                "cannot invert a series with no certified nonzero coefficient"
            )
        if v == math.inf:
            raise ZeroDivisionError("inverse of zero series")
        if self.prec == math.inf:
            width = (DEFAULT_PREC if target_prec is None else target_prec) + v
        else:
            width = self.prec - v
            if target_prec is not None:
                width = min(width, target_prec + v)
        if width <= 0:
            raise errors.InsufficientPrecision("inverse window is empty")
        lead = self.coeffs[0]
        ilead = lead.inverse()
        # reciprocal of 1 + u with u = higher terms, window length `width`
        out = [self.field.zero] * width
        out[0] = ilead
        for n in range(1, width):
            acc = self.field.zero
            jmax = min(n, len(self.coeffs) - 1)
            for j in range(1, jmax + 1):
                if self.coeffs[j]:
                    acc = acc + self.coeffs[j] * out[n - j]
            out[n] = -ilead * acc
        return LaurentSeries(self.field, -v, out, -v + width)

    def div(self, other, target_prec=None):
        return self * other.inverse(target_prec=target_prec)

    def __eq__(self, other):
        """Equality of known data (window and coefficients)."""
        return (
            isinstance(other, LaurentSeries)
            and self.field is other.field
            and self.n0 == other.n0
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((self.n0, self.coeffs, self.prec))

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(
                f"{c!r}*t^{self.n0 + i}" for i, c in enumerate(self.coeffs) if c
            )
        return f"<{body} (prec {self.prec})>"


def val(series):
    """The valuation of a series (module-level spelling)."""
    return series.val()


_expand_cache = {}


def expand_xy(curve, N=DEFAULT_PREC):
    """Laurent expansions (x_hat, y_hat) of x and y at infinity, certified below t^N.

    Solves F(t*y, y) = 0 for the branch y = t^-3 (1 + ...) by Newton iteration;
    x_hat = t * y_hat exactly.
    """
    if N < 8:
        raise ValueError("precision must be at least 8")
    key = (curve, N)
    if key in _expand_cache:
        return _expand_cache[key]
    k = curve.k
    t = lambda j: LaurentSeries.t_pow(k, j)
    c = lambda a: LaurentSeries.const(a)
    # G(y) = F(t*y, y) = -t^3 y^3 + (1 + a1 t - a2 t^2) y^2 + (a3 - a4 t) y - a6
    q3 = -t(3)
    q2 = c(k.one) + c(curve.a1) * t(1) - c(curve.a2) * t(2)
    q1 = c(curve.a3) - c(curve.a4) * t(1)
    q0 = -c(curve.a6)

    def G(y):
        return ((q3 * y + q2) * y + q1) * y + q0

    def Gp(y):
        three = c(k(3))
        two = c(k(2))
        return (three * q3 * y + two * q2) * y + q1

    y = LaurentSeries(k, -3, (k.one,), N)
    for _ in range(64):
        g = G(y)
        if g.is_zero_window():
            break
        y = y - g.div(Gp(y))
    else:
        raise errors.NoConvergence("Newton iteration did not converge")
    if y.prec < N or not G(y).is_zero_window():
        raise errors.NoConvergence("expansion lost precision")
    x = y.shift(1)
    _expand_cache[key] = (x, y)
    return x, y


def embed(a, N=DEFAULT_PREC):
    """Image of an AElem in the Laurent series field, certified below t^N."""
    if not a:
        return LaurentSeries.zero(a.curve.k)
    du = max(a.u.degree, 0)
    dv = max(a.v.degree, 0)
    work = N + 2 * (du + dv) + 10
    xh, yh = expand_xy(a.curve, work)
    k = a.curve.k
    acc = _eval_poly(a.u, xh, k)
    if a.v:
        acc = acc + _eval_poly(a.v, xh, k) * yh
    if acc.prec < N:
        raise errors.InsufficientPrecision(
            f"embedding lost precision ({acc.prec} < {N})", required=N
        )
    return acc.truncate(N)


def _eval_poly(p, xh, k):
    acc = LaurentSeries.zero(k)
    for c in reversed(p.coeffs):
        acc = acc * xh + LaurentSeries.const(c)
    return acc


def embed_frac(fr, N=DEFAULT_PREC):
    """Image of an AFrac in the Laurent series field, certified below t^N."""
    dv = v_infinity(fr.den)
    num = embed(fr.num, N + abs(int(dv)) + 4) if fr.num else LaurentSeries.zero(fr.den.curve.k)
    den = embed(fr.den, N + abs(int(dv)) + 4)
    if not fr.num:
        return LaurentSeries.zero(fr.den.curve.k, prec=N)
    out = num.div(den)
    if out.prec < N:
        raise errors.InsufficientPrecision(
            f"fraction embedding lost precision ({out.prec} < {N})", required=N
        )
    return out.truncate(N)
