"""Weierstrass cubics over a finite field: evaluation, point counts, fiber classification.

The fixed sign convention throughout is

    F(x, y) = y^2 + a1*x*y + a3*y - x^3 - a2*x^2 - a4*x - a6.

Singular curves are accepted; smoothness is a flag (see :func:`is_smooth`),
checked by an exhaustive singular-point scan over the field and its quadratic
extension, cross-checked against the standard discriminant.
"""

import functools
from dataclasses import dataclass

from . import errors
from .field import FieldElem, quad_roots


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INFINITY = _Infinity()


@dataclass(frozen=True)
class WeierstrassCurve:
    k: object
    a1: FieldElem
    a2: FieldElem
    a3: FieldElem
    a4: FieldElem
    a6: FieldElem

    @classmethod
    def from_ints(cls, k, a1, a2, a3, a4, a6):
        return cls(k, k(a1), k(a2), k(a3), k(a4), k(a6))

    def __repr__(self):
        c = [self.a1, self.a2, self.a3, self.a4, self.a6]
        return f"Curve({','.join(map(repr, c))})/{self.k!r}"


@dataclass(frozen=True)
class FiberCase:
    """Classification of the fiber over a line x = l.

    kind is "none", "unique" or "two"; ``points`` holds the rational points on
    the fiber; for kind "none", ``witness`` is a root of F(l, y) in the
    quadratic extension.
    """

    kind: str
    points: tuple
    witness: object = None


def eval_F(curve, l, m):
    """Value of F at (l, m)."""
    return (
        m * m
        + curve.a1 * l * m
        + curve.a3 * m
        - l * l * l
        - curve.a2 * l * l
        - curve.a4 * l
        - curve.a6
    )


def partials(curve, l, m):
    """(F_x, F_y) at (l, m), from the formal derivatives of F."""
    k = curve.k
    three = k(3)
    two = k(2)
    fx = curve.a1 * m - three * l * l - two * curve.a2 * l - curve.a4
    fy = two * m + curve.a1 * l + curve.a3
    return fx, fy


def lift_curve(curve, ext):
    """The same equation with coefficients embedded in the extension field."""
    return WeierstrassCurve(
        ext,
        ext.lift(curve.a1),
        ext.lift(curve.a2),
        ext.lift(curve.a3),
        ext.lift(curve.a4),
        ext.lift(curve.a6),
    )


def discriminant(curve):
    """The standard Weierstrass discriminant (valid in every characteristic)."""
    k = curve.k
    a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
    b2 = a1 * a1 + k(4) * a2
    b4 = k(2) * a4 + a1 * a3
    b6 = a3 * a3 + k(4) * a6
    b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - k(8) * b4 * b4 * b4 - k(27) * b6 * b6 + k(9) * b2 * b4 * b6


def singular_points(curve):
    """Affine points over the quadratic extension where F = F_x = F_y = 0."""
    ext = curve.k.extension()
    ce = lift_curve(curve, ext)
    out = []
    for l in ext.elements():
        for m in ext.elements():
            if not eval_F(ce, l, m):
                fx, fy = partials(ce, l, m)
                if not fx and not fy:
                    out.append((l, m))
    return out


@functools.lru_cache(maxsize=None)
def is_smooth(curve):
    """True iff no point over F_q or F_{q^2} is singular.

    A singular Weierstrass cubic has a unique singular point, defined over an
    extension of degree at most 2, so the scan is complete.  Cross-checked
    against the discriminant (a mismatch means a bug).
    """
    scan = not singular_points(curve)
    disc = bool(discriminant(curve))
    if scan != disc:  # pragma: no cover
        raise errors.CubicTreeError("singular-point scan disagrees with discriminant")
    return scan


def points(curve):
    """All rational points of the projective curve: affine solutions plus INFINITY."""
    pts = []
    for l in curve.k.elements():
        roots = sorted(fiber_roots(curve, l), key=lambda m: m.index())
        pts.extend((l, m) for m in roots)
    pts.sort(key=lambda p: (p[0].index(), p[1].index()))
    pts.append(INFINITY)
    return pts


def fiber_roots(curve, l):
    """Roots of F(l, y) = 0 in y (a monic quadratic in y)."""
    k = curve.k
    c1 = curve.a1 * l + curve.a3
    c0 = -(l * l * l) - curve.a2 * l * l - curve.a4 * l - curve.a6
    return quad_roots(k.one, c1, c0)


def classify_fiber(curve, l):
    """The three-way fiber case at x = l (INFINITY is always a unique point)."""
    if l is INFINITY:
        return FiberCase("unique", (INFINITY,))
    roots = sorted(fiber_roots(curve, l), key=lambda m: m.index())
    if not roots:
        ext = curve.k.extension()
        ce = lift_curve(curve, ext)
        wroots = sorted(fiber_roots(ce, ext.lift(l)), key=lambda m: m.index())
        return FiberCase("none", (), witness=wroots[0])
    if len(roots) == 1:
        return FiberCase("unique", ((l, roots[0]),))
    return FiberCase("two", ((l, roots[0]), (l, roots[1])))


def shift_curve(curve, l, m=None):
    """Coefficients of F(x + l, y + m) in standard form (m defaults to 0).

    If m is given, (l, m) must lie on the curve, so the shifted curve passes
    through the origin.
    """
    k = curve.k
    if m is None:
        m_ = k.zero
    else:
        m_ = m
        if eval_F(curve, l, m_):
            raise errors.PointNotOnCurve(f"({l!r},{m_!r}) not on {curve!r}")
    fx, fy = partials(curve, l, m_)
    three = k(3)
    return WeierstrassCurve(
        k,
        curve.a1,
        curve.a2 + three * l,
        fy,
        -fx,
        -eval_F(curve, l, m_),
    )


def e1_points(curve):
    """The set E1: rational points with F_y = 0, together with INFINITY."""
    out = [p for p in points(curve) if p is not INFINITY and not partials(curve, *p)[1]]
    out.append(INFINITY)
    return out
