"""The Bruhat-Tits tree for GL2 over k((t)).

Vertices are cosets g*K*Z (K = GL2(k[[t]]), Z the center) in normal form:
a level m and a finite tail f supported on exponents strictly below m, so that
the vertex is the class of the matrix (t^m, f; 0, 1).  Equality of vertices is
structural.  The tree is (q+1)-regular: one down-neighbor (level m-1, tail
truncated) and q up-neighbors (level m+1, tail extended by b*t^m).
"""

import math
from dataclasses import dataclass

from . import errors
from .coordring import Mat2
from .laurent import LaurentSeries


@dataclass(frozen=True)
class TreeVertex:
    field: object
    m: int
    tail: tuple  # sorted ((exponent, coefficient), ...), exponents < m, coeffs nonzero

    def tail_dict(self):
        return dict(self.tail)

    def key(self):
        return (self.m, tuple((e, c.index()) for e, c in self.tail))

    def __repr__(self):
        f = "+".join(f"{c!r}t^{e}" for e, c in self.tail) or "0"
        return f"V(m={self.m}, f={f})"


def _make_vertex(field, m, items):
    tail = tuple(sorted((e, c) for e, c in items if e < m and c))
    return TreeVertex(field, m, tail)


def phi(f1, f2):
    """The vertex of the coset (f1, f2; 0, 1)*K*Z.

    f1 must have a certified valuation m; f2 must be known below exponent m.
    """
    m = f1.val()
    if m is None or m == math.inf:
        raise errors.InsufficientPrecision("phi: first argument needs a certified valuation")
    if f2.prec < m:
        raise errors.InsufficientPrecision(
            f"phi: second argument known only below t^{f2.prec}, need t^{m}", required=m
        )
    return _make_vertex(f1.field, m, f2.known_items())


def vertex_matrix(v):
    """The normal-form coset representative (t^m, f; 0, 1) as an exact Laurent matrix."""
    k = v.field
    return Mat2(
        LaurentSeries.t_pow(k, v.m),
        LaurentSeries.from_tail(k, v.tail_dict()),
        LaurentSeries.zero(k),
        LaurentSeries.const(k.one),
    )


def _val_lower_bound(s):
    v = s.val()
    return s.prec if v is None else v


def vertex_from_matrix(g):
    """Normal form of the coset g*K*Z by column reduction over k[[t]].

    Raises Singular for a (certifiably or undecidably) singular matrix and
    InsufficientPrecision when the reduction needs unknown coefficients.
    """
    det = g.det()
    vdet = det.val()
    if vdet is None:
        raise errors.InsufficientPrecision("determinant valuation undecidable")
    if vdet == math.inf:
        raise errors.Singular("matrix is singular")
    a, b, c, d = g.a, g.b, g.c, g.d
    # order the columns so the bottom-right entry has the minimal valuation
    vc, vd = c.val(), d.val()
    if vc == math.inf and vd == math.inf:
        raise errors.Singular("bottom row is zero")
    lc = _val_lower_bound(c)
    ld = _val_lower_bound(d)
    if vd is not None and vd != math.inf and vd <= lc:
        pass  # keep columns: c/d is integral
    elif vc is not None and vc != math.inf and vc <= ld:
        a, b, c, d = b, a, d, c
        vd = vc
    else:
        raise errors.InsufficientPrecision("cannot order bottom-row valuations")
    # column op col1 <- col1 - (c/d) col2 kills the bottom-left entry exactly;
    # the level then reads off the determinant: m = v(det) - 2 v(d)
    m = vdet - 2 * vd
    f = b.div(d)
    if f.prec < m:
        raise errors.InsufficientPrecision(
            f"tail known only below t^{f.prec}, need t^{m}", required=m
        )
    return _make_vertex(b.field, m, f.known_items())


def apply_matrix(g, v):
    """The image of vertex v under left multiplication by g (a Laurent Mat2)."""
    return vertex_from_matrix(g * vertex_matrix(v))


def neighbors(v):
    """The q+1 adjacent vertices: one down, q up."""
    k = v.field
    out = [_make_vertex(k, v.m - 1, v.tail)]
    for b in k.elements():
        items = list(v.tail)
        if b:
            items.append((v.m, b))
        out.append(_make_vertex(k, v.m + 1, items))
    return out


def distance(v1, v2):
    """Tree distance, in closed form: (m1 - c) + (m2 - c) with
    c = min(m1, m2, val(f1 - f2))."""
    t1, t2 = v1.tail_dict(), v2.tail_dict()
    diff = math.inf
    for e in set(t1) | set(t2):
        z = v1.field.zero
        if t1.get(e, z) != t2.get(e, z):
            diff = min(diff, e)
    c = min(v1.m, v2.m, diff)
    return (v1.m - c) + (v2.m - c)


def ball(center, r, budget=10**6):
    """All vertices at tree distance <= r from center (BFS over neighbors)."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    q = center.field.order
    size = 1 if r == 0 else 1 + (q + 1) * (q**r - 1) // (q - 1)
    if size > budget:
        raise errors.BudgetExceeded(f"ball of size {size} exceeds budget {budget}")
    seen = {center}
    frontier = [center]
    for _ in range(r):
        nxt = []
        for v in frontier:
            for w in neighbors(v):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen, key=lambda v: v.key())
