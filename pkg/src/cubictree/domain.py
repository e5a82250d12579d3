"""The fundamental domain for GL2(A) acting on the tree, truncated at a cusp depth.

The domain contains a central vertex o adjacent to one branch vertex v(l) per
line l in k union {inf}; each branch carries zero, one or two cusp rays
c(p, 1), c(p, 2), ... (one per rational point p on the fiber), and fibers with
a unique point p where F_y vanishes carry an extra terminal vertex e(p).
On a curve singular at p, e(p) coincides with c(p, 2) and is omitted.

All adjacencies are established computationally through tree distances, never
assumed: the builder checks the result is a tree containing the expected rays.
"""

from dataclasses import dataclass

from . import errors
from .coordring import AElem, AFrac
from .curve import INFINITY, classify_fiber, partials, points
from .laurent import LaurentSeries, embed_frac
from .polys import Poly
from .tree import TreeVertex, distance, phi


def point_label(p):
    if p is INFINITY:
        return "inf"
    return f"({p[0].index()},{p[1].index()})"


def line_label(l):
    return "inf" if l is INFINITY else str(l.index())


@dataclass(frozen=True)
class DomainVertex:
    tag: str  # "o", "v", "c", "e"
    l: object  # FieldElem or INFINITY or None (for o)
    point: object  # CurvePoint for c/e tags, else None
    n: int  # cusp index for c tags, else 0
    vertex: TreeVertex

    @property
    def key(self):
        if self.tag == "o":
            return "o"
        if self.tag == "v":
            return f"v({line_label(self.l)})"
        if self.tag == "c":
            return f"c({point_label(self.point)},{self.n})"
        return f"e({point_label(self.point)})"

    def __repr__(self):
        return self.key


@dataclass
class DomainGraph:
    curve: object
    depth: int
    precision: int
    vertices: list
    edges: list  # unordered pairs of vertex keys
    components: dict  # line label -> fiber kind

    def by_key(self, key):
        return self._index[key]

    def __post_init__(self):
        self._index = {v.key: v for v in self.vertices}

    def adjacent_keys(self, key):
        out = []
        for a, b in self.edges:
            if a == key:
                out.append(b)
            elif b == key:
                out.append(a)
        return out


def _slope_series(curve, l, m, N):
    """Laurent expansion of (y - m)/(x - l)."""
    k = curve.k
    num = AElem(curve, Poly(k, (-m,)), Poly.const(k.one))
    den = AElem(curve, Poly(k, (-l, k.one)), Poly(k))
    return embed_frac(AFrac(num, den), N)


def _corner_series(curve, l, m, N):
    """Laurent expansion of (y-m)/(x-l) + F_x(l,m)/(y-m), the e(p) tail."""
    k = curve.k
    fx, _ = partials(curve, l, m)
    num = AElem(curve, Poly.const(fx), Poly(k))
    den = AElem(curve, Poly(k, (-m,)), Poly.const(k.one))
    return _slope_series(curve, l, m, N) + embed_frac(AFrac(num, den), N)


def domain_vertex(curve, spec, N=None):
    """The tree vertex for a symbolic domain-vertex spec.

    spec is one of ("o",), ("v", l), ("c", p, n), ("e", p) with l a field
    element or INFINITY and p a curve point or INFINITY.
    """
    k = curve.k
    t = lambda j: LaurentSeries.t_pow(k, j)
    tag = spec[0]
    if tag == "o":
        return DomainVertex("o", None, None, 0, phi(t(1), t(-1)))
    if tag == "v":
        l = spec[1]
        if l is INFINITY:
            return DomainVertex("v", l, None, 0, phi(LaurentSeries.const(k.one), t(-1)))
        f2 = t(-1) + LaurentSeries.const(l).shift(1)
        return DomainVertex("v", l, None, 0, phi(t(2), f2))
    if tag == "c":
        p, n = spec[1], spec[2]
        if n < 1:
            raise ValueError("cusp index must be >= 1")
        if p is INFINITY:
            return DomainVertex("c", INFINITY, p, n, phi(t(-n), LaurentSeries.zero(k)))
        l, m = p
        w = _slope_series(curve, l, m, N if N is not None else n + 8)
        return DomainVertex("c", l, p, n, phi(t(n + 2), w))
    if tag == "e":
        p = spec[1]
        if p is INFINITY:
            return DomainVertex("e", INFINITY, p, 0, phi(LaurentSeries.const(k.one), LaurentSeries.zero(k)))
        l, m = p
        _, fy = partials(curve, l, m)
        if fy:
            raise errors.NotInE1(f"{point_label(p)} is not in E1 (F_y != 0)")
        w = _corner_series(curve, l, m, N if N is not None else 12)
        return DomainVertex("e", l, p, 0, phi(t(4), w))
    raise ValueError(f"unknown domain vertex tag {tag!r}")


def build_domain(curve, depth=10, precision=None):
    """Construct the fundamental domain truncated at the given cusp depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    k = curve.k
    N = precision if precision is not None else depth + 10
    verts = [domain_vertex(curve, ("o",))]
    components = {}
    lines = list(k.elements()) + [INFINITY]
    for l in lines:
        fib = classify_fiber(curve, l)
        components[line_label(l)] = fib.kind
        verts.append(domain_vertex(curve, ("v", l), N))
        for p in fib.points:
            for n in range(1, depth + 1):
                verts.append(domain_vertex(curve, ("c", p, n), N))
            if p is INFINITY:
                verts.append(domain_vertex(curve, ("e", p), N))
            else:
                fx, fy = partials(curve, *p)
                if not fy and fx:
                    # smooth point of E1 gets the extra terminal vertex;
                    # at a singular point it coincides with c(p,2)
                    verts.append(domain_vertex(curve, ("e", p), N))
    # normal-form uniqueness: distinct keys must give distinct tree vertices
    seen = {}
    for dv in verts:
        if dv.vertex in seen:
            raise errors.CubicTreeError(
                f"domain vertices {seen[dv.vertex]} and {dv.key} coincide"
            )
        seen[dv.vertex] = dv.key
    # edges: verified through tree distance, never assumed
    edges = []
    for i, dv1 in enumerate(verts):
        for dv2 in verts[i + 1 :]:
            if distance(dv1.vertex, dv2.vertex) == 1:
                edges.append((dv1.key, dv2.key))
    dom = DomainGraph(curve, depth, N, verts, edges, components)
    _check_tree_shape(dom)
    return dom


def _check_tree_shape(dom):
    if len(dom.edges) != len(dom.vertices) - 1:
        raise errors.CubicTreeError(
            f"domain is not a tree: {len(dom.vertices)} vertices, {len(dom.edges)} edges"
        )
    # connectivity from o
    adj = {}
    for a, b in dom.edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = {"o"}
    stack = ["o"]
    while stack:
        for w in adj.get(stack.pop(), []):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(dom.vertices):
        raise errors.CubicTreeError("domain graph is not connected")
    # cusp rays: c(p,n) adjacent to c(p,n+1)
    for dv in dom.vertices:
        if dv.tag == "c" and dv.n < dom.depth:
            nxt = f"c({point_label(dv.point)},{dv.n + 1})"
            if nxt not in dom.adjacent_keys(dv.key):
                raise errors.CubicTreeError(f"cusp ray broken at {dv.key}")
    # o adjacent to every v(l)
    o_adj = set(dom.adjacent_keys("o"))
    for dv in dom.vertices:
        if dv.tag == "v" and dv.key not in o_adj:
            raise errors.CubicTreeError(f"{dv.key} not adjacent to o")


def cusps(dom):
    """One (cusp key, point) pair per rational point of the projective curve."""
    out = []
    for p in points(dom.curve):
        key = f"c({point_label(p)},1)"
        if key not in dom._index:  # pragma: no cover
            raise errors.CubicTreeError(f"missing cusp for point {point_label(p)}")
        out.append((key, p))
    return out


def to_json_dict(dom):
    return {
        "schema": 1,
        "depth": dom.depth,
        "components": dict(sorted(dom.components.items())),
        "vertices": [
            {
                "key": dv.key,
                "tag": dv.tag,
                "level": dv.vertex.m,
                "tail": [[e, c.index()] for e, c in dv.vertex.tail],
            }
            for dv in dom.vertices
        ],
        "edges": sorted([sorted(e) for e in dom.edges]),
        "cusps": [[key, point_label(p)] for key, p in cusps(dom)],
    }


_CASE_COLORS = {"none": "lightblue", "unique": "lightsalmon", "two": "lightgreen"}


def to_dot(dom):
    """Graphviz DOT rendering with stable vertex IDs and case coloring."""
    lines = ["graph domain {", '  node [style=filled, fillcolor=white];']
    for dv in dom.vertices:
        attrs = [f'label="{dv.key}"']
        if dv.l is not None:
            case = dom.components[line_label(dv.l)]
            attrs.append(f'fillcolor="{_CASE_COLORS[case]}"')
        lines.append(f'  "{dv.key}" [{", ".join(attrs)}];')
    for a, b in sorted(sorted(e) for e in dom.edges):
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# orbit spot-checks: the domain is a fundamental domain for GL2(A)


def _domain_keys(dom):
    return {dv.vertex: dv.key for dv in dom.vertices}


def orbit_reduce(dom, w, stab_cache=None, budget=200):
    """Move a tree vertex into the domain by stabilizer steps.

    Repeatedly takes the nearest domain vertex d, the neighbor of d on the
    geodesic toward w, and a stabilizer element of d carrying that neighbor
    into the domain; each step strictly reduces the distance to the domain.
    Returns the matching domain key. Raises BudgetExceeded if the walk does
    not land within the step budget.
    """
    from .coordring import Mat2
    from .laurent import embed
    from .stabilizers import stabilizer
    from .tree import apply_matrix, neighbors

    if stab_cache is None:
        stab_cache = {}
    index = _domain_keys(dom)
    N = 2 * dom.depth + 30
    for _ in range(budget):
        if w in index:
            return index[w]
        dv = min(dom.vertices, key=lambda v: (distance(v.vertex, w), v.key))
        d = dv.vertex
        dist = distance(d, w)
        step = next(n for n in neighbors(d) if distance(n, w) == dist - 1)
        if step in index:
            raise errors.CubicTreeError("nearest domain vertex was not nearest")
        if dv.key not in stab_cache:
            grp = stabilizer(dom.curve, dv)
            stab_cache[dv.key] = [
                Mat2(*(embed(e, N) for e in g.entries())) for g in grp.reps
            ]
        moved = None
        for ghat in stab_cache[dv.key]:
            if apply_matrix(ghat, step) in index:
                moved = apply_matrix(ghat, w)
                break
        if moved is None:
            raise errors.CubicTreeError(
                f"no stabilizer of {dv.key} moves the geodesic into the domain"
            )
        if distance_to_domain(dom, moved) >= dist:
            raise errors.CubicTreeError("orbit reduction failed to make progress")
        w = moved
    raise errors.BudgetExceeded("orbit reduction exceeded its step budget")


def distance_to_domain(dom, w):
    return min(distance(dv.vertex, w) for dv in dom.vertices)


def orbit_spotcheck(dom, radius=2, pole_bound=4, budget=10**9):
    """Exhaustive check on tiny fields: enumerate all of GL2(A) up to the
    pole bound, act on the domain, and confirm that the orbit reaches every
    ball vertex and never identifies two domain vertices.

    Returns {"reached": .., "ball": .., "identified": [..]}.
    """
    from .coordring import Mat2, enumerate_bounded_gl2a
    from .laurent import embed
    from .tree import apply_matrix, ball

    curve = dom.curve
    index = _domain_keys(dom)
    o = dom.by_key("o").vertex
    sphere = ball(o, radius, budget=10**6)
    N = 2 * pole_bound + 4 * dom.depth + 16
    reached = {}  # tree vertex -> domain key that reaches it
    identified = []
    for g in enumerate_bounded_gl2a(curve, pole_bound, budget):
        ghat = Mat2(*(embed(e, N) for e in g.entries()))
        for dv in dom.vertices:
            img = apply_matrix(ghat, dv.vertex)
            prev = reached.get(img)
            if prev is None:
                reached[img] = dv.key
            elif prev != dv.key:
                identified.append((prev, dv.key))
            if img in index and index[img] != dv.key:
                identified.append((dv.key, index[img]))
    missing = [v for v in sphere if v not in reached]
    return {
        "ball": len(sphere),
        "reached": len(sphere) - len(missing),
        "missing": missing,
        "identified": sorted(set(identified)),
    }
