import random

import pytest

from cubictree.curve import INFINITY, WeierstrassCurve, classify_fiber, points
from cubictree.domain import (
    build_domain,
    cusps,
    distance_to_domain,
    domain_vertex,
    orbit_reduce,
    to_dot,
    to_json_dict,
)
from cubictree.field import make_field
from cubictree.tree import ball, distance, neighbors


@pytest.fixture(scope="module")
def dom5():
    curve = WeierstrassCurve.from_ints(make_field(5), 0, 0, 0, -1, 0)
    return build_domain(curve, depth=4)


def test_domain_is_a_tree(dom5):
    assert len(dom5.edges) == len(dom5.vertices) - 1
    # connectivity: BFS from o over domain edges reaches everything
    seen = {"o"}
    frontier = ["o"]
    while frontier:
        nxt = []
        for key in frontier:
            for other in dom5.adjacent_keys(key):
                if other not in seen:
                    seen.add(other)
                    nxt.append(other)
        frontier = nxt
    assert seen == {dv.key for dv in dom5.vertices}


def test_edges_have_tree_distance_one(dom5):
    for a, b in dom5.edges:
        assert distance(dom5.by_key(a).vertex, dom5.by_key(b).vertex) == 1


def test_one_cusp_per_rational_point(dom5):
    cs = cusps(dom5)
    assert len(cs) == len(points(dom5.curve)) == 8
    for key, _ in cs:
        dv = dom5.by_key(key)
        assert dv.tag == "c" and dv.n == 1


def test_cusp_rays_have_full_depth(dom5):
    for p in points(dom5.curve):
        for n in range(1, dom5.depth + 1):
            spec_key = f"c({'inf' if p is INFINITY else f'({p[0].index()},{p[1].index()})'},{n})"
            assert spec_key in {dv.key for dv in dom5.vertices}


def test_e_vertex_adjacent_to_first_cusp_vertex(dom5):
    for dv in dom5.vertices:
        if dv.tag != "e":
            continue
        adj = dom5.adjacent_keys(dv.key)
        label = dv.key[2:-1]
        assert f"c({label},1)" in adj


def test_singular_curve_omits_e_vertex():
    curve = WeierstrassCurve.from_ints(make_field(5), 0, 0, 0, 0, 0)  # y^2 = x^3
    dom = build_domain(curve, depth=3)
    keys = {dv.key for dv in dom.vertices}
    assert "e((0,0))" not in keys  # e(p) coincides with c(p,2) at a singular point
    assert "c((0,0),2)" in keys


def test_domain_vertices_distinct(dom5):
    verts = [dv.vertex for dv in dom5.vertices]
    assert len(set(verts)) == len(verts)


def test_json_and_dot_deterministic(dom5):
    d1, d2 = to_json_dict(dom5), to_json_dict(dom5)
    assert d1 == d2 and d1["schema"] == 1
    assert to_dot(dom5) == to_dot(dom5)
    dot = to_dot(dom5)
    assert dot.startswith("graph domain {")
    for dv in dom5.vertices:
        assert f'"{dv.key}"' in dot


def test_components_match_classifier(dom5):
    curve = dom5.curve
    for l in list(curve.k.elements()) + [INFINITY]:
        label = "inf" if l is INFINITY else str(l.index())
        assert dom5.components[label] == classify_fiber(curve, l).kind


def test_orbit_reduce_fixes_domain_vertices(dom5):
    for dv in dom5.vertices[:6]:
        assert orbit_reduce(dom5, dv.vertex) == dv.key


def test_orbit_reduce_reaches_domain(dom5):
    rng = random.Random(8)
    o = domain_vertex(dom5.curve, ("o",)).vertex
    for _ in range(10):
        w = o
        for _ in range(rng.randint(1, 3)):
            w = rng.choice(neighbors(w))
        key = orbit_reduce(dom5, w)
        assert key in {dv.key for dv in dom5.vertices}
    assert distance_to_domain(dom5, o) == 0
