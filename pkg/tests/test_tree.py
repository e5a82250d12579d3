import random
from collections import deque

import pytest

from cubictree.field import make_field
from cubictree.laurent import LaurentSeries
from cubictree.tree import (
    TreeVertex,
    apply_matrix,
    ball,
    distance,
    neighbors,
    phi,
    vertex_from_matrix,
    vertex_matrix,
)
from cubictree.coordring import Mat2


@pytest.fixture
def k():
    return make_field(5)


def origin(k):
    return TreeVertex(k, 0, ())


def test_origin_and_phi(k):
    o = origin(k)
    t = LaurentSeries.t_pow(k, 1, prec=16)
    # elementary divisors of the lattice pair are t^-1 and t^2, so d = 3
    assert phi(t, t.inverse()) != o
    assert distance(phi(t, t.inverse()), o) == 3
    assert phi(LaurentSeries.const(k.one, prec=16), LaurentSeries.zero(k, 16)) == o


def test_neighbor_count_is_q_plus_one(k):
    o = origin(k)
    for v in ball(o, 2):
        nbrs = neighbors(v)
        assert len(nbrs) == k.order + 1
        assert len(set(nbrs)) == k.order + 1
        for w in nbrs:
            assert distance(v, w) == 1


def test_ball_sizes_match_formula():
    # |B_r| = 1 + (q+1)(q^r - 1)/(q - 1)
    for p in (2, 3, 5):
        k = make_field(p)
        o = origin(k)
        q = k.order
        for r in range(4):
            expected = 1 + (q + 1) * (q**r - 1) // (q - 1)
            assert len(ball(o, r)) == expected


def test_distance_matches_bfs(k):
    o = origin(k)
    verts = ball(o, 2)
    adj = {v: set(neighbors(v)) for v in verts}
    vset = set(verts)
    for src in verts:
        seen = {src: 0}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for w in adj.get(v, ()):
                if w in vset and w not in seen:
                    seen[w] = seen[v] + 1
                    queue.append(w)
        for dst in verts:
            assert distance(src, dst) == seen[dst]


def test_vertex_matrix_round_trip(k):
    rng = random.Random(6)
    for _ in range(30):
        m = rng.randint(-3, 3)
        tail = tuple(
            (e, k(rng.randrange(1, 5)))
            for e in sorted(rng.sample(range(m - 4, m), rng.randint(0, 3)))
        )
        v = TreeVertex(k, m, tail)
        assert vertex_from_matrix(vertex_matrix(v)) == v


def test_apply_matrix_is_isometry(k):
    # unimodular integral matrices act by graph automorphisms
    rng = random.Random(7)
    t = LaurentSeries.t_pow(k, 1, prec=24)
    one = LaurentSeries.const(k.one, prec=24)
    g = Mat2(one, t, LaurentSeries.zero(k, 24), one + t)
    verts = ball(origin(k), 2)
    for _ in range(40):
        v, w = rng.choice(verts), rng.choice(verts)
        assert distance(apply_matrix(g, v), apply_matrix(g, w)) == distance(v, w)


def test_scaling_matrix_acts_trivially(k):
    # homothety: scalar matrices fix every vertex
    c = LaurentSeries.const(k(3), prec=24)
    z = LaurentSeries.zero(k, 24)
    g = Mat2(c, z, z, c)
    for v in ball(origin(k), 2):
        assert apply_matrix(g, v) == v
