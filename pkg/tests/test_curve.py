import pytest

from cubictree import errors
from cubictree.curve import (
    INFINITY,
    WeierstrassCurve,
    classify_fiber,
    e1_points,
    eval_F,
    is_smooth,
    partials,
    points,
    shift_curve,
    singular_points,
)
from cubictree.field import make_field


def c(p, *coeffs):
    return WeierstrassCurve.from_ints(make_field(p), *coeffs)


def test_eval_F():
    curve = c(5, 0, 0, 0, -1, 0)  # y^2 = x^3 - x
    k = curve.k
    assert eval_F(curve, k(0), k(0)) == k.zero
    assert eval_F(curve, k(2), k(1)) == k.zero
    assert eval_F(curve, k(1), k(1)) == k.one


def test_partials():
    k = make_field(5)
    assert partials(c(5, 0, 0, 0, -1, 0), k(0), k(0)) == (k(1), k(0))
    assert partials(c(5, 0, 0, 0, 0, 0), k(0), k(0)) == (k(0), k(0))
    assert partials(c(5, 0, 0, 0, 1, 1), k(0), k(1)) == (k(4), k(2))


def test_is_smooth():
    assert is_smooth(c(5, 0, 0, 0, -1, 0))
    assert is_smooth(c(5, 0, 0, 0, 1, 1))
    assert not is_smooth(c(5, 0, 0, 0, 0, 0))


def test_point_counts_exhaustive():
    # oracle: direct double loop over the affine plane
    for coeffs, _ in (((0, 0, 0, -1, 0), 8), ((0, 0, 0, 1, 1), 9)):
        curve = c(5, *coeffs)
        k = curve.k
        count = 1  # infinity
        for l in k.elements():
            for m in k.elements():
                if eval_F(curve, l, m) == k.zero:
                    count += 1
        assert len(points(curve)) == count
    assert len(points(c(5, 0, 0, 0, -1, 0))) == 8
    assert len(points(c(5, 0, 0, 0, 1, 1))) == 9


def test_classify_fiber_cases():
    curve = c(5, 0, 0, 0, 1, 1)
    k = curve.k
    kinds = {l.index(): classify_fiber(curve, l).kind for l in k.elements()}
    assert kinds[1] == "none"  # y^2 = 3 has no root mod 5
    assert sorted(kinds.values()).count("none") == 1
    assert classify_fiber(curve, INFINITY).kind == "unique"
    assert classify_fiber(curve, INFINITY).points == (INFINITY,)


def test_fiber_case_matches_quad_roots_count():
    for coeffs in ((0, 0, 0, -1, 0), (0, 0, 0, 1, 1), (1, 0, 1, 0, 1)):
        curve = c(5, *coeffs)
        k = curve.k
        for l in k.elements():
            fib = classify_fiber(curve, l)
            n = sum(1 for m in k.elements() if eval_F(curve, l, m) == k.zero)
            assert {0: "none", 1: "unique", 2: "two"}[n] == fib.kind


def test_e1_points():
    curve = c(5, 0, 0, 0, -1, 0)  # 2-torsion x = 0, 1, -1 plus infinity
    e1 = e1_points(curve)
    assert INFINITY in e1
    assert len(e1) == 4
    k = curve.k
    for p in e1:
        if p is not INFINITY:
            assert partials(curve, *p)[1] == k.zero


def test_singular_points():
    assert singular_points(c(5, 0, 0, 0, -1, 0)) == []
    sing = singular_points(c(5, 0, 0, 0, 0, 0))
    assert len(sing) == 1
    ext = make_field(5).extension()
    assert sing[0] == (ext.zero, ext.zero)


def test_shift_curve_moves_point_to_origin():
    curve = c(5, 0, 0, 0, 1, 1)
    k = curve.k
    for p in points(curve):
        if p is INFINITY:
            continue
        sc = shift_curve(curve, p[0], p[1])
        assert eval_F(sc, k(0), k(0)) == k.zero
        # shifted partials at the origin match the original at p
        fx, fy = partials(curve, *p)
        sfx, sfy = partials(sc, k(0), k(0))
        assert (sfx, sfy) == (fx, fy)


def test_point_off_curve_rejected():
    curve = c(5, 0, 0, 0, -1, 0)
    k = curve.k
    with pytest.raises(errors.PointNotOnCurve):
        shift_curve(curve, k(1), k(1))
