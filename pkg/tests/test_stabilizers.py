import pytest

from cubictree import errors
from cubictree.curve import INFINITY, WeierstrassCurve, classify_fiber, e1_points, partials
from cubictree.domain import domain_vertex
from cubictree.field import make_field
from cubictree.stabilizers import (
    edge_stabilizer,
    family_at,
    iso_witness,
    m2_family,
    m4_family,
    rep_key,
    stabilizer,
    stabilizer_bruteforce,
)


@pytest.fixture(scope="module")
def curve():
    return WeierstrassCurve.from_ints(make_field(5), 0, 0, 0, -1, 0)


@pytest.fixture(scope="module")
def curve2():
    return WeierstrassCurve.from_ints(make_field(5), 0, 0, 0, 1, 1)


def test_origin_stabilizer_trivial(curve):
    grp = stabilizer(curve, domain_vertex(curve, ("o",)))
    assert grp.order == 1
    assert iso_witness(grp, curve.k) == "Trivial"


def test_case_orders(curve, curve2):
    q = 5
    expected = {"none": q + 1, "unique": q, "two": q - 1}
    for cv in (curve, curve2):
        for l in cv.k.elements():
            kind = classify_fiber(cv, l).kind
            grp = stabilizer(cv, domain_vertex(cv, ("v", l), 12))
            assert grp.order == expected[kind]


def test_constraint_matches_m2_family_at_origin(curve):
    # v(0) with (0,0) on the curve: constraint enumeration equals M2 reps
    k = curve.k
    grp = stabilizer(curve, domain_vertex(curve, ("v", k.zero), 12))
    fam = family_at(curve, ("v", k.zero))
    assert {rep_key(g) for g in grp.reps} == {rep_key(g) for g in fam.reps}
    assert grp.order == len(m2_family(curve).reps)


def test_m4_family_order_and_match(curve):
    fam = m4_family(curve)
    assert len(fam.reps) == 5**3 - 5
    k = curve.k
    grp = stabilizer(curve, domain_vertex(curve, ("e", (k.zero, k.zero)), 12))
    assert {rep_key(g) for g in grp.reps} == {rep_key(g) for g in fam.reps}


def test_m4_requires_special_coefficients(curve2):
    # the 4-parameter family needs a3 = a6 = 0
    with pytest.raises(errors.CubicTreeError):
        m4_family(
            WeierstrassCurve.from_ints(make_field(5), 0, 0, 0, 1, 1)
        )
    assert curve2.a6 != curve2.k.zero


def test_cusp_chain_orders(curve):
    k = curve.k
    pt = (k.zero, k.zero)
    for n, want in ((1, 20), (2, 100)):
        grp = stabilizer(curve, domain_vertex(curve, ("c", pt, n), 12))
        assert grp.order == want


def test_bruteforce_cross_check():
    # independent L-space enumeration agrees with the constraint solver
    k = make_field(2)
    curve = WeierstrassCurve.from_ints(k, 0, 0, 1, 0, 0)
    dv = domain_vertex(curve, ("v", k.zero), 12)
    grp = stabilizer(curve, dv)
    brute = stabilizer_bruteforce(curve, dv, pole_bound=4)
    assert {rep_key(g) for g in grp.reps} == {rep_key(g) for g in brute.reps}


def test_stabilizer_fixes_vertex(curve):
    from cubictree.laurent import embed
    from cubictree.coordring import Mat2
    from cubictree.tree import apply_matrix

    k = curve.k
    dv = domain_vertex(curve, ("v", k(2)), 12)
    grp = stabilizer(curve, dv)
    for g in grp.reps:
        ghat = Mat2(*(embed(e, 40) for e in g.entries()))
        assert apply_matrix(ghat, dv.vertex) == dv.vertex


def test_edge_stabilizer_contained_in_both(curve):
    k = curve.k
    pt = (k.zero, k.zero)
    g1 = stabilizer(curve, domain_vertex(curve, ("c", pt, 1), 12))
    g2 = stabilizer(curve, domain_vertex(curve, ("e", pt), 12))
    grp = edge_stabilizer(curve, g1, g2)
    assert grp.order == g1.order  # the cusp group sits inside the corner group


def test_iso_witness_names(curve, curve2):
    k = curve.k
    cases = {}
    for l in k.elements():
        cases.setdefault(classify_fiber(curve2, l).kind, l)
    grp = stabilizer(curve2, domain_vertex(curve2, ("v", cases["none"]), 12))
    assert iso_witness(grp, k) == "TorusQuotient"
    grp = stabilizer(curve2, domain_vertex(curve2, ("v", cases["two"]), 12))
    assert iso_witness(grp, k) == "CyclicOfOrder(4)"
    grp = stabilizer(curve, domain_vertex(curve, ("v", k.zero), 12))
    assert iso_witness(grp, k) == "AdditiveGroup"
    pt = (k.zero, k.zero)
    grp = stabilizer(curve, domain_vertex(curve, ("c", pt, 1), 12))
    assert iso_witness(grp, k) == "BorelLike(1)"
    grp = stabilizer(curve, domain_vertex(curve, ("e", pt), 12))
    assert iso_witness(grp, k) == "FullPGL2"


def test_infinity_line_stabilizer(curve):
    grp = stabilizer(curve, domain_vertex(curve, ("v", INFINITY), 12))
    assert grp.order == curve.k.order  # unique case at infinity


def test_e1_points_give_full_pgl2(curve):
    for pt in e1_points(curve):
        if pt is INFINITY or not any(partials(curve, *pt)):
            continue
        fam = family_at(curve, ("e", pt))
        assert len(fam.reps) == 120
