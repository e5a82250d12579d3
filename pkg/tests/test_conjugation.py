import pytest

from cubictree.conjugation import certificate_at, certificate_v0, certificate_e_origin
from cubictree.curve import INFINITY, WeierstrassCurve, classify_fiber, e1_points, partials
from cubictree.field import make_field


@pytest.fixture(scope="module")
def curve():
    return WeierstrassCurve.from_ints(make_field(5), 0, 0, 0, -1, 0)


@pytest.fixture(scope="module")
def curve2():
    return WeierstrassCurve.from_ints(make_field(5), 0, 0, 0, 1, 1)


def test_v0_certificate_lands_in_constants(curve):
    cert = certificate_v0(curve)
    assert cert.verified == "verified"
    assert cert.image_order == 5  # unique case at x = 0 on y^2 = x^3 - x


def test_e_origin_certificate_full_pgl2(curve):
    cert = certificate_e_origin(curve)
    assert cert.verified == "verified"
    assert cert.image_order == 5**3 - 5


def test_all_lines_certified(curve, curve2):
    q = 5
    expected = {"none": q + 1, "unique": q, "two": q - 1}
    for cv in (curve, curve2):
        for l in list(cv.k.elements()) + [INFINITY]:
            cert = certificate_at(cv, ("v", l))
            kind = classify_fiber(cv, l).kind
            assert cert.verified == "verified"
            assert cert.image_order == expected[kind]


def test_refined_targets(curve2):
    k = curve2.k
    by_kind = {}
    for l in k.elements():
        by_kind.setdefault(classify_fiber(curve2, l).kind, l)
    cert = certificate_at(curve2, ("v", by_kind["none"]))
    assert "TorusQuotient" in cert.target_desc
    cert = certificate_at(curve2, ("v", by_kind["two"]))
    assert "CyclicOfOrder(4)" in cert.target_desc
    # the only unique-case line on this curve is at infinity
    cert = certificate_at(curve2, ("v", INFINITY))
    assert "Borel" in cert.target_desc


def test_image_entries_are_constants(curve):
    k = curve.k
    cert = certificate_at(curve, ("v", k(2)))
    for mat in cert.image:
        for entry in mat.entries():
            assert entry.is_constant()


def test_smooth_e1_certificates(curve, curve2):
    for cv in (curve, curve2):
        for p in e1_points(cv):
            if p is not INFINITY and not any(partials(cv, *p)):
                continue
            cert = certificate_at(cv, ("e", p))
            assert cert.verified == "verified"
            assert cert.image_order == 120


def test_infinity_stabilizer_is_already_constant(curve):
    cert = certificate_at(curve, ("v", INFINITY))
    assert cert.verified == "verified"
    # no conjugation needed: Gamma_v(inf) consists of constant matrices
    assert cert.image_order == 5


def test_certificates_deterministic(curve):
    k = curve.k
    a = certificate_at(curve, ("v", k(1)))
    b = certificate_at(curve, ("v", k(1)))
    assert a.image == b.image and a.target_desc == b.target_desc
