import math
import random

import pytest

from cubictree import errors
from cubictree.coordring import AElem, AFrac, v_infinity
from cubictree.curve import WeierstrassCurve
from cubictree.field import make_field
from cubictree.laurent import LaurentSeries, embed, embed_frac, expand_xy, val
from cubictree.polys import Poly


@pytest.fixture
def k():
    return make_field(5)


@pytest.fixture
def curve(k):
    return WeierstrassCurve.from_ints(k, 0, 0, 0, -1, 0)


def test_basic_arithmetic(k):
    t = LaurentSeries.t_pow(k, 1)
    s = t + LaurentSeries.const(k(2))
    assert s.coeff(0) == k(2) and s.coeff(1) == k.one
    assert (s - s).is_zero_window()
    assert val(t * t * t) == 3


def test_precision_tracking(k):
    a = LaurentSeries.t_pow(k, -1, prec=10)
    b = LaurentSeries.t_pow(k, 2, prec=5)
    # absolute precision of a product: min over shifted windows
    assert (a * b).prec == 4
    assert (a + b).prec == 5
    with pytest.raises(errors.InsufficientPrecision):
        b.coeff(7)


def test_inverse_and_div(k):
    rng = random.Random(3)
    for _ in range(20):
        n0 = rng.randint(-3, 3)
        coeffs = [k(rng.randrange(1, 5))] + [k(rng.randrange(5)) for _ in range(6)]
        s = LaurentSeries(k, n0, coeffs, n0 + 7)
        inv = s.inverse()
        assert (s * inv - LaurentSeries.const(k.one)).is_zero_window()
    t = LaurentSeries.t_pow(k, 1, prec=8)
    assert val(t.div(t * t)) == -1


def test_expand_xy_satisfies_curve(curve):
    k = curve.k
    xh, yh = expand_xy(curve, 40)
    assert val(xh) == -2 and val(yh) == -3
    F = yh * yh - xh * xh * xh - xh.scale(curve.a4)
    assert F.is_zero_window() and F.prec >= 32
    # t = x/y: the uniformizer relation holds on the overlap window
    prod = LaurentSeries.t_pow(k, 1) * yh
    assert (prod - xh).is_zero_window()


def test_expand_xy_general_coefficients():
    k = make_field(7)
    curve = WeierstrassCurve.from_ints(k, 1, 2, 3, 4, 5)
    xh, yh = expand_xy(curve, 30)
    F = (
        yh * yh
        + (xh * yh).scale(curve.a1)
        + yh.scale(curve.a3)
        - xh * xh * xh
        - (xh * xh).scale(curve.a2)
        - xh.scale(curve.a4)
        - LaurentSeries.const(curve.a6)
    )
    assert F.is_zero_window()


def test_embed_is_ring_hom(curve):
    k = curve.k
    rng = random.Random(4)

    def rand_elem():
        u = Poly(k, [k(rng.randrange(5)) for _ in range(rng.randint(0, 3))])
        v = Poly(k, [k(rng.randrange(5)) for _ in range(rng.randint(0, 2))])
        return AElem(curve, u, v)

    for _ in range(15):
        a, b = rand_elem(), rand_elem()
        assert (embed(a, 32) + embed(b, 32) - embed(a + b, 32)).is_zero_window()
        assert (embed(a, 32) * embed(b, 32) - embed(a * b, 32)).is_zero_window()


def test_embed_valuation_matches_v_infinity(curve):
    k = curve.k
    rng = random.Random(5)
    for _ in range(50):
        u = Poly(k, [k(rng.randrange(5)) for _ in range(rng.randint(0, 4))])
        v = Poly(k, [k(rng.randrange(5)) for _ in range(rng.randint(0, 3))])
        a = AElem(curve, u, v)
        if not a:
            assert v_infinity(a) == math.inf
            continue
        assert val(embed(a, 40)) == v_infinity(a)


def test_embed_frac(curve):
    x, y = AElem.x(curve), AElem.y(curve)
    t = embed_frac(AFrac(x, y), 32)
    assert val(t) == 1
    assert t.coeff(1) == curve.k.one
