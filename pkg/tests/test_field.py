import pytest

from cubictree import errors
from cubictree.field import make_field, quad_roots


def test_prime_field_basics():
    k = make_field(5)
    assert k.order == 5
    assert len(list(k.elements())) == 5
    assert k(3) + k(4) == k(2)
    assert k(3) * k(4) == k(2)
    assert -k(1) == k(4)


def test_not_prime_rejected():
    with pytest.raises(errors.NotPrime):
        make_field(6)
    with pytest.raises(errors.NotPrime):
        make_field(1)


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (5, 2)])
def test_field_axioms_exhaustive(p, e):
    k = make_field(p, e)
    els = list(k.elements())
    assert len(els) == p**e
    for a in els:
        assert a + k.zero == a and a * k.one == a
        if a != k.zero:
            assert a * a.inverse() == k.one
    # distributivity on a subgrid keeps q=25 affordable
    grid = els[: min(len(els), 6)]
    for a in grid:
        for b in grid:
            assert a + b == b + a and a * b == b * a
            for c in grid:
                assert a * (b + c) == a * b + a * c
                assert (a + b) + c == a + (b + c)


def test_multiplicative_group_cyclic():
    for p, e in ((5, 1), (7, 1), (2, 2), (3, 2)):
        k = make_field(p, e)
        q = k.order
        orders = []
        for a in k.elements():
            if a == k.zero:
                continue
            n, x = 1, a
            while x != k.one:
                x = x * a
                n += 1
            assert (q - 1) % n == 0
            orders.append(n)
        assert max(orders) == q - 1


def test_quad_roots_examples():
    k = make_field(5)
    assert quad_roots(k.one, k.zero, -k.one) == {k(1), k(4)}
    assert quad_roots(k.one, k.zero, -k(2)) == set()
    k2 = make_field(2)
    assert quad_roots(k2.one, k2.one, k2.zero) == {k2(0), k2(1)}


def test_quad_roots_leading_zero():
    k = make_field(5)
    with pytest.raises(errors.LeadingZero):
        quad_roots(k.zero, k.one, k.one)


def test_rootless_quadratic_splits_over_extension():
    k = make_field(5)
    ext = k.extension()
    # y^2 - 2 has no root in F_5 but two in F_25
    assert quad_roots(k.one, k.zero, -k(2)) == set()
    lifted = quad_roots(ext.one, ext.zero, -ext.lift(k(2)))
    assert len(lifted) == 2


def test_extension_norm_quotient_size():
    k = make_field(5)
    ext = k.extension()
    assert ext.order == 25
    # |F_25^x / F_5^x| = 6
    base = {ext.lift(a) for a in k.elements() if a != k.zero}
    cosets = set()
    for a in ext.elements():
        if a == ext.zero:
            continue
        cosets.add(frozenset((a * b).index() for b in base))
    assert len(cosets) == 6
