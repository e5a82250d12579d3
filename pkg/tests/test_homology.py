import pytest

from cubictree import errors
from cubictree.curve import WeierstrassCurve
from cubictree.field import make_field
from cubictree.homology import h1_decomposition, h1_pgl2, main_theorem_report


def test_h1_pgl2_values():
    # independent oracle: index of the commutator closure in PGL2(F_q)
    assert h1_pgl2(make_field(2, 2)) == 1
    assert h1_pgl2(make_field(5)) == 2
    assert h1_pgl2(make_field(7)) == 2


def test_h1_pgl2_small_field_rejected():
    with pytest.raises(errors.FieldTooSmall):
        h1_pgl2(make_field(3))
    with pytest.raises(errors.FieldTooSmall):
        h1_pgl2(make_field(2))


def test_decomposition_example():
    curve = WeierstrassCurve.from_ints(make_field(5), 0, 0, 0, 1, 1)
    groups = sorted(s.group for s in h1_decomposition(curve))
    assert groups == ["Z/2", "Z/4", "Z/4", "Z/4", "Z/4", "Z/6"]


def test_decomposition_one_summand_per_line():
    curve = WeierstrassCurve.from_ints(make_field(5), 0, 0, 0, -1, 0)
    summands = h1_decomposition(curve)
    assert len(summands) == 6  # q + 1 lines
    assert sorted(s.l for s in summands) == ["0", "1", "2", "3", "4", "inf"]


def test_singular_curve_substitution():
    # y^2 = x^3 has its singular point at (0,0); that line contributes
    # Z/(q-1) instead of the unique-case value
    curve = WeierstrassCurve.from_ints(make_field(5), 0, 0, 0, 0, 0)
    by_line = {s.l: s for s in h1_decomposition(curve)}
    assert by_line["0"].case == "singular"
    assert by_line["0"].group == "Z/4"
    assert by_line["inf"].case == "unique"
    assert by_line["inf"].group == "Z/2"


def test_summand_orders_match_cases():
    curve = WeierstrassCurve.from_ints(make_field(7), 0, 0, 0, -1, 0)
    for s in h1_decomposition(curve):
        expected = {"none": 8, "two": 6, "unique": 2, "singular": 6}[s.case]
        assert s.order == expected


def test_main_theorem_report_passes():
    k = make_field(5)
    curves = [
        WeierstrassCurve.from_ints(k, 0, 0, 0, -1, 0),
        WeierstrassCurve.from_ints(k, 0, 0, 0, 1, 1),
    ]
    report = main_theorem_report(curves)
    assert report["status"] == "PASS"
    assert report["schema"] == 1
    assert len(report["curves"]) == 2
    for entry in report["curves"]:
        assert all(c["verified"] == "verified" for c in entry["certificates"])
        # q+1 line certificates plus one per smooth E1 point
        assert len(entry["certificates"]) >= 6
