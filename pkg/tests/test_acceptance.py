"""Acceptance gate: the eight top-level checks, one printed pass/fail line each.

Each check recomputes its expected values from independent oracles (exhaustive
point counts, the ball-size formula, commutator closure in PGL2) rather than
trusting the code paths under test. Time limits are asserted from the
measured wall-clock of each criterion.
"""

import pytest

from cubictree import verify

# (criterion function, wall-clock limit in seconds)
GATES = [
    (verify.criterion_cusp_bijection, 2.0),
    (verify.criterion_order_table, 300.0),
    (verify.criterion_certificates, 60.0),
    (verify.criterion_tree_axioms, 10.0),
    (verify.criterion_laurent, 1.0),
    (verify.criterion_domain_spotcheck, 300.0),
    (verify.criterion_homology, 120.0),
    (verify.criterion_main_theorem, 120.0),
]


@pytest.mark.parametrize("criterion,limit", GATES, ids=[f.__name__ for f, _ in GATES])
def test_acceptance(criterion, limit):
    res = criterion()
    status = "PASS" if res["pass"] else "FAIL"
    print(f"[{status}] {res['criterion']}: {res['detail']} ({res['seconds']}s)")
    assert res["pass"], res["detail"]
    assert res["seconds"] < limit, f"{res['criterion']} took {res['seconds']}s (limit {limit}s)"
