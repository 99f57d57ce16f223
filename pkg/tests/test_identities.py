from fractions import Fraction
import math

import pytest

from tanny_dowling.exact_arith import factorial
from tanny_dowling.identities import (
    IdentityCheck,
    IdentityId,
    SweepGrid,
    check_bernoulli_stirling,
    check_corollary2,
    check_kellner,
    check_reductions,
    check_theorem1,
    check_theorem3_exact,
    check_theorem4_series,
    check_worpitzky_classic,
    check_worpitzky_general,
    gamma_moment,
    theorem4_values,
    verify_sweep,
)
from tanny_dowling.quadrature import ConvergenceError, laguerre_rule
from tanny_dowling.triangles import WhitneyParams, whitney2_explicit

P10 = WhitneyParams(1, Fraction(0))
P21 = WhitneyParams(2, Fraction(1))


def test_theorem1_examples():
    c = check_theorem1(P10, 1)
    assert c.holds and c.lhs == c.rhs == Fraction(-1, 2)
    c = check_theorem1(P21, 1)
    assert c.holds and c.lhs == -2
    c = check_theorem1(P21, 2)
    assert c.holds and c.lhs == Fraction(11, 3)


def test_corollary2_examples():
    assert check_corollary2(P10, 2).lhs == Fraction(1, 6)
    c = check_corollary2(P21, 2)
    assert c.holds and c.rhs == Fraction(11, 12)
    c = check_corollary2(WhitneyParams(4, Fraction(-5, 2)), 0)
    assert c.holds and c.lhs == 1


def test_worpitzky_general_examples():
    c = check_worpitzky_general(P21, 2)
    assert c.holds and c.lhs == Fraction(11, 12)
    assert check_worpitzky_general(WhitneyParams(3, Fraction(2)), 0).lhs == 1
    for n in range(21):
        assert check_worpitzky_general(P10, n).lhs == check_worpitzky_classic(n).rhs


def test_theorem1_consistency_chain():
    # The integral expands term by term into sum_k m^k k! W(n,k) (-1)^k / (k+1).
    for p in (P21, WhitneyParams(3, Fraction(-3, 2)), WhitneyParams(5, Fraction(3))):
        for n in range(12):
            chain = sum(
                Fraction(p.m**k * factorial(k) * (-1) ** k, k + 1) * whitney2_explicit(p, n, k)
                for k in range(n + 1)
            )
            assert check_theorem1(p, n).lhs == chain


def test_theorem3_examples():
    c = check_theorem3_exact(WhitneyParams(5, Fraction(1, 2)), 0)
    assert c.holds and c.lhs == (1,)
    c = check_theorem3_exact(P10, 3)
    assert c.lhs == (0, 1, 6, 6) and c.holds
    c = check_theorem3_exact(P21, 2)
    assert c.lhs == (1, 0, 2) and c.holds


@pytest.mark.parametrize("k, expected", [(0, 1), (1, 1), (3, 6)])
def test_gamma_moment(k, expected):
    assert gamma_moment(k) == expected


def test_gamma_moment_against_laguerre_rule():
    rule = laguerre_rule(32)
    for k in range(15):
        approx = rule.integrate(lambda lam: lam**k)
        assert approx == pytest.approx(gamma_moment(k), rel=1e-12)


def test_classical_suites():
    for n in range(26):
        assert check_kellner(n).holds
        assert check_worpitzky_classic(n).holds
        assert all(c.holds for c in check_reductions(n))
        if n:
            assert check_bernoulli_stirling(n).holds
    assert check_kellner(1).lhs == Fraction(-1, 2)
    assert check_kellner(3).lhs == 0
    with pytest.raises(ValueError):
        check_bernoulli_stirling(0)


def test_identity_check_detects_mismatch():
    bad = IdentityCheck.compare(IdentityId.THEOREM1, P21, 2, Fraction(1), Fraction(2))
    assert not bad.holds
    doc = bad.to_json()
    assert doc == {"id": "THEOREM1", "m": 2, "a": "1", "n": 2, "lhs": "1", "rhs": "2", "holds": False}


def test_check_json_for_coefficient_sides():
    doc = check_theorem3_exact(P21, 2).to_json()
    assert doc["lhs"] == ["1", "0", "2"] and doc["holds"] is True


def test_theorem4_examples():
    closed = 1 / (1 - 0.5 * math.expm1(0.1))
    vals = theorem4_values(P10, Fraction(1, 2), Fraction(1, 10), 40)
    assert vals.residual < 1e-10
    assert vals.closed_form == pytest.approx(closed, rel=1e-15)
    for p in (P21, WhitneyParams(3, Fraction(-3, 2))):
        v = theorem4_values(p, 0, Fraction(1, 10), 40)
        assert v.residual < 1e-12
        assert v.closed_form == pytest.approx(math.exp(-float(p.a) * 0.1), rel=1e-15)
    with pytest.raises(ConvergenceError):
        check_theorem4_series(P10, 1, 1, 10)


def test_theorem4_residual_shrinks_with_order():
    for p, x, z in [(P10, Fraction(1, 2), Fraction(1, 5)), (P21, Fraction(-1), Fraction(3, 20))]:
        assert check_theorem4_series(p, x, z, 40) <= check_theorem4_series(p, x, z, 10)


def test_sweep_default_grid_all_pass():
    report = verify_sweep(SweepGrid.from_ranges(nmax=12))
    assert report.fail_count == 0
    assert report.pass_count == len(report.checks) > 0


def test_sweep_empty_grid():
    report = verify_sweep(SweepGrid(ms=(), as_=(), ns=()))
    assert report.checks == [] and report.pass_count == report.fail_count == 0


def test_sweep_classical_grid_reproduces_kellner_and_worpitzky():
    grid = SweepGrid.from_ranges(1, 1, 0, 0, 1, 0, 25, ("theorem1", "reductions"))
    report = verify_sweep(grid)
    ids = {c.identity_id for c in report.checks}
    assert {IdentityId.THEOREM1, IdentityId.KELLNER, IdentityId.WORPITZKY_CLASSIC} <= ids
    assert report.fail_count == 0
    kellner = [c for c in report.checks if c.identity_id is IdentityId.KELLNER]
    thm1 = [c for c in report.checks if c.identity_id is IdentityId.THEOREM1]
    assert [c.lhs for c in kellner] == [c.lhs for c in thm1]


def test_sweep_order_independent_of_workers():
    grid = SweepGrid.from_ranges(1, 3, -1, 1, Fraction(1, 2), 0, 8)
    serial = verify_sweep(grid).to_json()
    threaded = verify_sweep(grid, workers=4).to_json()
    assert serial == threaded


def test_grid_validation():
    with pytest.raises(ValueError):
        SweepGrid.from_ranges(mmin=0)
    with pytest.raises(ValueError):
        SweepGrid.from_ranges(astep=0)
    with pytest.raises(ValueError):
        SweepGrid.from_ranges(amin=1, amax=0)
    grid = SweepGrid.from_ranges(amin=-3, amax=3, astep=Fraction(1, 2))
    assert len(grid.as_) == 13 and grid.as_[0] == -3 and grid.as_[-1] == 3
