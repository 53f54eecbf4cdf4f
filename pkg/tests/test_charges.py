import math

import pytest
from hypothesis import given, settings, strategies as st

from dualquark import charges
from dualquark.charges import (
    ChargeProblem,
    GammaOneError,
    enumerate_fractional_charges,
    external_charge_total,
    external_current_total,
    null_residual,
    solve_coulomb_charge,
)

THIRD = 1.0 / 3.0

nonzero_q = st.floats(0.05, 5.0).flatmap(lambda q: st.sampled_from([q, -q]))
gammas = st.floats(-6.0, 6.0).filter(lambda g: abs(g - 1.0) > 1e-6)


class TestSolve:
    def test_one_third_gamma_sq_four(self):
        roots = solve_coulomb_charge(ChargeProblem(q=THIRD, gamma=-2.0))
        assert roots[0] == pytest.approx(2 * THIRD, abs=1e-15)
        assert roots[1] == pytest.approx(-THIRD, abs=1e-15)

    def test_two_thirds(self):
        roots = solve_coulomb_charge(ChargeProblem(q=2 * THIRD, gamma=-2.0))
        assert roots == pytest.approx((4 * THIRD, -2 * THIRD), abs=1e-15)

    def test_degenerate_gamma_zero(self):
        # the quadratic collapses to b(b - q) = 0
        roots = solve_coulomb_charge(ChargeProblem(q=1.0, gamma=0.0))
        assert roots == (1.0, 0.0)

    def test_unit_seed_minus_radical(self):
        minus_root = solve_coulomb_charge(ChargeProblem(q=1.0, gamma=-2.0))[1]
        plus_root = solve_coulomb_charge(ChargeProblem(q=-1.0, gamma=-2.0))[1]
        assert minus_root == pytest.approx(-1.0, abs=1e-15)
        assert plus_root == pytest.approx(1.0, abs=1e-15)

    @settings(max_examples=100, deadline=None)
    @given(q=nonzero_q, gamma=gammas)
    def test_root_identity(self, q, gamma):
        for b in solve_coulomb_charge(ChargeProblem(q=q, gamma=gamma)):
            resid = b * b - q * b - gamma * gamma * q * q / 2.0
            assert abs(resid) <= 1e-12 * (q * q + b * b)

    @settings(max_examples=60, deadline=None)
    @given(q=nonzero_q, gamma=gammas)
    def test_branch_antisymmetry(self, q, gamma):
        minus = solve_coulomb_charge(ChargeProblem(q=q, gamma=gamma))
        plus = solve_coulomb_charge(ChargeProblem(q=q, gamma=gamma, branch=charges.PLUS_BRANCH))
        assert plus == (-minus[0], -minus[1])

    def test_rejects_gamma_one(self):
        with pytest.raises(GammaOneError):
            ChargeProblem(q=1.0, gamma=1.0)

    def test_rejects_zero_seed(self):
        with pytest.raises(ValueError):
            ChargeProblem(q=0.0, gamma=-2.0)


class TestEnumerate:
    def test_gamma_sq_four_thirds(self):
        rows = enumerate_fractional_charges(4.0, [THIRD, -THIRD])
        values = {round(b, 12) for row in rows for b in row.roots}
        assert values == {round(v, 12) for v in (2 * THIRD, -THIRD, -2 * THIRD, THIRD)}

    def test_plus_rows_negate_minus_rows(self):
        rows = enumerate_fractional_charges(4.0, [1.0])
        by_branch = {row.branch: row.roots for row in rows}
        assert by_branch["plus"] == tuple(-b for b in by_branch["minus"])

    def test_gamma_zero(self):
        rows = enumerate_fractional_charges(0.0, [0.7])
        assert {round(b, 12) for row in rows for b in row.roots} == {0.7, 0.0, -0.7}

    def test_negative_gamma_sq_rejected(self):
        with pytest.raises(ValueError):
            enumerate_fractional_charges(-1.0, [1.0])


class TestSourceTotals:
    @pytest.mark.parametrize(
        "b,gamma,expected",
        [(THIRD, -2.0, 1.0), (2 * THIRD, -2.0, 2.0), (5.0, 1.0, 0.0)],
    )
    def test_external_charge(self, b, gamma, expected):
        assert external_charge_total(b, gamma) == pytest.approx(expected, abs=1e-15)

    def test_external_charge_linear_in_b(self):
        assert external_charge_total(3.0, -2.0) == 3 * external_charge_total(1.0, -2.0)

    def test_external_current_values(self):
        assert external_current_total(THIRD, -2.0) == pytest.approx(-2 * math.sqrt(2) / 3, rel=1e-14)
        assert external_current_total(0.5, 0.0) == 0.0

    @settings(max_examples=40, deadline=None)
    @given(q=nonzero_q, gamma=gammas)
    def test_current_odd_in_q_even_in_gamma(self, q, gamma):
        assert external_current_total(-q, gamma) == -external_current_total(q, gamma)
        assert external_current_total(q, -gamma) == external_current_total(q, gamma)


class TestNullResidual:
    def test_zero_at_root(self):
        for r in (0.1, 1.0, 7.0, 300.0):
            assert null_residual(r, -THIRD, THIRD, -2.0) == pytest.approx(0.0, abs=1e-14)

    def test_off_root_value(self):
        # direct evaluation: (49/9 - 1) * 1e-4
        assert null_residual(10.0, 1.0, THIRD, -2.0) == pytest.approx((49 / 9 - 1) * 1e-4, rel=1e-12)

    def test_scale_invariance_at_root(self):
        b = solve_coulomb_charge(ChargeProblem(q=0.4, gamma=-1.5))[0]
        assert null_residual(3.0, b, 0.4, -1.5) == pytest.approx(0.0, abs=1e-14)
        assert null_residual(6.0, b, 0.4, -1.5) == pytest.approx(0.0, abs=1e-14)

    @settings(max_examples=100, deadline=None)
    @given(q=nonzero_q, gamma=gammas, r=st.floats(0.5, 50.0))
    def test_residual_vanishes_only_scaled(self, q, gamma, r):
        for b in solve_coulomb_charge(ChargeProblem(q=q, gamma=gamma)):
            assert abs(null_residual(r, b, q, gamma)) * r**4 <= 1e-11 * (q * q + b * b) ** 2 / (q * q)
