import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dualquark import numerics
from dualquark.numerics import (
    BracketError,
    MinimizeResult,
    NonFiniteSample,
    StepUnderflow,
    Tolerance,
    differentiate,
    find_root,
    integrate,
    minimize_scalar,
)


# Independent oracle for the rational integrals: substitute v = 1+u and sum
# the inverse-power antiderivatives term by term, exactly.
def inverse_power_integral(poly_in_v: dict[int, Fraction]) -> Fraction:
    # integral over v in [1, inf) of sum c_k v^-k  ->  sum c_k/(k-1)
    return sum((c / (k - 1) for k, c in poly_in_v.items()), Fraction(0))


ORACLE_QUARTIC = inverse_power_integral(
    {2: Fraction(1), 3: Fraction(-10), 4: Fraction(39), 5: Fraction(-76),
     6: Fraction(79), 7: Fraction(-42), 8: Fraction(9)}
)  # u^4 (2-u)^2 / (1+u)^8
ORACLE_CUBIC = inverse_power_integral(
    {4: Fraction(-1), 5: Fraction(6), 6: Fraction(-12), 7: Fraction(10), 8: Fraction(-3)}
)  # u^3 (2-u) / (1+u)^8


def test_oracles_reduce_to_known_fractions():
    assert ORACLE_QUARTIC == Fraction(3, 35)
    assert ORACLE_CUBIC == Fraction(1, 210)


class TestTolerance:
    def test_defaults(self):
        tol = Tolerance()
        assert tol.rel == 1e-10 and tol.abs == 1e-14 and tol.max_evals == 10**6

    @pytest.mark.parametrize("kw", [dict(rel=0.0), dict(rel=-1.0), dict(abs=-1e-3), dict(max_evals=0)])
    def test_rejects_bad_fields(self, kw):
        with pytest.raises(ValueError):
            Tolerance(**kw)


class TestIntegrate:
    def test_semi_infinite_quartic(self):
        res = integrate(lambda u: u**4 * (2 - u) ** 2 / (1 + u) ** 8, 0.0, math.inf)
        assert res.converged
        assert res.value == pytest.approx(float(ORACLE_QUARTIC), rel=1e-12)

    def test_semi_infinite_cubic(self):
        res = integrate(lambda u: u**3 * (2 - u) / (1 + u) ** 8, 0.0, math.inf)
        assert res.value == pytest.approx(float(ORACLE_CUBIC), rel=1e-12)

    def test_zero_integrand(self):
        res = integrate(lambda u: 0.0, 0.0, 1.0)
        assert res.value == 0.0 and res.converged

    def test_error_bound_within_contract(self):
        tol = Tolerance(rel=1e-10, abs=1e-14)
        res = integrate(lambda u: math.exp(-u), 0.0, math.inf, tol)
        assert res.error <= max(tol.abs, tol.rel * abs(res.value)) * 10

    def test_non_finite_sample_reports_radius(self):
        with pytest.raises(NonFiniteSample) as exc:
            integrate(lambda r: 1.0 / (r - 0.5) if r != 0.5 else math.inf, 0.0, 1.0)
        assert math.isfinite(exc.value.where)

    @settings(max_examples=25, deadline=None)
    @given(a=st.floats(-5, 5), b=st.floats(-5, 5))
    def test_linearity(self, a, b):
        f = lambda u: u * u
        g = lambda u: math.sin(u)
        combined = integrate(lambda u: a * f(u) + b * g(u), 0.0, 2.0)
        parts = a * integrate(f, 0.0, 2.0).value + b * integrate(g, 0.0, 2.0).value
        assert combined.value == pytest.approx(parts, rel=1e-9, abs=1e-12)


class TestFindRoot:
    def test_linear(self):
        assert find_root(lambda x: x - 1.0, 0.0, 2.0) == pytest.approx(1.0, abs=1e-12)

    def test_stationarity_quadratic(self):
        # oracle: quadratic formula, 1 - sqrt(6)/3
        expected = 1.0 - math.sqrt(6.0) / 3.0
        root = find_root(lambda x: 3 * x * x - 6 * x + 1, 0.0, 1.0 / 3.0)
        assert root == pytest.approx(expected, rel=1e-12)

    def test_minimum_equation_brackets_twelve_six(self):
        f = lambda n: 2 * (n + 1) ** 7 * (n - 1) / n**3 - 1e6
        root = find_root(f, 2.0, 50.0)
        assert root == pytest.approx(12.6, rel=0.01)

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            find_root(lambda x: x * x + 1.0, -1.0, 1.0)

    def test_deterministic(self):
        f = lambda x: math.cos(x) - x
        assert find_root(f, 0.0, 1.0) == find_root(f, 0.0, 1.0)


class TestMinimizeScalar:
    def test_parabola(self):
        res = minimize_scalar(lambda x: (x - 2.0) ** 2, 0.0, 5.0)
        assert res.interior
        assert res.x == pytest.approx(2.0, abs=1e-7)
        assert res.value == pytest.approx(0.0, abs=1e-12)

    def test_unstable_well_minimum_near_0p8(self):
        def e(x):
            return (10 * (1 + x) / (x * (3 * x - 1))
                    - (1 + x) ** 5 / (x * x * (3 * x - 1))
                    - 83.4 * x / (1 + x) ** 4)

        res = minimize_scalar(e, 1.0 / 3.0 + 1e-6, 1.5)
        assert res.interior
        assert res.x == pytest.approx(0.8, abs=0.02)

    def test_barrier_function_interior_vs_grid_scan(self):
        f = lambda x: x * x / (3 * x - 1)
        lo, hi = 1.0 / 3.0 + 1e-3, 5.0
        res = minimize_scalar(f, lo, hi)
        # dense grid scan as the independent oracle
        grid = [lo + (hi - lo) * i / 200000 for i in range(200001)]
        x_scan = min(grid, key=f)
        assert res.interior
        assert lo < res.x < hi
        assert res.x == pytest.approx(x_scan, abs=1e-4)

    def test_endpoint_minimum_is_flagged(self):
        res = minimize_scalar(lambda x: x, 0.0, 1.0)
        assert not res.interior
        assert res.x == 0.0

    def test_non_finite_sample(self):
        with pytest.raises(NonFiniteSample):
            minimize_scalar(lambda x: math.nan, 0.0, 1.0)


class TestDifferentiate:
    def test_cubic_first(self):
        assert differentiate(lambda r: r**3, 2.0, order=1) == pytest.approx(12.0, rel=1e-10)

    def test_cubic_second(self):
        assert differentiate(lambda r: r**3, 2.0, order=2) == pytest.approx(12.0, rel=1e-9)

    @settings(max_examples=20, deadline=None)
    @given(c=st.floats(-100, 100), r=st.floats(0.1, 50))
    def test_constant_derivative_is_zero(self, c, r):
        assert abs(differentiate(lambda _: c, r, order=1)) <= 1e-10

    def test_matches_analytic_weak_potential_slope(self):
        from dualquark import SINGLE_QUARK, ModelParams, psi, psi_prime

        params = ModelParams(s=1.0, alpha=0.2, lam=0.7)
        f = lambda r: psi(r, SINGLE_QUARK, params)
        for r in (0.5, 2.0, 11.0):
            assert differentiate(f, r) == pytest.approx(
                psi_prime(r, SINGLE_QUARK, params), rel=1e-9
            )

    def test_step_underflow(self):
        with pytest.raises(StepUnderflow):
            differentiate(lambda r: r, 1e12, order=1, h0=1e-6)

    def test_bad_order(self):
        with pytest.raises(ValueError):
            differentiate(lambda r: r, 1.0, order=3)
