import math

import pytest

from dualquark import numerics
from dualquark.potentials import (
    BUILTIN_SHAPES,
    SINGLE_QUARK,
    THREE_QUARK,
    TWO_QUARK,
    CallableShape,
    ConfiningCoefficients,
    DegenerateExtremum,
    ExtremumSingularity,
    GridSpec,
    ModelParams,
    RationalShape,
    astar,
    closed_form_coefficients,
    decompose_regions,
    external_current_density,
    phi_k,
    phi_k_dimensionless,
    phi_p,
    phi_p_prime,
    psi,
    psi_prime,
    psi_double_prime,
    sample_curves,
    verify_asymptotics,
)


class TestModelParams:
    def test_rejects_nonpositive_scale(self):
        with pytest.raises(ValueError):
            ModelParams(s=0.0)
        with pytest.raises(ValueError):
            ModelParams(alpha=-1.0)

    def test_scaled_radius_round_trip(self):
        p = ModelParams(s=0.7, alpha=0.02)
        assert p.x_of(p.r_of(3.4)) == pytest.approx(3.4, rel=1e-15)


class TestRationalShape:
    def test_rejects_small_m(self):
        with pytest.raises(ValueError):
            RationalShape((0.0, 1.0), 3)  # deg 1 needs m > 3

    def test_rejects_zero_polynomial(self):
        with pytest.raises(ValueError):
            RationalShape((0.0,), 5)

    def test_derivatives_match_finite_differences(self):
        shape = RationalShape((0.5, -1.0, 2.0), 6, "test")
        for x in (0.05, 0.7, 4.0):
            fd1 = numerics.differentiate(shape.value, x, order=1)
            fd2 = numerics.differentiate(shape.value, x, order=2)
            assert shape.deriv(x) == pytest.approx(fd1, rel=1e-8)
            assert shape.deriv2(x) == pytest.approx(fd2, rel=1e-7)


class TestWeakPotential:
    def test_single_quark_origin_value(self):
        params = ModelParams(s=2.0, lam=3.0, t=0.0)
        assert psi(0.0, SINGLE_QUARK, params) == pytest.approx(params.lam / params.s, rel=1e-15)

    def test_flat_offset_rides_along(self):
        params = ModelParams(s=2.0, lam=3.0, t=0.25)
        base = ModelParams(s=2.0, lam=3.0, t=0.0)
        lift = params.lam * params.s**2 * params.t
        assert psi(1.0, SINGLE_QUARK, params) == pytest.approx(
            psi(1.0, SINGLE_QUARK, base) + lift, rel=1e-14
        )
        assert psi_prime(1.0, SINGLE_QUARK, params) == psi_prime(1.0, SINGLE_QUARK, base)

    def test_two_quark_maximum_at_one_third(self):
        params = ModelParams(s=1.5, alpha=0.05, lam=1.0)
        r_star = params.r_of(1.0 / 3.0)
        assert psi_prime(r_star, TWO_QUARK, params) == pytest.approx(0.0, abs=1e-14)
        eps = 1e-4 * r_star
        assert psi(r_star, TWO_QUARK, params) > psi(r_star - eps, TWO_QUARK, params)
        assert psi(r_star, TWO_QUARK, params) > psi(r_star + eps, TWO_QUARK, params)

    def test_matches_dimensional_closed_form(self):
        # lam s^2/(s + alpha r)^3 written with the dimensionless profile
        params = ModelParams(s=2.0, alpha=0.3, lam=0.9)
        for r in (0.0, 1.0, 10.0):
            direct = params.lam * params.s**2 / (params.s + params.alpha * r) ** 3
            assert psi(r, SINGLE_QUARK, params) == pytest.approx(direct, rel=1e-14)

    def test_second_derivative_chain_rule(self):
        params = ModelParams(s=1.2, alpha=0.4, lam=2.0)
        f = lambda r: psi(r, SINGLE_QUARK, params)
        assert psi_double_prime(3.0, SINGLE_QUARK, params) == pytest.approx(
            numerics.differentiate(f, 3.0, order=2), rel=1e-7
        )


class TestAstar:
    def test_single_quark_closed_form(self):
        params = ModelParams(s=1.3, alpha=0.21)
        for r in (0.01, 1.0, 40.0):
            closed = 2.0 / r - 4.0 * params.alpha / (params.s + params.alpha * r)
            assert astar(r, SINGLE_QUARK, params) == pytest.approx(closed, rel=1e-12)

    def test_zero_at_confining_minimum(self):
        params = ModelParams(s=1.0, alpha=1.0)
        assert astar(1.0, SINGLE_QUARK, params) == pytest.approx(0.0, abs=1e-13)

    def test_far_field_limit(self):
        params = ModelParams(s=1.0, alpha=0.5)
        r = 1e9
        assert r * astar(r, SINGLE_QUARK, params) == pytest.approx(-2.0, abs=1e-6)

    def test_diverges_at_extremum(self):
        params = ModelParams(s=1.0, alpha=1.0)
        with pytest.raises(ExtremumSingularity):
            astar(1.0 / 3.0, TWO_QUARK, params)


class TestConfining:
    def test_single_quark_closed_form(self):
        params = ModelParams(s=1.0, alpha=1.0, k=1.0)
        coeffs = closed_form_coefficients(SINGLE_QUARK, params)
        assert phi_k(1.0, SINGLE_QUARK, params, coeffs) == pytest.approx(16.0, rel=1e-14)
        for r in (0.2, 2.5, 9.0):
            closed = params.k * (params.s + params.alpha * r) ** 4 / (params.s**3 * r * r)
            assert phi_k(r, SINGLE_QUARK, params, coeffs) == pytest.approx(closed, rel=1e-13)

    def test_two_quark_closed_form(self):
        params = ModelParams(s=1.1, alpha=0.6, k=0.8)
        coeffs = closed_form_coefficients(TWO_QUARK, params)
        for r in (0.1, 0.5, 3.0):
            s, a = params.s, params.alpha
            closed = params.k / s**3 * (s + a * r) ** 5 / (r * r * abs(s - 3 * a * r))
            assert phi_k(r, TWO_QUARK, params, coeffs) == pytest.approx(closed, rel=1e-13)

    def test_k_and_p_pieces_flip_sign_across_extremum(self):
        params = ModelParams(s=1.0, alpha=1.0)
        x_lo, x_hi = 0.25, 0.45  # straddles the two-quark extremum at 1/3
        for c in (ConfiningCoefficients(K=1.0, P=0.0, C=0.0),
                  ConfiningCoefficients(K=0.0, P=1.0, C=0.0)):
            lo = phi_k(params.r_of(x_lo), TWO_QUARK, params, c)
            hi = phi_k(params.r_of(x_hi), TWO_QUARK, params, c)
            assert lo * hi < 0.0
        c_only = ConfiningCoefficients(K=0.0, P=0.0, C=1.0)
        lo = phi_k(params.r_of(x_lo), TWO_QUARK, params, c_only)
        hi = phi_k(params.r_of(x_hi), TWO_QUARK, params, c_only)
        assert lo > 0.0 and hi > 0.0

    def test_flux_identity_spot_check(self):
        params = ModelParams(s=1.0, alpha=1.0)
        coeffs = ConfiningCoefficients(K=0.7, P=-0.3, C=1.1)

        def flux(r):
            x = params.x_of(r)
            return (phi_k_dimensionless(r, SINGLE_QUARK, params, coeffs)
                    * r * r * (params.alpha / params.s**4) * SINGLE_QUARK.deriv(x))

        r = 1.7
        lhs = numerics.differentiate(flux, r, order=1)
        rhs = coeffs.K * params.s**3 * (params.alpha / params.s**4) * SINGLE_QUARK.deriv(params.x_of(r))
        assert lhs == pytest.approx(rhs, rel=1e-8)


class TestParticular:
    def test_zero_at_origin(self):
        assert phi_p(0.0, ModelParams(b=2.0)) == 0.0

    def test_coulomb_tail(self):
        params = ModelParams(s=1.0, alpha=0.7, b=1.4)
        r = 1e8
        assert r * phi_p(r, params) == pytest.approx(params.b, rel=1e-6)

    def test_point_value(self):
        assert phi_p(1.0, ModelParams(s=1.0, alpha=1.0, b=1.0)) == pytest.approx(1.0 / 8.0)

    def test_prime_matches_numeric(self):
        params = ModelParams(s=1.0, alpha=0.5, b=-0.8)
        f = lambda r: phi_p(r, params)
        assert phi_p_prime(2.0, params) == pytest.approx(numerics.differentiate(f, 2.0), rel=1e-9)


class TestExternalCurrent:
    def test_smooth_part_changes_sign_at_scale_radius(self):
        params = ModelParams(s=1.0, alpha=0.5, q=1 / 3)
        r_star = params.s / params.alpha
        assert external_current_density(0.5 * r_star, params).smooth > 0.0
        assert external_current_density(2.0 * r_star, params).smooth < 0.0

    def test_smooth_shell_integral_vanishes(self):
        params = ModelParams(s=1.0, alpha=0.5, q=1 / 3)
        res = numerics.integrate(
            lambda r: external_current_density(r, params).smooth * 4 * math.pi * r * r,
            0.0, math.inf, scale=params.s / params.alpha,
        )
        assert abs(res.value) < 1e-10

    def test_delta_weight_carries_the_total(self):
        params = ModelParams(q=0.4)
        weight = external_current_density(1.0, params).delta_weight
        assert weight == pytest.approx(-2 * math.sqrt(2) * 0.4, rel=1e-14)


class TestRegions:
    @pytest.mark.parametrize("name,count", [("single-quark", 1), ("two-quark", 2), ("three-quark", 3)])
    def test_region_counts(self, name, count):
        decomp = decompose_regions(BUILTIN_SHAPES[name], ModelParams())
        assert len(decomp) == count
        assert len(decomp.extrema_x) == count - 1

    def test_two_quark_split_point(self):
        decomp = decompose_regions(TWO_QUARK, ModelParams(s=1.0, alpha=0.25))
        assert decomp.extrema_x[0] == pytest.approx(1.0 / 3.0, rel=1e-12)
        assert decomp.extrema_r[0] == pytest.approx(4.0 / 3.0, rel=1e-12)
        assert [reg.psi_prime_sign for reg in decomp.regions] == [1, -1]

    def test_three_quark_signs(self):
        decomp = decompose_regions(THREE_QUARK, ModelParams())
        assert [reg.psi_prime_sign for reg in decomp.regions] == [-1, 1, -1]
        lo, hi = decomp.extrema_x
        assert lo == pytest.approx(1 - math.sqrt(6) / 3, rel=1e-10)
        assert hi == pytest.approx(1 + math.sqrt(6) / 3, rel=1e-10)

    def test_partition_is_contiguous(self):
        decomp = decompose_regions(THREE_QUARK, ModelParams())
        assert decomp.regions[0].x_lo == 0.0
        assert math.isinf(decomp.regions[-1].x_hi)
        for left, right in zip(decomp.regions[:-1], decomp.regions[1:]):
            assert left.x_hi == right.x_lo

    def test_degenerate_extremum_rejected(self):
        flat = CallableShape(
            f=lambda x: (x - 1.0) ** 4 / 4.0,
            df=lambda x: (x - 1.0) ** 3,
            d2f=lambda x: 3.0 * (x - 1.0) ** 2,
            label="flat-crossing",
        )
        with pytest.raises(DegenerateExtremum):
            decompose_regions(flat, ModelParams())


class TestAsymptotics:
    def test_single_quark_report(self):
        params = ModelParams(s=1.0, alpha=1.0)
        report = verify_asymptotics(SINGLE_QUARK, params, closed_form_coefficients(SINGLE_QUARK, params))
        assert report.all_ok

    def test_two_quark_report_with_all_terms(self):
        params = ModelParams(s=1.0, alpha=1.0)
        report = verify_asymptotics(TWO_QUARK, params, ConfiningCoefficients(K=0.5, P=1.0, C=0.7))
        assert report.all_ok
        by_name = {c.name: c for c in report.checks}
        assert by_name["phi_k_far_slope"].expected == 2.0
        assert by_name["phi_k_K_term_far_slope"].expected == -1.0
        assert by_name["phi_k_near_slope"].expected == -2.0  # Psi ~ x near 0


class TestSampling:
    def test_grid_kinds(self):
        assert len(GridSpec("lin", 1.0, 2.0, 5).radii()) == 5
        logs = GridSpec("log", 0.1, 10.0, 3).radii()
        assert logs[1] == pytest.approx(1.0, rel=1e-12)
        with pytest.raises(ValueError):
            GridSpec("weird", 1.0, 2.0, 5)

    def test_singular_row_flagged(self):
        params = ModelParams(s=1.0, alpha=1.0)
        coeffs = closed_form_coefficients(TWO_QUARK, params)
        grid = GridSpec("lin", 1.0 / 3.0, 1.0, 3)  # first point sits on the divergence
        rows = sample_curves(TWO_QUARK, params, coeffs, grid)
        assert rows[0].singular and math.isinf(rows[0].phi_k)
        assert not rows[1].singular and math.isfinite(rows[1].phi_k)
