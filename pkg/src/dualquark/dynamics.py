"""Small oscillations about an energy minimum.

A quark displaced radially from the bottom of its well at r_m feels the
restoring force -xi''(r_m) eps, and with inertial mass xi(r_m)/c^2 swings at

    omega = c * sqrt( xi''(r_m) / xi(r_m) ).

The Coulomb constant is excluded from the mass by default (it is small
against the interaction terms); it never affects the curvature.  For the
single-quark well at r_m = n s / alpha both xi'' and xi have closed forms,

    xi'' = 2 b k a^2/s^3 [ (n+1)^7 (n^2-2n+3) a^2 + 6 n^4 L ] / (n^4 (n+1)^5)
    xi   =   b k /s      [ (n+1)^7 a^2 + n^2 L ] / (n^2 (n+1)^3)

with a = alpha and L = lam/k, and omega comes out near 0.1 c alpha / s for
n around 12.6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import units
from .numerics import Tolerance, DEFAULT_TOL, differentiate
from .energy import EnergyProfile, coulomb_energy
from .potentials import SINGLE_QUARK, ModelParams, WeakPotentialShape, closed_form_coefficients, phi_k, psi


class NotAMinimum(ArithmeticError):
    """Curvature or energy at the candidate radius is not positive."""


@dataclass(frozen=True)
class OscillatorResult:
    """Radial oscillation about r_m.

    omega is in model units c/[length-unit]; the converted fields are filled
    when the physical size of the length unit is supplied.
    """

    r_m: float
    mass: float
    curvature: float
    omega: float
    omega_per_s: float | None = None
    photon_energy_gev: float | None = None


def _with_conversion(r_m, mass, curvature, omega, unit_length_m):
    if unit_length_m is None:
        return OscillatorResult(r_m, mass, curvature, omega)
    return OscillatorResult(
        r_m, mass, curvature, omega,
        omega_per_s=units.omega_per_second(omega, unit_length_m),
        photon_energy_gev=units.photon_energy_gev(omega, unit_length_m),
    )


def shm_frequency(
    profile: EnergyProfile,
    r_m: float,
    tol: Tolerance = DEFAULT_TOL,
    include_coulomb: bool = False,
    unit_length_m: float | None = None,
) -> OscillatorResult:
    """omega from numeric curvature of the profile at an interior minimum."""
    xi = profile.value(r_m, include_coulomb=include_coulomb)
    xi2 = differentiate(profile.interaction, r_m, order=2, tol=tol, h0=0.02 * r_m)
    if xi2 <= 0.0:
        raise NotAMinimum(f"xi''({r_m}) = {xi2} <= 0")
    if xi <= 0.0:
        raise NotAMinimum(f"xi({r_m}) = {xi} <= 0; mass must be positive")
    omega = math.sqrt(xi2 / xi)
    return _with_conversion(r_m, xi, xi2, omega, unit_length_m)


def shm_single_quark_closed_form(
    n: float,
    alpha: float,
    lambda_over_k: float,
    s: float = 1.0,
    b: float = 1.0,
    k: float = 1.0,
    s_meters: float | None = None,
) -> OscillatorResult:
    """Closed-form oscillator at the single-quark minimum r_m = n s / alpha.

    Matches the numeric-curvature path on the same profile to better than
    1e-6 relative.  ``s_meters`` gives the physical size of s and enables
    the converted fields.
    """
    if n <= 1.0:
        raise ValueError("need n > 1")
    L = lambda_over_k
    xi2 = (
        2.0 * b * k * alpha**2 / s**3
        * ((n + 1.0) ** 7 * (n * n - 2.0 * n + 3.0) * alpha**2 + 6.0 * n**4 * L)
        / (n**4 * (n + 1.0) ** 5)
    )
    xi = b * k / s * ((n + 1.0) ** 7 * alpha**2 + n * n * L) / (n * n * (n + 1.0) ** 3)
    if xi2 <= 0.0 or xi <= 0.0:
        raise NotAMinimum("closed form produced non-positive curvature or energy")
    omega = math.sqrt(xi2 / xi)
    unit_length_m = None if s_meters is None else s_meters / s
    return _with_conversion(n * s / alpha, xi, xi2, omega, unit_length_m)


@dataclass(frozen=True)
class EnergyScaleReport:
    """Interaction and Coulomb energies at the single-quark minimum.

    Model values are coefficients of e^2/[length-unit]; the MeV fields are
    filled when the physical size of s is supplied.
    """

    n: float
    r_m: float
    xi_k: float
    xi_lam: float
    xi_coul: float
    ratio_lam_k: float
    xi_k_mev: float | None = None
    xi_lam_mev: float | None = None
    xi_coul_mev: float | None = None


def energy_scale_report(
    params: ModelParams,
    n: float,
    shape: WeakPotentialShape = SINGLE_QUARK,
    s_meters: float | None = None,
) -> EnergyScaleReport:
    """Evaluate the three energy scales at r_m = n s / alpha.

    xi_k and xi_lam are the confining and weak interaction energies of the
    charge b; xi_coul the integrated Coulomb energy.  With b = b' e, k = k' e
    and s = 1e-19 m the confining term lands at roughly b' k' * 3 MeV.
    """
    r_m = n * params.s / params.alpha
    coeffs = closed_form_coefficients(shape, params)
    xi_k = params.b * phi_k(r_m, shape, params, coeffs)
    xi_lam = params.b * psi(r_m, shape, params)
    xi_coul = coulomb_energy(params)
    ratio = xi_lam / xi_k if xi_k != 0.0 else math.nan
    if s_meters is None:
        return EnergyScaleReport(n, r_m, xi_k, xi_lam, xi_coul, ratio)
    unit_m = s_meters / params.s
    return EnergyScaleReport(
        n, r_m, xi_k, xi_lam, xi_coul, ratio,
        xi_k_mev=units.energy_mev(xi_k, unit_m),
        xi_lam_mev=units.energy_mev(xi_lam, unit_m),
        xi_coul_mev=units.energy_mev(xi_coul, unit_m),
    )
