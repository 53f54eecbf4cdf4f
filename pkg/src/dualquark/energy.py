"""Energies, minima, and the unstable-particle model.

A quark of charge b sitting in region R carries the interaction energy
b(phi_k + psi) plus the integrated Coulomb energy of its particular
potential.  The minimum-energy radius r_m inside a region solves

    Phi_k dPhi_k/dr = +- s^5 lam / (k r^2)        (Phi_k = phi_k s^3/k)

with + where Psi' < 0 and - where Psi' > 0, so r_m sits to the right of the
bare phi_k minimum in falling-Psi regions and to the left in rising ones.
For the single-quark closed form and r_m = n s/alpha this reduces to

    2 (n+1)^7 (n-1) / n^3 = lam / (k alpha^3).

With a large K term the outer quark of a two-quark system is only partially
confined; in the scaled variable x = alpha r/s its energy is

    E(x) = D (1+x)/(x(3x-1)) - U (1+x)^5/(x^2(3x-1)) + N x/(1+x)^4 + T

with D = -alpha K, U = alpha^2 (P-C), N = lam/(alpha k), T = s^3 lam t / k.
E climbs to +inf at x = 1/3 only when D/U exceeds (9/4)(4/3)^5 ~ 9.48, dips
to a metastable minimum, crests at a finite barrier and then falls as -x^2:
the well depth E_max - E_min is a proxy for the particle's lifetime.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import numerics
from .numerics import Tolerance, DEFAULT_TOL
from .potentials import (
    SINGLE_QUARK,
    ConfiningCoefficients,
    ModelParams,
    Region,
    WeakPotentialShape,
    confining_profile,
    confining_profile_deriv,
    phi_k,
    phi_p_prime,
    psi,
    psi_prime,
)


class NoInteriorMinimum(ArithmeticError):
    """No interior energy minimum in the region: partial confinement.

    Hand the parameters to the unstable analysis instead.
    """


class NoWellStructure(ArithmeticError):
    """The unstable energy has no minimum/maximum pair (fully bound or
    fully unbound)."""


@functools.lru_cache(maxsize=256)
def _coulomb_quadrature(b: float, alpha: float, s: float, tol: Tolerance) -> float:
    params = ModelParams(s=s, alpha=alpha, b=b)

    def integrand(r: float) -> float:
        d = phi_p_prime(r, params)
        return 0.5 * d * d * r * r

    res = numerics.integrate(integrand, 0.0, math.inf, tol, scale=s / alpha)
    if not res.converged:
        raise numerics.BudgetExhausted(f"Coulomb quadrature: {res.message}")
    return res.value


def coulomb_energy(params: ModelParams, tol: Tolerance = DEFAULT_TOL) -> float:
    """Integrated Coulomb energy (1/2) int (dphi_p/dr)^2 r^2 dr = (3/70) alpha b^2 / s."""
    if params.b == 0.0:
        return 0.0
    return _coulomb_quadrature(params.b, params.alpha, params.s, tol)


def total_energy(
    r: float,
    shape: WeakPotentialShape,
    params: ModelParams,
    coeffs: ConfiningCoefficients,
    include_coulomb: bool = True,
) -> float:
    """xi(r) = xi_c + b phi_k(r) + b psi(r); the flat t offset rides along
    inside psi."""
    xi = params.b * (phi_k(r, shape, params, coeffs) + psi(r, shape, params))
    if include_coulomb:
        xi += coulomb_energy(params)
    return xi


@dataclass(frozen=True)
class EnergyProfile:
    """xi(r) restricted to one region, with any located extrema attached."""

    shape: WeakPotentialShape
    params: ModelParams
    coeffs: ConfiningCoefficients
    region: Region
    extrema: tuple[tuple[float, float, str], ...] = ()

    def value(self, r: float, include_coulomb: bool = True) -> float:
        return total_energy(r, self.shape, self.params, self.coeffs, include_coulomb)

    def interaction(self, r: float) -> float:
        return self.value(r, include_coulomb=False)


class EnergyMinimum(NamedTuple):
    r: float
    x: float
    xi: float


def find_energy_minimum(
    region: Region,
    shape: WeakPotentialShape,
    params: ModelParams,
    coeffs: ConfiningCoefficients,
    tol: Tolerance = DEFAULT_TOL,
    n_scan: int = 800,
    x_span: float = 1e4,
) -> EnergyMinimum:
    """Minimum-energy radius inside a region bracketed by divergences.

    Works in the scaled variable x and solves W dW/dx = +- (lam/(alpha k))/x^2
    (the dimensionless form of the stationarity equation), then reports the
    radius and the total energy there.  Raises NoInteriorMinimum when no
    interior solution exists, which signals partial confinement.
    """
    sgn = 1.0 if region.psi_prime_sign < 0 else -1.0
    rhs_amp = params.lam / (params.alpha * params.k)

    def residual(x: float) -> float:
        w = confining_profile(x, shape, coeffs)
        dw = confining_profile_deriv(x, shape, coeffs)
        return w * dw - sgn * rhs_amp / (x * x)

    def residual_or_nan(x: float) -> float:
        try:
            return residual(x)
        except ArithmeticError:
            return math.nan

    if region.x_lo > 0.0:
        lo = region.x_lo * (1.0 + 1e-7)
    else:
        hi_ref = region.x_hi if math.isfinite(region.x_hi) else 1.0
        lo = hi_ref * 1e-7
    if math.isfinite(region.x_hi):
        hi = region.x_hi * (1.0 - 1e-7)
    else:
        hi = max(region.x_lo, 1.0) * x_span

    xs = np.geomspace(lo, hi, n_scan)
    vals = np.array([residual_or_nan(x) for x in xs])
    candidates = []
    for i in range(len(xs) - 1):
        a, b = vals[i], vals[i + 1]
        if not (math.isfinite(a) and math.isfinite(b)):
            continue
        if a < 0.0 <= b:  # rising crossing: a minimum of the energy
            x_root = numerics.find_root(residual, float(xs[i]), float(xs[i + 1]), tol)
            candidates.append(x_root)
    if not candidates:
        raise NoInteriorMinimum(
            f"no interior energy minimum in region x=({region.x_lo}, {region.x_hi}); "
            "partial confinement, use the unstable analysis"
        )
    best_x = min(
        candidates,
        key=lambda x: total_energy(params.r_of(x), shape, params, coeffs, include_coulomb=False),
    )
    r_m = params.r_of(best_x)
    return EnergyMinimum(r=r_m, x=best_x, xi=total_energy(r_m, shape, params, coeffs))


def solve_single_quark_n(rhs: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Root n > 1 of 2 (n+1)^7 (n-1) / n^3 = rhs, with rhs = lam/(k alpha^3).

    The left side vanishes at n = 1 and grows without bound, so the root is
    unique; the bracket is grown geometrically until it straddles it.
    """
    if rhs <= 0.0:
        raise ValueError("rhs must be > 0")

    def f(n: float) -> float:
        return 2.0 * (n + 1.0) ** 7 * (n - 1.0) / n**3 - rhs

    lo = 1.0 + 1e-12
    hi = 2.0
    while f(hi) < 0.0:
        hi *= 2.0
        if hi > 1e9:
            raise numerics.BracketError("no sign change while growing bracket")
    return numerics.find_root(f, lo, hi, tol)


@dataclass(frozen=True)
class UnstableParams:
    """Dimensionless parameters of the partially confined quark's energy.

    The canonical normalization takes U = 1 (U > 0); the well analysis
    rejects U <= 0, which corresponds to C = P and has no solution, but the
    bare formula evaluation accepts any finite values.
    """

    D: float
    U: float = 1.0
    N: float = 0.0
    T: float = 0.0

    def __post_init__(self):
        for name in ("D", "U", "N", "T"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def from_coefficients(
        cls,
        K: float,
        P: float,
        C: float,
        lam: float,
        k: float,
        alpha: float,
        t: float = 0.0,
        s: float = 1.0,
    ) -> "UnstableParams":
        """D = -alpha K, U = alpha^2 (P-C), N = lam/(alpha k), T = s^3 lam t / k."""
        return cls(D=-alpha * K, U=alpha**2 * (P - C), N=lam / (alpha * k), T=s**3 * lam * t / k)


# D/U above this makes the x -> 1/3+ divergence positive: (9/4)(4/3)^5.
DIVERGENCE_RATIO = (9.0 / 4.0) * (4.0 / 3.0) ** 5

_POLE_TOL = 1e-12


def unstable_energy(x: float, up: UnstableParams) -> float:
    """E(x) of the partially confined quark; pole at x = 1/3."""
    if x <= 0.0:
        raise ValueError("x must be > 0")
    if abs(3.0 * x - 1.0) < _POLE_TOL:
        raise ZeroDivisionError("E(x) has a pole at x = 1/3")
    u = 1.0 + x
    w = 3.0 * x - 1.0
    return up.D * u / (x * w) - up.U * u**5 / (x * x * w) + up.N * x / u**4 + up.T


def unstable_energy_deriv(x: float, up: UnstableParams) -> float:
    """dE/dx, analytic."""
    if x <= 0.0:
        raise ValueError("x must be > 0")
    if abs(3.0 * x - 1.0) < _POLE_TOL:
        raise ZeroDivisionError("E(x) has a pole at x = 1/3")
    u = 1.0 + x
    w = 3.0 * x - 1.0
    quad_a = -3.0 * x * x - 6.0 * x + 1.0
    quad_b = 3.0 * x * x - 6.0 * x + 1.0
    d_d = up.D * quad_a / (x * x * w * w)
    d_u = -up.U * 2.0 * u**4 * quad_b / (x**3 * w * w)
    d_n = up.N * (1.0 - 3.0 * x) / u**5
    return d_d + d_u + d_n


def divergence_threshold(up: UnstableParams) -> bool:
    """True when the x -> 1/3+ divergence of E is positive: 4D - 9U(4/3)^5 > 0."""
    if up.U <= 0.0:
        raise ValueError("U must be > 0: U = 0 means C = P, which has no solution")
    return 4.0 * up.D - 9.0 * up.U * (4.0 / 3.0) ** 5 > 0.0


def solve_N_for_extremum(D: float, x_star: float, U: float = 1.0) -> float:
    """N making x_star a stationary point of E (T drops out).

    Rearranges the zero-derivative relation

        D = U * 2(1+x)^4 (3x^2-6x+1) / (x(-3x^2-6x+1))
            + N * (3x-1)^3 x^2 / ((1+x)^5 (-3x^2-6x+1))

    which is linear in N.
    """
    if not (x_star > 1.0 / 3.0):
        raise ValueError("x_star must exceed 1/3")
    denom = -3.0 * x_star * x_star - 6.0 * x_star + 1.0
    if abs(denom) < 1e-14:
        raise ZeroDivisionError("relation degenerates where -3x^2 - 6x + 1 = 0")
    u = 1.0 + x_star
    a_term = U * 2.0 * u**4 * (3.0 * x_star**2 - 6.0 * x_star + 1.0) / (x_star * denom)
    n_coeff = (3.0 * x_star - 1.0) ** 3 * x_star**2 / (u**5 * denom)
    return (D - a_term) / n_coeff


@dataclass(frozen=True)
class UnstableRow:
    """One record of the unstable-solution table."""

    D: float
    N: float
    x_min: float
    x_max: float
    E_min: float
    E_max: float
    depth: float


def analyze_unstable(
    up: UnstableParams,
    x_hi: float = 100.0,
    n_scan: int = 1000,
    tol: Tolerance = DEFAULT_TOL,
) -> UnstableRow:
    """Locate the metastable well of E on (1/3, inf).

    Sign-scans dE/dx on a geometric grid, refines each crossing by bracketed
    root finding, and expects the minimum-then-maximum pattern of partial
    confinement (E falls off as -x^2 beyond the barrier).  Anything else
    raises NoWellStructure.
    """
    xs = np.geomspace(1.0 / 3.0 + 1e-6, x_hi, n_scan)
    d = np.array([unstable_energy_deriv(x, up) for x in xs])
    minima: list[float] = []
    maxima: list[float] = []
    for i in range(len(xs) - 1):
        a, b = d[i], d[i + 1]
        if not (math.isfinite(a) and math.isfinite(b)) or a == 0.0 or a * b > 0.0:
            continue
        root = numerics.find_root(lambda x: unstable_energy_deriv(x, up),
                                  float(xs[i]), float(xs[i + 1]), tol)
        (minima if a < 0.0 else maxima).append(root)
    if len(minima) != 1 or len(maxima) != 1 or not minima[0] < maxima[0]:
        raise NoWellStructure(
            f"expected one minimum then one maximum, found minima={minima}, maxima={maxima} "
            "(fully bound or fully unbound)"
        )
    x_min, x_max = minima[0], maxima[0]
    e_min = unstable_energy(x_min, up)
    e_max = unstable_energy(x_max, up)
    if not unstable_energy(x_hi, up) < e_min:
        raise NoWellStructure("E does not fall below the well beyond the barrier")
    return UnstableRow(
        D=up.D, N=up.N,
        x_min=x_min, x_max=x_max,
        E_min=e_min, E_max=e_max,
        depth=e_max - e_min,
    )


def free_particle_mass(
    params: ModelParams,
    shape: WeakPotentialShape = SINGLE_QUARK,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Mass of the freed unit-charge particle after confinement collapses:

        m = (1/2) int [ (phi_p')^2 + phi_p' psi' ] r^2 dr,

    i.e. the Coulomb energy plus a cross term fed by the weak potential.
    For the single-quark profile this is (3 alpha b^2/70 - b lam/140)/s.
    """

    def integrand(r: float) -> float:
        dp = phi_p_prime(r, params)
        return 0.5 * (dp * dp + dp * psi_prime(r, shape, params)) * r * r

    res = numerics.integrate(integrand, 0.0, math.inf, tol, scale=params.s / params.alpha)
    if not res.converged:
        raise numerics.BudgetExhausted(f"mass quadrature: {res.message}")
    return res.value


@dataclass(frozen=True)
class ReferenceRow:
    """Published unstable-solution row plus the extremum it was seeded from."""

    D: float
    N: float
    x_min: float
    x_max: float
    E_min: float
    E_max: float
    depth: float
    seed_x: float
    seed_kind: str  # which listed extremum the N relation was solved at


TABLE1_ROWS: tuple[ReferenceRow, ...] = (
    ReferenceRow(10.0, -83.4, 0.8, 1.5, -12.3, -10.8, 1.5, 1.5, "max"),
    ReferenceRow(10.0, -152.0, 0.7, 2.0, -17.0, -12.9, 4.1, 2.0, "max"),
    ReferenceRow(10.0, -488.0, 0.5, 3.0, -49.0, -18.3, 30.7, 3.0, "max"),
    ReferenceRow(100.0, -1163.0, 2.0, 2.5, -10.93, -10.77, 0.16, 2.0, "min"),
    ReferenceRow(1000.0, -10390.0, 2.3, 3.0, 29.1, 30.7, 1.6, 2.3, "min"),
)
