"""Weak-potential shapes and the potentials they generate.

Everything radial is driven by a dimensionless profile Psi(x) of the scaled
radius x = alpha*r/s.  The built-in family is rational,

    Psi(x) = p(x) / (1+x)**m,        m > deg(p) + 2,

which admits exact derivatives and realises one, two or three quark regions
depending on how many extrema Psi has (n extrema -> n+1 regions, one quark
per region).

Derived quantities, all in terms of Psi and its x-derivatives:

    weak potential     psi(r)   = (lam/s) Psi(x) + lam s^2 t
    3-potential        A*(r)    = (alpha/s) Psi''/Psi' + 2/r
    confining          phi_k(r) = (k alpha/s) * W(x),
                       W(x) = [K Psi(x) + P] / (x^2 Psi'(x)) + C / (x^2 |Psi'(x)|)
    particular         phi_p(r) = b alpha^3 r^2 / (s + alpha r)^3

The K and P pieces of phi_k change sign across each extremum of Psi; the C
piece does not.  A* and phi_k diverge at the extrema; those divergences are
physical barriers and are reported, never clamped.  The flat offset t drops
out of every Psi'-derived quantity and is folded into P where it would
otherwise enter (the two integration constants merge).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Protocol, runtime_checkable

import numpy as np

from . import numerics
from .numerics import Tolerance, DEFAULT_TOL

_SQRT2 = math.sqrt(2.0)

# An evaluation point within ~this relative distance of a simple zero of
# Psi' counts as an extremum hit (|Psi'| ~ |Psi''| * dx near the zero, so
# compare |Psi'| against x*|Psi''|, which stays valid where Psi' merely
# decays at large x).
SINGULAR_TOL = 1e-13


def _is_singular(x: float, d: float, d2: float) -> bool:
    return d == 0.0 or abs(d) < SINGULAR_TOL * abs(x * d2)


class ExtremumSingularity(ArithmeticError):
    """Evaluation requested at (or numerically on top of) an extremum of Psi."""

    def __init__(self, r: float):
        self.r = r
        super().__init__(f"Psi' vanishes at r={r!r}; A* and phi_k diverge there")


class DegenerateExtremum(ValueError):
    """Psi' and Psi'' vanish together; the region structure is ill-defined."""


@dataclass(frozen=True)
class ModelParams:
    """Physical scales and amplitudes shared by the potential/energy operations.

    s: length scale; alpha: separation multiplier (the model expects
    alpha << 1 but does not enforce it); lam, k: charge amplitudes of the
    weak and confining potentials; t: flat offset of the weak potential in
    units of 1/s^3; b: quark charge; q, gamma: seed charge and confining
    exponent of the source terms.
    """

    s: float = 1.0
    alpha: float = 1.0
    lam: float = 0.0
    k: float = 1.0
    t: float = 0.0
    b: float = 1.0
    q: float = 1.0 / 3.0
    gamma: float = -2.0

    def __post_init__(self):
        if not (self.s > 0.0):
            raise ValueError("scale s must be > 0")
        if not (self.alpha > 0.0):
            raise ValueError("alpha must be > 0")
        for name in ("s", "alpha", "lam", "k", "t", "b", "q", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def x_of(self, r: float) -> float:
        return self.alpha * r / self.s

    def r_of(self, x: float) -> float:
        return self.s * x / self.alpha


@runtime_checkable
class WeakPotentialShape(Protocol):
    """Dimensionless radial profile with analytic first and second derivatives."""

    label: str

    def value(self, x: float) -> float: ...

    def deriv(self, x: float) -> float: ...

    def deriv2(self, x: float) -> float: ...


def _polyval(coeffs: tuple[float, ...], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _polyder(coeffs: tuple[float, ...]) -> tuple[float, ...]:
    return tuple(i * c for i, c in enumerate(coeffs))[1:] or (0.0,)


@dataclass(frozen=True)
class RationalShape:
    """Psi(x) = p(x)/(1+x)**m with p given by ascending coefficients.

    m > deg(p) + 2 keeps Psi -> const at infinity; m = deg(p) + 3 in
    addition matches the 1/r^3 far-field decay of the homogeneous weak
    potential, which all built-in shapes satisfy.
    """

    poly: tuple[float, ...]
    m: int
    label: str = "rational"

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.poly)
        if not coeffs or all(c == 0.0 for c in coeffs):
            raise ValueError("polynomial must be nonzero")
        object.__setattr__(self, "poly", coeffs)
        deg = max(i for i, c in enumerate(coeffs) if c != 0.0)
        if self.m <= deg + 2:
            raise ValueError(f"need m > deg(p)+2, got m={self.m}, deg={deg}")

    def value(self, x: float) -> float:
        return _polyval(self.poly, x) / (1.0 + x) ** self.m

    def deriv(self, x: float) -> float:
        p = _polyval(self.poly, x)
        dp = _polyval(_polyder(self.poly), x)
        return (dp * (1.0 + x) - self.m * p) / (1.0 + x) ** (self.m + 1)

    def deriv2(self, x: float) -> float:
        p = _polyval(self.poly, x)
        d1 = _polyder(self.poly)
        dp = _polyval(d1, x)
        ddp = _polyval(_polyder(d1), x)
        u = 1.0 + x
        return (ddp * u * u - 2.0 * self.m * dp * u + self.m * (self.m + 1) * p) / u ** (self.m + 2)


@dataclass(frozen=True)
class CallableShape:
    """Adapter for a user-supplied profile with its own derivatives."""

    f: Callable[[float], float]
    df: Callable[[float], float]
    d2f: Callable[[float], float]
    label: str = "custom"

    def value(self, x: float) -> float:
        return self.f(x)

    def deriv(self, x: float) -> float:
        return self.df(x)

    def deriv2(self, x: float) -> float:
        return self.d2f(x)


# Monotonic profile: no extremum, a single region holding one quark.
SINGLE_QUARK = RationalShape((1.0,), 3, "single-quark")
# One maximum at x = 1/3: two regions.
TWO_QUARK = RationalShape((0.0, 1.0), 4, "two-quark")
# Minimum then maximum (Psi' signs -, +, -): three regions.  p = x(x-1);
# its extrema sit at the roots of 3x^2 - 6x + 1.
THREE_QUARK = RationalShape((0.0, -1.0, 1.0), 5, "three-quark")

BUILTIN_SHAPES = {
    "single-quark": SINGLE_QUARK,
    "two-quark": TWO_QUARK,
    "three-quark": THREE_QUARK,
}


@dataclass(frozen=True)
class ConfiningCoefficients:
    """The three dimensionless integration constants of the confining solution.

    P plays the role of K*s^3*beta with beta the merged integration
    constant, so any flat offset of Psi belongs in P, not in the profile.
    """

    K: float = 0.0
    P: float = 0.0
    C: float = 1.0

    def __post_init__(self):
        for name in ("K", "P", "C"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


def closed_form_coefficients(shape: WeakPotentialShape, params: ModelParams) -> ConfiningCoefficients:
    """K=P=0 with C scaled so the bare confining branch reduces to the
    standard closed forms for the built-in shapes, e.g.

        single-quark: phi_k = k (s+alpha r)^4 / (s^3 r^2)
        two-quark:    phi_k = (k/s^3) (s+alpha r)^5 / (r^2 |s - 3 alpha r|)
    """
    num0 = shape.deriv(0.0)
    if num0 == 0.0:
        raise ValueError("shape has Psi'(0) = 0; no canonical normalization")
    return ConfiningCoefficients(K=0.0, P=0.0, C=params.alpha * abs(num0))


def psi(r: float, shape: WeakPotentialShape, params: ModelParams) -> float:
    """Weak potential: (lam/s) Psi(alpha r/s) + lam s^2 t."""
    x = params.x_of(r)
    return params.lam / params.s * shape.value(x) + params.lam * params.s**2 * params.t


def psi_prime(r: float, shape: WeakPotentialShape, params: ModelParams) -> float:
    x = params.x_of(r)
    return params.lam * params.alpha / params.s**2 * shape.deriv(x)


def psi_double_prime(r: float, shape: WeakPotentialShape, params: ModelParams) -> float:
    x = params.x_of(r)
    return params.lam * params.alpha**2 / params.s**3 * shape.deriv2(x)


def _deriv_or_singular(shape: WeakPotentialShape, x: float, r: float) -> float:
    d = shape.deriv(x)
    if _is_singular(x, d, shape.deriv2(x)):
        raise ExtremumSingularity(r)
    return d


def astar(r: float, shape: WeakPotentialShape, params: ModelParams) -> float:
    """3-potential A* = psi''/psi' + 2/r; diverges at extrema of Psi.

    For the single-quark profile this reduces to 2/r - 4 alpha/(s + alpha r),
    and asymptotically r*A* -> -2 for every admissible shape.
    """
    if r <= 0.0:
        raise ValueError("radius must be positive")
    x = params.x_of(r)
    d = _deriv_or_singular(shape, x, r)
    return params.alpha / params.s * shape.deriv2(x) / d + 2.0 / r


def confining_profile(x: float, shape: WeakPotentialShape, coeffs: ConfiningCoefficients) -> float:
    """Dimensionless well W(x); phi_k = (k alpha / s) W."""
    d = shape.deriv(x)
    if _is_singular(x, d, shape.deriv2(x)):
        raise ExtremumSingularity(x)
    return (coeffs.K * shape.value(x) + coeffs.P) / (x * x * d) + coeffs.C / (x * x * abs(d))


def confining_profile_deriv(x: float, shape: WeakPotentialShape, coeffs: ConfiningCoefficients) -> float:
    """dW/dx, analytic.  Within a region sgn(Psi') is constant, so the C
    term is differentiated with the local sign frozen."""
    d = shape.deriv(x)
    d2 = shape.deriv2(x)
    if _is_singular(x, d, d2):
        raise ExtremumSingularity(x)
    num = coeffs.K * shape.value(x) + coeffs.P + coeffs.C * math.copysign(1.0, d)
    dnum = coeffs.K * shape.deriv(x)
    den = x * x * d
    dden = 2.0 * x * d + x * x * d2
    return (dnum * den - num * dden) / (den * den)


def phi_k(
    r: float,
    shape: WeakPotentialShape,
    params: ModelParams,
    coeffs: ConfiningCoefficients,
) -> float:
    """Confining potential at radius r (diverges at extrema of Psi)."""
    if r <= 0.0:
        raise ValueError("radius must be positive")
    x = params.x_of(r)
    try:
        w = confining_profile(x, shape, coeffs)
    except ExtremumSingularity:
        raise ExtremumSingularity(r) from None
    return params.k * params.alpha / params.s * w


def phi_k_dimensionless(
    r: float,
    shape: WeakPotentialShape,
    params: ModelParams,
    coeffs: ConfiningCoefficients,
) -> float:
    """phi_k stripped of its amplitude: phi_k * s^3 / k (units length^2)."""
    return phi_k(r, shape, params, coeffs) * params.s**3 / params.k


def phi_p(r: float, params: ModelParams) -> float:
    """Particular potential b alpha^3 r^2/(s+alpha r)^3; r*phi_p -> b at infinity."""
    if r < 0.0:
        raise ValueError("radius must be nonnegative")
    return params.b * params.alpha**3 * r * r / (params.s + params.alpha * r) ** 3


def phi_p_prime(r: float, params: ModelParams) -> float:
    a, s = params.alpha, params.s
    return params.b * a**3 * r * (2.0 * s - a * r) / (s + a * r) ** 4


class CurrentDensity(NamedTuple):
    """Smooth part of the external 3-current density plus the point weight
    sitting at the origin."""

    smooth: float
    delta_weight: float


def external_current_density(r: float, params: ModelParams) -> CurrentDensity:
    """External 3-current density of the single-quark source.

    smooth(r) = 2 sqrt(2) q alpha^2 s (s - alpha r) / (pi r^2 (s + alpha r)^3),
    which changes sign at alpha r = s and integrates to zero over all space;
    the delta weight -2 sqrt(2) q carries the entire total current, matching
    -gamma^2 q/sqrt(2) at gamma = -2.
    """
    if r <= 0.0:
        raise ValueError("radius must be positive for the smooth part")
    a, s, q = params.alpha, params.s, params.q
    smooth = 2.0 * _SQRT2 * q * a * a * s * (s - a * r) / (math.pi * r * r * (s + a * r) ** 3)
    return CurrentDensity(smooth=smooth, delta_weight=-2.0 * _SQRT2 * q)


@dataclass(frozen=True)
class Region:
    """Radial interval between consecutive divergences of phi_k."""

    r_lo: float
    r_hi: float
    x_lo: float
    x_hi: float
    psi_prime_sign: int


@dataclass(frozen=True)
class RegionDecomposition:
    """Partition of (0, inf) at the extrema of Psi; one quark per region."""

    regions: tuple[Region, ...]
    extrema_x: tuple[float, ...]
    extrema_r: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.regions)


def decompose_regions(
    shape: WeakPotentialShape,
    params: ModelParams,
    x_scan: tuple[float, float] = (1e-4, 1e4),
    n_scan: int = 4000,
    tol: Tolerance = DEFAULT_TOL,
) -> RegionDecomposition:
    """Locate the extrema of Psi by a sign scan of Psi' refined with
    bracketed root finding, and cut (0, inf) there.

    Degenerate extrema (Psi' and Psi'' both ~ 0) are rejected: the region
    structure requires simple extrema.
    """
    xs = np.geomspace(x_scan[0], x_scan[1], n_scan)
    d = np.array([shape.deriv(x) for x in xs])
    roots: list[float] = []
    for i in range(len(xs) - 1):
        a, b = d[i], d[i + 1]
        if a == 0.0:
            roots.append(float(xs[i]))
            continue
        if a * b < 0.0:
            roots.append(numerics.find_root(shape.deriv, float(xs[i]), float(xs[i + 1]), tol))
    # de-duplicate near-coincident roots from grid boundaries
    extrema: list[float] = []
    for x0 in roots:
        if not extrema or abs(x0 - extrema[-1]) > 1e-9 * max(1.0, x0):
            extrema.append(x0)
    for x0 in extrema:
        curv = shape.deriv2(x0)
        scale = abs(shape.deriv(2.0 * x0)) + abs(shape.deriv(0.5 * x0))
        if abs(curv) * max(x0, 1.0) < 1e-9 * max(scale, 1e-30):
            raise DegenerateExtremum(f"Psi' and Psi'' both vanish near x={x0}")

    bounds = [0.0] + extrema + [math.inf]
    regions = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if math.isinf(hi):
            probe = max(2.0 * lo, 1.0)
        elif lo == 0.0:
            probe = 0.5 * hi
        else:
            probe = math.sqrt(lo * hi)
        sign = 1 if shape.deriv(probe) > 0.0 else -1
        regions.append(
            Region(
                r_lo=params.r_of(lo) if lo > 0.0 else 0.0,
                r_hi=params.r_of(hi) if math.isfinite(hi) else math.inf,
                x_lo=lo,
                x_hi=hi,
                psi_prime_sign=sign,
            )
        )
    return RegionDecomposition(
        regions=tuple(regions),
        extrema_x=tuple(extrema),
        extrema_r=tuple(params.r_of(x) for x in extrema),
    )


@dataclass(frozen=True)
class AsymptoticCheck:
    name: str
    measured: float
    expected: float
    ok: bool


@dataclass(frozen=True)
class AsymptoticsReport:
    checks: tuple[AsymptoticCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _loglog_slope(f: Callable[[float], float], lo: float, hi: float, n: int = 12) -> float:
    xs = np.geomspace(lo, hi, n)
    ys = np.array([abs(f(x)) for x in xs])
    slope, _ = np.polyfit(np.log(xs), np.log(ys), 1)
    return float(slope)


def verify_asymptotics(
    shape: WeakPotentialShape,
    params: ModelParams,
    coeffs: ConfiningCoefficients,
    slope_tol: float = 0.05,
) -> AsymptoticsReport:
    """Check the limiting behavior of the confining potential and of A*.

    Near the origin the well grows like 1/r^(n+1) with Psi ~ r^n (n >= 1;
    the monotonic single-quark profile behaves as the n=1 case), far out it
    grows like +r^2 through its P/C pieces while the K piece alone decays
    like 1/r, and r*A* tends to n+1 at the origin and to -2 at infinity.
    """
    near = (1e-7, 1e-6)
    far = (1e6, 1e7)

    dpsi_slope = _loglog_slope(shape.deriv, *near)
    n = round(dpsi_slope) + 1

    def w_of(c: ConfiningCoefficients) -> Callable[[float], float]:
        return lambda x: confining_profile(x, shape, c)

    checks = []

    near_slope = _loglog_slope(w_of(coeffs), *near)
    checks.append(AsymptoticCheck("phi_k_near_slope", near_slope, -(n + 1),
                                  abs(near_slope + n + 1) <= slope_tol))

    far_expected = 2.0 if (coeffs.P != 0.0 or coeffs.C != 0.0) else -1.0
    far_slope = _loglog_slope(w_of(coeffs), *far)
    checks.append(AsymptoticCheck("phi_k_far_slope", far_slope, far_expected,
                                  abs(far_slope - far_expected) <= slope_tol))

    k_only = ConfiningCoefficients(K=coeffs.K if coeffs.K != 0.0 else 1.0, P=0.0, C=0.0)
    k_slope = _loglog_slope(w_of(k_only), *far)
    checks.append(AsymptoticCheck("phi_k_K_term_far_slope", k_slope, -1.0,
                                  abs(k_slope + 1.0) <= slope_tol))

    def r_astar(x: float) -> float:
        r = params.r_of(x)
        return r * astar(r, shape, params)

    ra_far = r_astar(far[1])
    checks.append(AsymptoticCheck("r_astar_far", ra_far, -2.0, abs(ra_far + 2.0) <= slope_tol))
    ra_near = r_astar(near[0])
    checks.append(AsymptoticCheck("r_astar_near", ra_near, float(n + 1),
                                  abs(ra_near - (n + 1)) <= slope_tol))

    return AsymptoticsReport(checks=tuple(checks))


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid for curve output."""

    kind: str = "log"
    lo: float = 1e-2
    hi: float = 1e2
    count: int = 200

    def __post_init__(self):
        if self.kind not in ("lin", "log"):
            raise ValueError("grid kind must be 'lin' or 'log'")
        if not (self.hi > self.lo > 0.0) and self.kind == "log":
            raise ValueError("log grid needs 0 < lo < hi")
        if self.count < 2:
            raise ValueError("count must be >= 2")

    def radii(self) -> list[float]:
        if self.kind == "log":
            return [float(r) for r in np.geomspace(self.lo, self.hi, self.count)]
        return [float(r) for r in np.linspace(self.lo, self.hi, self.count)]


class CurveRow(NamedTuple):
    r: float
    psi: float
    psi_prime: float
    astar: float
    phi_k: float
    phi_p: float
    singular: bool


def sample_at(
    r: float,
    shape: WeakPotentialShape,
    params: ModelParams,
    coeffs: ConfiningCoefficients,
) -> CurveRow:
    """One row of curve output; divergent radii are flagged and carry inf in
    the divergent columns instead of large floats."""
    p = psi(r, shape, params)
    dp = psi_prime(r, shape, params)
    pp = phi_p(r, params)
    try:
        a = astar(r, shape, params)
        w = phi_k(r, shape, params, coeffs)
        return CurveRow(r, p, dp, a, w, pp, False)
    except ExtremumSingularity:
        return CurveRow(r, p, dp, math.inf, math.inf, pp, True)


def sample_curves(
    shape: WeakPotentialShape,
    params: ModelParams,
    coeffs: ConfiningCoefficients,
    grid: GridSpec,
) -> list[CurveRow]:
    """Evaluate all potentials on a grid."""
    return [sample_at(r, shape, params, coeffs) for r in grid.radii()]
