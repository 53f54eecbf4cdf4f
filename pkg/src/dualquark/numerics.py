"""Shared 1-D numerical kernel.

Adaptive quadrature on finite and semi-infinite intervals, bracketed root
finding, bounded scalar minimization, and Richardson-extrapolated central
differences.  Every routine is a pure function of its arguments and carries
an explicit tolerance contract, so results are deterministic and safe to
evaluate concurrently.

Semi-infinite integrals are mapped onto [0, 1) with the rational change of
variable u = (r - lo) / (scale + r - lo); all integrands in this package are
rational in (scale + r), so the transformed integrand is smooth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.optimize import minimize_scalar as _scipy_minimize_scalar


class NumericsError(Exception):
    """Base class for failures of the numerical kernel."""


class NonFiniteSample(NumericsError):
    """A sampled function value was nan or inf.

    The offending abscissa is stored in ``where``.
    """

    def __init__(self, where: float, value: float):
        self.where = where
        self.value = value
        super().__init__(f"non-finite sample {value!r} at r={where!r}")


class BracketError(NumericsError):
    """The supplied bracket does not enclose a root."""


class BudgetExhausted(NumericsError):
    """The evaluation budget ran out before the tolerance was met."""


class StepUnderflow(NumericsError):
    """The finite-difference step underflowed relative to the base point."""


@dataclass(frozen=True)
class Tolerance:
    """Accuracy contract: relative target, absolute floor, evaluation budget."""

    rel: float = 1e-10
    abs: float = 1e-14
    max_evals: int = 10**6

    def __post_init__(self):
        if not (self.rel > 0.0):
            raise ValueError("rel tolerance must be > 0")
        if self.abs < 0.0:
            raise ValueError("abs tolerance must be >= 0")
        if self.max_evals < 1:
            raise ValueError("max_evals must be >= 1")

    def bound(self, value: float) -> float:
        return max(self.abs, self.rel * abs(value))


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class QuadResult:
    """Quadrature estimate with its reported error bound.

    ``converged`` is False when the estimate came back with an error bound
    above the requested tolerance (budget exhausted); the value is still the
    best available estimate.
    """

    value: float
    error: float
    converged: bool
    message: str = ""

    def __float__(self) -> float:
        return self.value


def _checked(f: Callable[[float], float]) -> Callable[[float], float]:
    def wrapped(r: float) -> float:
        v = f(r)
        if not math.isfinite(v):
            raise NonFiniteSample(r, v)
        return v

    return wrapped


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
    scale: float = 1.0,
) -> QuadResult:
    """Integrate f over (lo, hi); hi may be math.inf.

    Semi-infinite intervals are transformed with u = (r-lo)/(scale+r-lo);
    pick ``scale`` near the natural length of the integrand (e.g. s/alpha)
    to keep the transformed integrand well resolved.

    Raises NonFiniteSample if the integrand returns nan/inf at a sampled
    radius.  A result that misses the tolerance is returned flagged, not
    raised.
    """
    if scale <= 0.0:
        raise ValueError("scale must be > 0")
    g = _checked(f)
    # 21-point Gauss-Kronrod per subinterval.
    limit = max(10, int(tol.max_evals) // 21)
    if math.isinf(hi):
        def transformed(u: float) -> float:
            w = 1.0 - u
            r = lo + scale * u / w
            return g(r) * scale / (w * w)

        value, err = quad(transformed, 0.0, 1.0, epsabs=tol.abs, epsrel=tol.rel, limit=limit)
    else:
        value, err = quad(g, lo, hi, epsabs=tol.abs, epsrel=tol.rel, limit=limit)
    ok = err <= tol.bound(value) or err <= 10 * tol.abs
    msg = "" if ok else "error bound above tolerance (budget exhausted)"
    return QuadResult(value=value, error=err, converged=ok, message=msg)


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Root of f inside [lo, hi]; requires a sign change over the bracket.

    Brent's method: superlinear when the function cooperates, bisection
    fallback guarantees termination.
    """
    g = _checked(f)
    flo, fhi = g(lo), g(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketError(f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")
    maxiter = min(200, max(10, tol.max_evals))
    root, info = brentq(
        g, lo, hi,
        xtol=max(tol.abs, 1e-300),
        rtol=max(tol.rel, 1e-15),
        maxiter=maxiter,
        full_output=True,
        disp=False,
    )
    if not info.converged:
        raise BudgetExhausted(f"root finder did not converge within {maxiter} iterations")
    return float(root)


@dataclass(frozen=True)
class MinimizeResult:
    """Bounded scalar minimum; ``interior`` is False for an endpoint minimum."""

    x: float
    value: float
    interior: bool


def minimize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
) -> MinimizeResult:
    """Minimum of a unimodal f on [lo, hi].

    An endpoint minimum is returned flagged (interior=False): for the
    potentials in this package it signals a mis-bracketed region rather
    than a genuine interior well.
    """
    if not (hi > lo):
        raise ValueError("need hi > lo")
    g = _checked(f)
    xatol = max(tol.abs, tol.rel * max(abs(lo), abs(hi), 1.0))
    res = _scipy_minimize_scalar(
        g,
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": xatol, "maxiter": min(1000, tol.max_evals)},
    )
    x = float(res.x)
    val = float(res.fun)
    edge = 4.0 * xatol
    interior = (x - lo) > edge and (hi - x) > edge
    # The bounded search never samples the exact endpoints; check them.
    for xe in (lo, hi):
        ve = g(xe)
        if ve < val:
            x, val, interior = xe, ve, False
    return MinimizeResult(x=x, value=val, interior=interior)


_RICHARDSON_LEVELS = 8
_STEP_SHRINK = 2.0


def differentiate(
    f: Callable[[float], float],
    r: float,
    order: int = 1,
    tol: Tolerance = DEFAULT_TOL,
    h0: float | None = None,
) -> float:
    """First or second derivative of f at r.

    Central differences on a shrinking step ladder, combined by Richardson
    extrapolation; the ladder stops when the error estimate meets the
    tolerance.  ``h0`` overrides the initial step (default 0.05*max(|r|,1)).
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    g = _checked(f)
    h = 0.05 * max(abs(r), 1.0) if h0 is None else float(h0)
    if h <= abs(r) * 1e-14:
        raise StepUnderflow(f"step {h} underflows at r={r}")

    def stencil(step: float) -> float:
        if order == 1:
            return (g(r + step) - g(r - step)) / (2.0 * step)
        return (g(r + step) - 2.0 * g(r) + g(r - step)) / (step * step)

    table = [[stencil(h)]]
    best = table[0][0]
    best_err = math.inf
    for i in range(1, _RICHARDSON_LEVELS):
        h /= _STEP_SHRINK
        if h <= abs(r) * 1e-14:
            break
        row = [stencil(h)]
        fac = 1.0
        for j in range(1, i + 1):
            fac *= _STEP_SHRINK**2
            row.append((fac * row[j - 1] - table[i - 1][j - 1]) / (fac - 1.0))
        table.append(row)
        err = abs(row[-1] - row[-2]) + abs(row[-1] - table[i - 1][-1])
        if err <= best_err:
            best, best_err = row[-1], err
        if best_err <= tol.bound(best):
            break
    return best
