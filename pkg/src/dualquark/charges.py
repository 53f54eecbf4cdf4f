"""Coulomb-charge spectrum of the static radial null condition.

The asymptotic fields of a seed charge q are E = b/r^2, phi = b/r and a
3-potential A = gamma*q/(sqrt(2) r).  Imposing the null condition
-E^2 + (A^2 - phi^2)^2 / q^2 = 0 turns the Coulomb amplitude b into a root
of the quadratic

    b^2 -+ q b - gamma^2 q^2 / 2 = 0,

one sign per branch.  The minus branch gives b = q [1 +- sqrt(1+2 gamma^2)]/2;
the plus branch is the same spectrum negated (q -> -q).  gamma^2 = 4 with
q = +-1/3 yields the familiar +-2/3, -+1/3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_SQRT2 = math.sqrt(2.0)

MINUS_BRANCH = "minus"
PLUS_BRANCH = "plus"


class GammaOneError(ValueError):
    """gamma = 1 collapses the two power-law solutions into one.

    The second solution is logarithmic and deliberately unsupported; reject
    instead of silently switching branch.
    """


@dataclass(frozen=True)
class ChargeProblem:
    """Inputs of the charge quadratic.

    q: seed charge (units of e).  gamma: dimensionless exponent of the
    confining branch r**(-gamma); confinement requires gamma < 0.  The sign
    convention of the quadratic is chosen by ``branch``.
    """

    q: float
    gamma: float
    branch: str = MINUS_BRANCH

    def __post_init__(self):
        if self.q == 0.0:
            raise ValueError("seed charge q must be nonzero")
        if not math.isfinite(self.gamma):
            raise ValueError("gamma must be finite")
        if self.gamma == 1.0:
            raise GammaOneError("gamma = 1 (logarithmic case) is rejected")
        if self.branch not in (MINUS_BRANCH, PLUS_BRANCH):
            raise ValueError(f"unknown branch {self.branch!r}")


def solve_coulomb_charge(p: ChargeProblem) -> tuple[float, float]:
    """Both roots of the charge quadratic, (plus-radical, minus-radical).

    Minus branch: b = q [1 +- sqrt(1 + 2 gamma^2)] / 2.  Plus-branch roots
    are the minus-branch roots negated.
    """
    radical = math.sqrt(1.0 + 2.0 * p.gamma * p.gamma)
    b_hi = p.q * (1.0 + radical) / 2.0
    b_lo = p.q * (1.0 - radical) / 2.0
    if p.branch == PLUS_BRANCH:
        return (-b_hi, -b_lo)
    return (b_hi, b_lo)


@dataclass(frozen=True)
class ChargeRow:
    """One (q, branch) entry of the fractional-charge table."""

    q: float
    branch: str
    roots: tuple[float, float]


def enumerate_fractional_charges(gamma_sq: float, q_values: list[float]) -> list[ChargeRow]:
    """Charge spectrum for each q, both quadratic branches.

    Plus-branch rows are exactly the minus-branch rows negated.
    """
    if gamma_sq < 0.0:
        raise ValueError("gamma_sq must be >= 0")
    gamma = -math.sqrt(gamma_sq)  # sign is irrelevant to the roots
    rows = []
    for q in q_values:
        for branch in (MINUS_BRANCH, PLUS_BRANCH):
            roots = solve_coulomb_charge(ChargeProblem(q=q, gamma=gamma, branch=branch))
            rows.append(ChargeRow(q=q, branch=branch, roots=roots))
    return rows


def external_charge_total(b: float, gamma: float) -> float:
    """Total charge of the external source feeding the Coulomb amplitude b.

    By the divergence theorem this is (1 - gamma) b; it vanishes at
    gamma = 1 for any b.
    """
    return (1.0 - gamma) * b


def external_current_total(q: float, gamma: float) -> float:
    """Total 3-current of the source: -gamma^2 q / sqrt(2)."""
    if q == 0.0:
        raise ValueError("seed charge q must be nonzero")
    return -gamma * gamma * q / _SQRT2


def null_residual(r: float, b: float, q: float, gamma: float) -> float:
    """Residual of the null condition for the asymptotic fields at radius r.

    Evaluates -E^2 + (A^2 - phi^2)^2 / q^2 with E = b/r^2, phi = b/r,
    A = gamma q / (sqrt(2) r), which collapses to

        r^-4 [ (gamma^2 q^2/2 - b^2)^2 / q^2 - b^2 ].

    Identically zero in r exactly when b is a root of the charge quadratic.
    """
    if r <= 0.0:
        raise ValueError("radius must be positive")
    if q == 0.0:
        raise ValueError("seed charge q must be nonzero")
    bracket = gamma * gamma * q * q / 2.0 - b * b
    return (bracket * bracket / (q * q) - b * b) / r**4
