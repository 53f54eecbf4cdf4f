"""q-pair bookkeeping for hadron composition.

Each quark is a product of two particular-solution factors, and each factor
carries a seed charge q of +1/3 or -1/3.  The ordered pair of seeds is the
quark's q-pair; order matters, so there are exactly four: (+,+), (-,-),
(+,-), (-,+).  A multiset of q-pairs can bind into a hadron exactly when
the individual q values sum to zero (q-neutrality), the analogue of color
neutrality: three pairs for baryons, two for mesons, and the zero-sum
single pairs (+,-), (-,+) for hypothetical single-quark states.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

Q_PLUS = Fraction(1, 3)
Q_MINUS = Fraction(-1, 3)


@dataclass(frozen=True, order=True)
class QPair:
    """Ordered pair of seed charges, each +-1/3."""

    first: Fraction
    second: Fraction

    def __post_init__(self):
        for v in (self.first, self.second):
            if v not in (Q_PLUS, Q_MINUS):
                raise ValueError(f"seed charge must be +-1/3, got {v}")

    @property
    def q_sum(self) -> Fraction:
        return self.first + self.second

    def render(self) -> str:
        sign = {Q_PLUS: "+", Q_MINUS: "-"}
        return f"({sign[self.first]},{sign[self.second]})"

    @classmethod
    def parse(cls, text: str) -> "QPair":
        body = text.strip().removeprefix("(").removesuffix(")")
        a, b = (part.strip() for part in body.split(","))
        lookup = {"+": Q_PLUS, "-": Q_MINUS}
        return cls(lookup[a], lookup[b])


# Canonical order: the two like-signed pairs, then the two mixed ones.
QPAIRS: tuple[QPair, ...] = (
    QPair(Q_PLUS, Q_PLUS),
    QPair(Q_MINUS, Q_MINUS),
    QPair(Q_PLUS, Q_MINUS),
    QPair(Q_MINUS, Q_PLUS),
)

FLAVOR_CHARGES = {
    "u": Fraction(2, 3),
    "d": Fraction(-1, 3),
}


@dataclass(frozen=True)
class QuarkLabel:
    """A flavor tag with its charge and q-pair, rendered like ``u(+,-)``."""

    flavor: str
    charge: Fraction
    pair: QPair

    def render(self) -> str:
        return f"{self.flavor}{self.pair.render()}"

    @classmethod
    def parse(cls, text: str) -> "QuarkLabel":
        flavor, _, rest = text.partition("(")
        if flavor not in FLAVOR_CHARGES:
            raise ValueError(f"unknown flavor {flavor!r}")
        return cls(flavor=flavor, charge=FLAVOR_CHARGES[flavor], pair=QPair.parse("(" + rest))


@dataclass(frozen=True)
class Composition:
    """Multiset of q-pairs (stored canonically sorted); 1 to 4 members."""

    pairs: tuple[QPair, ...]

    def __post_init__(self):
        if not 1 <= len(self.pairs) <= 4:
            raise ValueError("compositions hold 1 to 4 q-pairs")
        ordered = tuple(sorted(self.pairs, key=QPAIRS.index))
        object.__setattr__(self, "pairs", ordered)

    @property
    def kind(self) -> str:
        return {3: "baryon", 2: "meson"}.get(len(self.pairs), "other")

    @property
    def q_total(self) -> Fraction:
        return sum((p.q_sum for p in self.pairs), Fraction(0))

    def render(self) -> str:
        return "[" + ", ".join(p.render() for p in self.pairs) + "]"


def is_q_neutral(c: Composition) -> bool:
    """True when the individual q values across all pairs sum to zero;
    the necessary and sufficient binding condition."""
    return c.q_total == 0


def enumerate_compositions(size: int, neutral_only: bool = False) -> list[Composition]:
    """All multisets of q-pairs of the given size, in canonical order."""
    if not 1 <= size <= 4:
        raise ValueError("size must be 1..4")
    out = []
    for combo in itertools.combinations_with_replacement(QPAIRS, size):
        c = Composition(pairs=combo)
        if neutral_only and not is_q_neutral(c):
            continue
        out.append(c)
    return out


def proton_configurations() -> list[tuple[QuarkLabel, ...]]:
    """The two q-neutral u-u-d assignments the proton flips between.

    The u and d charges are the two roots of the charge quadratic at
    gamma^2 = 4, q = +-1/3 (+2/3 and -1/3).
    """
    from .charges import ChargeProblem, solve_coulomb_charge

    b_hi, b_lo = solve_coulomb_charge(ChargeProblem(q=1.0 / 3.0, gamma=-2.0))
    u_charge = Fraction(b_hi).limit_denominator(3)
    d_charge = Fraction(b_lo).limit_denominator(3)
    pp, mm, pm, mp = QPAIRS

    def u(pair: QPair) -> QuarkLabel:
        return QuarkLabel("u", u_charge, pair)

    def d(pair: QPair) -> QuarkLabel:
        return QuarkLabel("d", d_charge, pair)

    return [
        (u(mm), u(pm), d(pp)),
        (u(mp), u(pp), d(mm)),
    ]
