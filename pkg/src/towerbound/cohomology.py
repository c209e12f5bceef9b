"""Cohomological representations below the middle degree.

A rep is labeled by its minimal Hodge bidegree (p0, q0); its Hodge support
walks the diagonal from there. Weights live on the compact part, so tuples
have length rank - 1. Exponents are stored doubled to stay integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DiscreteSeriesError


@dataclass(frozen=True)
class CohomRep:
    rank: int
    p0: int
    q0: int

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError("rank must be at least 2")
        if self.p0 < 0 or self.q0 < 0 or self.p0 + self.q0 > self.rank - 1:
            raise ValueError(
                f"bidegree ({self.p0}, {self.q0}) out of range for rank {self.rank}"
            )

    @property
    def degree(self) -> int:
        return self.p0 + self.q0

    def hodge_positions(self) -> frozenset:
        steps = self.rank - 1 - self.degree
        return frozenset(
            (self.p0 + k, self.q0 + k) for k in range(steps + 1)
        )


def reps_in_degree(rank: int, degree: int) -> tuple[CohomRep, ...]:
    if not 0 <= degree <= rank - 1:
        raise ValueError(f"degree {degree} out of range for rank {rank}")
    return tuple(CohomRep(rank, a, degree - a) for a in range(degree + 1))


def weight_tuple(rank: int, a: int, b: int) -> tuple[int, ...]:
    if a < 0 or b < 0 or a + b > rank - 1:
        raise ValueError(f"({a}, {b}) out of range for rank {rank}")
    return (1,) * b + (0,) * (rank - 1 - a - b) + (-1,) * a


def weyl_dimension(weight: tuple[int, ...]) -> int:
    if any(weight[i] < weight[i + 1] for i in range(len(weight) - 1)):
        raise ValueError("weight must be non-increasing")
    num = den = 1
    for i in range(len(weight)):
        for j in range(i + 1, len(weight)):
            num *= weight[i] - weight[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


def exterior_dim(rank: int, a: int, b: int) -> int:
    return math.comb(rank - 1, a) * math.comb(rank - 1, b)


def layer_weights(rank: int, a: int, b: int) -> tuple[tuple[int, ...], ...]:
    return tuple(weight_tuple(rank, a - k, b - k) for k in range(min(a, b) + 1))


def decay_exponent(rep: CohomRep) -> Fraction | float:
    if rep.degree == 0:
        return math.inf
    return Fraction(2 * (rep.rank - 1), rep.degree)


@dataclass(frozen=True)
class ParameterExponents:
    """Doubled exponents: the nontempered twisted pair plus the tempered
    ladder entries that survive the two exclusions."""

    twisted: tuple[int, int]
    tempered: tuple[int, ...]


def parameter_exponents(rep: CohomRep) -> ParameterExponents:
    rank, a, b = rep.rank, rep.p0, rep.q0
    degree = rep.degree
    if degree == rank - 1:
        raise DiscreteSeriesError(
            f"rep ({a}, {b}) of rank {rank} sits in the middle degree"
        )
    twist = b - a
    shift = rank - degree - 1
    twisted = (twist + shift, twist - shift)
    excluded = {rank - 1 - 2 * a, -(rank - 1) + 2 * b}
    tempered = tuple(
        j for j in range(rank - 1, -rank, -2) if j not in excluded
    )
    return ParameterExponents(twisted, tempered)


@dataclass(frozen=True)
class HodgeCheck:
    rank: int
    checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_hodge_lefschetz(rank: int) -> HodgeCheck:
    """Exact identities tying reps, weights, and Hodge supports together:
    row sums of exterior dims against the central binomial, the layer
    decomposition of each exterior dim into Weyl dimensions, and the
    tiling of the full Hodge square by the edge reps."""
    checked = 0
    failures: list[str] = []
    for degree in range(0, rank):
        row = sum(exterior_dim(rank, a, degree - a) for a in range(degree + 1))
        checked += 1
        if row != math.comb(2 * rank - 2, degree):
            failures.append(f"row sum off at degree {degree}")
    for a in range(rank):
        for b in range(rank - a):
            dims = [weyl_dimension(w) for w in layer_weights(rank, a, b)]
            checked += 1
            if any(d < 1 for d in dims):
                failures.append(f"non-positive layer dim at ({a}, {b})")
            if sum(dims) != exterior_dim(rank, a, b):
                failures.append(f"layer decomposition off at ({a}, {b})")
    seen: dict[tuple[int, int], CohomRep] = {}
    edge = [CohomRep(rank, a, 0) for a in range(rank)]
    edge += [CohomRep(rank, 0, b) for b in range(1, rank)]
    for rep in edge:
        for pos in rep.hodge_positions():
            checked += 1
            if pos in seen:
                failures.append(f"position {pos} hit twice")
            seen[pos] = rep
    if len(seen) != rank * rank:
        failures.append("edge reps do not tile the Hodge square")
    return HodgeCheck(rank, checked, tuple(failures))
