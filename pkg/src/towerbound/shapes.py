"""Weighted-pair shapes and their growth exponents.

A shape is a multiset of (size, depth) pairs whose size*depth products sum
to a fixed total. A designation marks one pair as the leading one; the
exponents attached to a designated shape control how fast the associated
spaces grow with the congruence level. verify_shape_bounds sweeps every
admissible designation and confirms the growth exponent stays at or below
total*degree, except for two known one-off families that reach exactly
total*degree + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

_PAIR_KEY = lambda t: (t[0] * t[1], t[0], t[1])


def _canon(pairs) -> tuple[tuple[int, int], ...]:
    out = tuple(sorted(((int(n), int(m)) for n, m in pairs), key=_PAIR_KEY, reverse=True))
    for n, m in out:
        if n < 1 or m < 1:
            raise ValueError(f"pair ({n}, {m}) must have positive entries")
    return out


@dataclass(frozen=True)
class Shape:
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, *pairs) -> "Shape":
        canon = _canon(pairs)
        if not canon:
            raise ValueError("shape needs at least one pair")
        return cls(canon)

    @property
    def total(self) -> int:
        return sum(n * m for n, m in self.pairs)


@dataclass(frozen=True)
class DesignatedShape:
    first: tuple[int, int]
    rest: tuple[tuple[int, int], ...]

    @property
    def shape(self) -> Shape:
        return Shape.of(self.first, *self.rest)

    @property
    def total(self) -> int:
        n, m = self.first
        return n * m + sum(a * b for a, b in self.rest)


@lru_cache(maxsize=32)
def enumerate_shapes(total: int) -> tuple[Shape, ...]:
    if total < 1:
        raise ValueError("total must be positive")
    types = sorted(
        ((n, m) for n in range(1, total + 1) for m in range(1, total // n + 1)),
        key=_PAIR_KEY,
        reverse=True,
    )
    out: list[Shape] = []

    def rec(idx: int, remaining: int, acc: list) -> None:
        if remaining == 0:
            out.append(Shape(tuple(acc)))
            return
        for i in range(idx, len(types)):
            n, m = types[i]
            if n * m <= remaining:
                acc.append((n, m))
                rec(i, remaining - n * m, acc)
                acc.pop()

    rec(0, total, [])
    return tuple(out)


def designations(shape: Shape) -> tuple[DesignatedShape, ...]:
    out = []
    for pick in sorted(set(shape.pairs), key=_PAIR_KEY, reverse=True):
        rest = list(shape.pairs)
        rest.remove(pick)
        out.append(DesignatedShape(pick, tuple(rest)))
    return tuple(out)


def admissible_designations(shape: Shape, degree: int) -> tuple[DesignatedShape, ...]:
    """Designations whose leading size is at least total - degree."""
    floor = shape.total - degree
    return tuple(d for d in designations(shape) if d.first[0] >= floor)


@dataclass(frozen=True)
class ExponentProfile:
    """Exponents of the congruence parameter in the growth estimates.

    level_exp and factor_count describe the leading term for the whole
    shape; bound_exp folds in the dimension sum. The designated_* variants
    replace the leading pair's contribution by the sharper designated
    estimate, which exists only for leading depth 1, 2, or 3; depth 3
    carries an extra arbitrarily small positive exponent, flagged by
    has_epsilon and excluded from the integer value.
    """

    level_exp: int
    bound_exp: int
    factor_count: int
    designated_level_exp: int | None
    designated_bound_exp: int | None
    designated_factor_count: int | None
    net_factor: int | None
    has_epsilon: bool


def exponent_profile(ds: DesignatedShape) -> ExponentProfile:
    n1, m1 = ds.first
    total = ds.total
    all_pairs = (ds.first,) + ds.rest
    level = comb(total, 2) - sum(n * comb(m, 2) for n, m in all_pairs)
    dim_sum = sum(n * m * m for n, m in all_pairs)
    factors = sum(n for n, _ in all_pairs) - 1
    rest_sizes = sum(n for n, _ in ds.rest)
    rest_dim = sum(n * m * m for n, m in ds.rest)
    if m1 == 1:
        dlevel = level - comb(n1, 2)
        dfactors = rest_sizes
    elif m1 == 2:
        dlevel = level + (n1 - 1)
        dfactors = 2 * (n1 - 1) + rest_sizes
    elif m1 == 3:
        dlevel = level + 4 * (n1 - 1)
        dfactors = (n1 - 1) + rest_sizes
    else:
        return ExponentProfile(
            level, level + dim_sum, factors, None, None, None, None, False
        )
    dbound = dlevel + m1 * m1 + rest_dim
    net = dfactors - 1 - rest_sizes
    return ExponentProfile(
        level,
        level + dim_sum,
        factors,
        dlevel,
        dbound,
        dfactors,
        net,
        m1 == 3,
    )


def shape_bound_value(ds: DesignatedShape) -> tuple[int, bool]:
    """Integer part of the growth exponent the sweep compares to
    total*degree, and whether an epsilon rides on top."""
    prof = exponent_profile(ds)
    if ds.first[1] >= 4:
        return prof.bound_exp, False
    return prof.designated_bound_exp, prof.has_epsilon


def exceptional_family(ds: DesignatedShape, degree: int) -> int:
    """0 for ordinary designations, 1 or 2 for the families that exceed
    total*degree by exactly one."""
    total = ds.total
    if ds.first == (total - degree, 1):
        if degree == 0 and ds.rest == ():
            return 1
        if degree >= 1 and ds.rest == ((1, degree),):
            return 1
    if (total, degree) == (4, 2) and ds.first == (2, 2) and ds.rest == ():
        return 2
    return 0


def expected_witnesses(total: int, degree: int) -> tuple[DesignatedShape, ...]:
    rest = ((1, degree),) if degree >= 1 else ()
    out = [DesignatedShape((total - degree, 1), rest)]
    if (total, degree) == (4, 2):
        out.append(DesignatedShape((2, 2), ()))
    return tuple(out)


@dataclass(frozen=True)
class SweepRecord:
    total: int
    degree: int
    designated: DesignatedShape
    value: int
    has_epsilon: bool
    family: int


@dataclass(frozen=True)
class ShapeSweep:
    max_total: int
    checked: int
    violations: tuple[SweepRecord, ...]
    witnesses: tuple[SweepRecord, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_shape_bounds(max_total: int) -> ShapeSweep:
    """Check every admissible designated shape with degree at most
    total - 2 against the total*degree ceiling.

    Designated sizes of 1 only become admissible at degree total - 1, where
    the ceiling genuinely fails, so that degree stays out of scope.
    """
    checked = 0
    violations: list[SweepRecord] = []
    witnesses: list[SweepRecord] = []
    for total in range(2, max_total + 1):
        for shape in enumerate_shapes(total):
            desigs = designations(shape)
            for degree in range(0, total - 1):
                floor = total - degree
                limit = total * degree
                for ds in desigs:
                    if ds.first[0] < floor:
                        continue
                    value, eps = shape_bound_value(ds)
                    family = exceptional_family(ds, degree)
                    rec = SweepRecord(total, degree, ds, value, eps, family)
                    checked += 1
                    if family:
                        witnesses.append(rec)
                        if value != limit + 1:
                            violations.append(rec)
                    elif value > limit:
                        violations.append(rec)
    return ShapeSweep(max_total, checked, tuple(violations), tuple(witnesses))
