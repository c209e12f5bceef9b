"""Fixed-vector dimension bounds under principal congruence subgroups.

The 2x2 story reduces to counting orbits of norm-one units on quadratic
residue rings; the 3x3 story splits into an induced case (exact flag
indices) and two cuspidal cases driven by cocharacter candidate sets and
double coset counts. Every closed form here has an enumeration twin.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cache import Cache
from .errors import InfeasibleError
from .matgroups import (
    ValuationConstraint,
    constrained_subgroup_order,
    double_coset_count,
    gl_order,
    matmul,
    orbit_count,
    parabolic_index,
)
from .residue import (
    ExtensionModel,
    PrimePower,
    QuotientRing,
    generating_subset,
    norm_one_subgroup,
    require_prime,
    smallest_nonresidue,
)


@dataclass(frozen=True)
class BoundCheck:
    label: str
    checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


# ---------------------------------------------------------------------------
# 2x2: orbit counts on quadratic residue rings


def gl2_orbit_formula(kind: str, p: int, level: int) -> int:
    """Orbits of norm-one units on the quadratic residue ring at the given
    maximal-ideal level."""
    require_prime(p, odd=True)
    if level < 0:
        raise ValueError("level must be non-negative")
    if kind == "unramified":
        return p**level
    if kind == "ramified":
        return (p ** -(-level // 2) + p ** (level // 2)) // 2
    raise ValueError(f"unknown kind {kind!r}")


def gl2_orbit_bruteforce(
    kind: str,
    p: int,
    level: int,
    *,
    unit: int | None = 1,
    guard: int = 2**28,
) -> int:
    if level == 0:
        return 1
    if kind == "unramified":
        model = ExtensionModel.unramified_quadratic(p)
    elif kind == "ramified":
        u = smallest_nonresidue(p) if unit is None else unit
        model = ExtensionModel.ramified_quadratic(p, unit=u)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    ring = QuotientRing(model, level)
    ones = norm_one_subgroup(model, level, guard=guard)
    gens = generating_subset(ones)
    space = ring.elements(guard)
    return orbit_count(gens, space, "scalar-mult", guard=guard)


def gl2_supercuspidal_bound(p: int, n: int) -> int:
    """Cap on fixed vectors at level n; equals q^n (1 + 1/q)."""
    require_prime(p, odd=True)
    if n < 1:
        raise ValueError("level must be positive")
    return p**n + p ** (n - 1)


def gl2_component_dims(kind: str, p: int, n: int) -> tuple[int, int]:
    """Orbit-count caps for the two components the representation splits
    into: opposite conductor parities in the unramified case, the two
    halves of one odd level in the ramified case."""
    if kind == "unramified":
        return (
            gl2_orbit_formula("unramified", p, n),
            gl2_orbit_formula("unramified", p, n - 1),
        )
    if kind == "ramified":
        half = gl2_orbit_formula("ramified", p, 2 * n - 1)
        return (half, half)
    raise ValueError(f"unknown kind {kind!r}")


def verify_gl2_invariants(p: int, max_level: int) -> BoundCheck:
    checked = 0
    failures: list[str] = []
    for n in range(1, max_level + 1):
        bound = gl2_supercuspidal_bound(p, n)
        checked += 1
        if bound != Fraction(p) ** n * (1 + Fraction(1, p)):
            failures.append(f"bound mismatch at n={n}")
        for kind in ("unramified", "ramified"):
            checked += 1
            if sum(gl2_component_dims(kind, p, n)) > bound:
                failures.append(f"{kind} components exceed bound at n={n}")
    return BoundCheck(f"gl2-invariants p={p}", checked, tuple(failures))


def verify_gl2_orbits(
    p: int,
    *,
    max_unramified: int,
    max_ramified: int,
    guard: int = 2**28,
) -> BoundCheck:
    """Brute-force orbit sweeps against the closed forms, covering both
    ramified unit classes."""
    checked = 0
    failures: list[str] = []
    for level in range(1, max_unramified + 1):
        checked += 1
        want = gl2_orbit_formula("unramified", p, level)
        got = gl2_orbit_bruteforce("unramified", p, level, guard=guard)
        if got != want:
            failures.append(f"unramified level {level}: {got} != {want}")
    for level in range(1, max_ramified + 1):
        want = gl2_orbit_formula("ramified", p, level)
        for unit in (1, None):
            checked += 1
            got = gl2_orbit_bruteforce(
                "ramified", p, level, unit=unit, guard=guard
            )
            if got != want:
                failures.append(
                    f"ramified level {level} unit {unit}: {got} != {want}"
                )
    return BoundCheck(f"gl2-orbits p={p}", checked, tuple(failures))


# ---------------------------------------------------------------------------
# 3x3: uniform bound and its cases

GL3_CASES = ("borel", "gl2-gl1", "cuspidal-unramified", "cuspidal-ramified")


def gl3_uniform_bound(p: int, n: int) -> Fraction:
    """9 n^2 q^{4n} (1 + 1/q)^3, covering every irreducible at level n."""
    require_prime(p, odd=True, not3=True)
    q = Fraction(p)
    return 9 * n * n * q ** (4 * n) * (1 + 1 / q) ** 3


def gl3_case_bound(case: str, p: int, n: int) -> Fraction:
    q = Fraction(p)
    pp = PrimePower(p, n)
    if case == "borel":
        return Fraction(parabolic_index(3, (1, 1, 1), pp))
    if case == "gl2-gl1":
        return Fraction(
            parabolic_index(3, (2, 1), pp) * gl2_supercuspidal_bound(p, n)
        )
    if case == "cuspidal-unramified":
        return n * n * q ** (4 * n) * (1 + 1 / q) ** 3
    if case == "cuspidal-ramified":
        return 9 * n * n * q ** (4 * n - 1) * (1 + 1 / q) ** 3
    raise ValueError(f"unknown case {case!r}")


def howe_dimension(case: str, p: int, j: int) -> int:
    """Dimension of the inducing representation at conductor j."""
    if case == "unramified":
        if j < 1:
            raise ValueError("conductor must be at least 1")
        if j == 1:
            return (p * p - 1) * (p - 1)
        return p ** (3 * j - 3) * (p - 1) * (p * p - 1)
    if case == "ramified":
        if j < 2 or j % 3 == 1:
            raise ValueError(f"conductor {j} cannot occur in the ramified case")
        return p ** (j - 2) * (p - 1) * (p - 1)
    raise ValueError(f"unknown case {case!r}")


def howe_unramified_bruteforce(p: int, *, guard: int = 2**20) -> int:
    """Independent value for the unramified conductor-2 dimension: index of
    the cubic-extension unit image inside the mod-p matrix group."""
    require_prime(p)
    if p**3 > guard:
        raise InfeasibleError("residue field too large")
    model = ExtensionModel.unramified_cubic(p)
    image = set()
    for coords in itertools.product(range(p), repeat=3):
        if coords == (0, 0, 0):
            continue
        rows = model.mult_matrix(coords)
        image.add(tuple(v % p for row in rows for v in row))
    assert len(image) == p**3 - 1
    for a in list(image)[:5]:
        for b in list(image)[:5]:
            assert matmul(a, b, 3, p) in image
    total = gl_order(3, PrimePower(p, 1))
    assert total % len(image) == 0
    return total // len(image)


def howe_ramified_bruteforce(p: int, *, guard: int = 2**20) -> int:
    """Independent value for the ramified conductor-2 dimension: cosets of
    scalars times lower unipotents inside mod-p lower triangular matrices."""
    require_prime(p)
    if (p - 1) ** 3 * p**3 > guard:
        raise InfeasibleError("residue field too large")
    units = range(1, p)
    full = range(p)
    lower = [
        (a, 0, 0, d, b, 0, e, f, c)
        for a in units
        for b in units
        for c in units
        for d in full
        for e in full
        for f in full
    ]
    sub = set()
    for a in units:
        for d in full:
            for e in full:
                for f in full:
                    sub.add(
                        (a, 0, 0, (a * d) % p, a, 0, (a * e) % p, (a * f) % p, a)
                    )
    for x in list(sub)[:5]:
        for y in list(sub)[:5]:
            assert matmul(x, y, 3, p) in sub
    visited: set[tuple[int, ...]] = set()
    count = 0
    for g in lower:
        if g in visited:
            continue
        count += 1
        for s in sub:
            visited.add(matmul(s, g, 3, p))
    assert count * len(sub) == len(lower)
    return count


# ---------------------------------------------------------------------------
# cocharacter candidates and double coset control


def cocharacter_candidates(
    case: str, n: int, j: int
) -> tuple[tuple[int, int, int], ...]:
    """Cocharacters whose stretch subgroups can support invariant vectors
    at level n for inducing conductor j."""
    if case == "unramified":
        if j < 1:
            raise ValueError("conductor must be at least 1")
        reach = n - j
        if reach < 0:
            return ()
        return tuple(
            (g1 + g2, g2, 0)
            for g1 in range(reach + 1)
            for g2 in range(reach + 1)
        )
    if case == "ramified":
        if j < 2 or j % 3 == 1:
            raise ValueError(f"conductor {j} cannot occur in the ramified case")
        i = j // 3
        cap = n - i - 1
        if cap < 0:
            return ()
        out = []
        span = range(-2 * cap - 1, 2 * cap + 2)
        for u in span:
            for v in span:
                if (u - v) % 3 != 0:
                    continue
                if j % 3 == 2:
                    if max(u, v, -(u + v) + 1) > cap:
                        continue
                else:
                    if max(-u, -v, u + v - 1) > cap:
                        continue
                mid = (v - u) // 3
                out.append((mid + u, mid, mid - v))
        return tuple(sorted(out, reverse=True))
    raise ValueError(f"unknown case {case!r}")


def cocharacter_constraint(case: str, lam: tuple[int, int, int]) -> ValuationConstraint:
    """Valuation floors cutting out the intersection of the stretched
    maximal (or Iwahori) subgroup with the standard one."""
    if case == "unramified":
        grid = [
            [max(lam[b] - lam[a], 0) for b in range(3)] for a in range(3)
        ]
    elif case == "ramified":
        grid = [
            [
                max(lam[b] - lam[a] + (1 if a < b else 0), 0)
                for b in range(3)
            ]
            for a in range(3)
        ]
    else:
        raise ValueError(f"unknown case {case!r}")
    return ValuationConstraint.from_grid(grid)


def coset_bound(case: str, p: int, n: int, j: int) -> Fraction:
    """Per-cocharacter cap on double cosets supporting invariant vectors."""
    q = Fraction(p)
    cube = (1 + 1 / q) ** 3
    if case == "unramified":
        if not 1 <= j <= n:
            raise ValueError(f"conductor {j} out of range at level {n}")
        return q ** (4 * n - 4 * j) * cube
    if case == "ramified":
        if j < 2 or j % 3 == 1:
            raise ValueError(f"conductor {j} cannot occur in the ramified case")
        return q ** (3 * n - j + j // 3) * cube
    raise ValueError(f"unknown case {case!r}")


def lower_witness_constraint(n: int, j: int) -> ValuationConstraint:
    """Subgroup sitting inside every admissible stretch subgroup at
    conductor j; its order gives the floor q^{5n+4j}(1-1/q)^3.

    With an active floor the unit diagonal is forced by invertibility, so
    the flag just names the shape; at j = n no floor is active and the flag
    would carve out a non-subgroup, so the witness is the full group."""
    if not 1 <= j <= n:
        raise ValueError(f"conductor {j} out of range at level {n}")
    return ValuationConstraint.from_grid(
        [[0, 0, 0], [n - j, 0, 0], [2 * n - 2 * j, n - j, 0]],
        unit_diagonal=j < n,
    )


@dataclass(frozen=True)
class CosetRecord:
    case: str
    level: int
    conductor: int
    candidates: int
    max_count: int
    bound: Fraction


@dataclass(frozen=True)
class DoubleCosetSweep:
    p: int
    level: int
    checked: int
    failures: tuple[str, ...]
    records: tuple[CosetRecord, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_double_coset_bounds(
    p: int,
    n: int,
    *,
    guard: int = 2**28,
    cache: Cache | None = None,
) -> DoubleCosetSweep:
    """Exact double coset counts for every candidate cocharacter against
    the per-cocharacter caps, plus the witness-subgroup floor."""
    pp = PrimePower(p, n)
    q = Fraction(p)
    checked = 0
    failures: list[str] = []
    records: list[CosetRecord] = []
    for j in range(1, n + 1):
        cands = cocharacter_candidates("unramified", n, j)
        bound = coset_bound("unramified", p, n, j)
        checked += 1
        if len(cands) > n * n:
            failures.append(f"unramified j={j}: candidate set too large")
        witness = lower_witness_constraint(n, j)
        worder = constrained_subgroup_order(witness, pp, guard=guard, cache=cache)
        floor = q ** (5 * n + 4 * j) * (1 - 1 / q) ** 3
        checked += 1
        if worder < floor:
            failures.append(f"unramified j={j}: witness below floor")
        top = 0
        for lam in cands:
            cons = cocharacter_constraint("unramified", lam)
            order = constrained_subgroup_order(cons, pp, guard=guard, cache=cache)
            count = double_coset_count(cons, pp, guard=guard, cache=cache)
            top = max(top, count)
            checked += 2
            if count > bound:
                failures.append(f"unramified {lam} j={j}: {count} > {bound}")
            wgrid = witness.capped(n)
            cgrid = cons.capped(n)
            contained = all(
                wgrid[a][b] >= cgrid[a][b] for a in range(3) for b in range(3)
            )
            if not contained or worder > order:
                failures.append(f"unramified {lam} j={j}: witness not inside")
        records.append(CosetRecord("unramified", n, j, len(cands), top, bound))
    for j in range(2, 3 * n + 1):
        if j % 3 == 1:
            continue
        cands = cocharacter_candidates("ramified", n, j)
        bound = coset_bound("ramified", p, n, j)
        checked += 1
        if len(cands) > 9 * n * n:
            failures.append(f"ramified j={j}: candidate set too large")
        top = 0
        for lam in cands:
            cons = cocharacter_constraint("ramified", lam)
            count = double_coset_count(cons, pp, guard=guard, cache=cache)
            top = max(top, count)
            checked += 1
            if count > bound:
                failures.append(f"ramified {lam} j={j}: {count} > {bound}")
        records.append(CosetRecord("ramified", n, j, len(cands), top, bound))
    return DoubleCosetSweep(p, n, checked, tuple(failures), tuple(records))


def verify_gl3_case_bounds(p: int, n: int) -> BoundCheck:
    checked = 0
    failures: list[str] = []
    q = Fraction(p)
    uniform = gl3_uniform_bound(p, n)
    induced_cap = q ** (3 * n) * (1 + 1 / q) ** 3
    for case in GL3_CASES:
        value = gl3_case_bound(case, p, n)
        checked += 1
        if value > uniform:
            failures.append(f"{case} exceeds the uniform bound")
        if case in ("borel", "gl2-gl1"):
            checked += 1
            if value > induced_cap:
                failures.append(f"{case} exceeds the induced-case cap")
    checked += 1
    if not q ** (3 * n) <= uniform <= q ** (8 * n):
        failures.append("uniform bound outside the reference growth range")
    return BoundCheck(f"gl3-cases p={p} n={n}", checked, tuple(failures))
