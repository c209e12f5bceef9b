"""Matrix counting over Z/p^n: closed forms vs full enumeration.

Frozen values: |GL2(F2)| = 6, |GL2(F3)| = 48, |GL3(F2)| = 168,
|GL3(Z/4)| = 86016, |GL3(F3)| = 11232, full-flag counts 21 (F2) and
186 (F5), coset count 7 for the (1,0,0)-cocharacter grid over Z/2 and Z/4.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from towerbound.cache import Cache
from towerbound.errors import InfeasibleError
from towerbound.matgroups import (
    ValuationConstraint,
    congruence_index,
    constrained_subgroup_order,
    count_constrained_bruteforce,
    count_invertible_bruteforce,
    double_coset_bruteforce,
    double_coset_count,
    flag_count_bruteforce,
    gaussian_binomial,
    gaussian_multinomial,
    gl_order,
    invertible_matrices,
    matmul,
    orbit_count,
    parabolic_index,
)
from towerbound.residue import ExtensionModel, PrimePower, QuotientRing


@pytest.mark.parametrize(
    "m,p,n,expected",
    [
        (1, 3, 2, 6),
        (2, 2, 1, 6),
        (2, 3, 1, 48),
        (2, 2, 2, 96),
        (2, 3, 2, 3888),
        (3, 2, 1, 168),
        (3, 3, 1, 11232),
        (3, 2, 2, 86016),
    ],
)
def test_gl_order_matches_enumeration(m, p, n, expected):
    assert gl_order(m, PrimePower(p, n)) == expected
    assert count_invertible_bruteforce(m, p, n) == expected


def test_congruence_index_majorant():
    index, majorant = congruence_index(1, PrimePower(3, 2))
    assert index == 6
    assert majorant == Fraction(2, 3) * 9  # equality at m=1
    index, majorant = congruence_index(2, PrimePower(2, 1))
    assert index == 6 and index <= majorant
    for m in (1, 2, 3):
        for p in (2, 3, 5):
            for n in (1, 2):
                index, majorant = congruence_index(m, PrimePower(p, n))
                assert index <= majorant


def test_gaussian_binomial_values():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 3) == 130
    assert gaussian_multinomial((1, 1, 1), 2) == 21
    assert gaussian_multinomial((2, 1), 2) == 7
    assert gaussian_multinomial((1, 1, 1), 5) == 186


@pytest.mark.parametrize(
    "comp,p,expected",
    [
        ((1, 1, 1), 2, 21),
        ((2, 1), 2, 7),
        ((1, 2), 2, 7),
        ((1, 1, 1), 3, 52),
        ((1, 1), 3, 4),
    ],
)
def test_parabolic_index_matches_flag_enumeration(comp, p, expected):
    m = sum(comp)
    assert parabolic_index(m, comp, PrimePower(p, 1)) == expected
    assert flag_count_bruteforce(comp, p) == expected


def test_parabolic_index_deeper_level_against_cosets():
    # index = |GL| / |block-upper subgroup|, both enumerated
    for comp, p, n in [((1, 1), 3, 2), ((1, 1, 1), 2, 2), ((2, 1), 2, 2)]:
        m = sum(comp)
        grid = [[0] * m for _ in range(m)]
        row = 0
        starts = []
        for part in comp:
            starts.append(row)
            row += part
        for a in range(m):
            for b in range(m):
                block_a = max(i for i, s in enumerate(starts) if s <= a)
                block_b = max(i for i, s in enumerate(starts) if s <= b)
                if block_a > block_b:
                    grid[a][b] = n
        cons = ValuationConstraint.from_grid(grid)
        sub = count_constrained_bruteforce(cons, PrimePower(p, n))
        total = count_invertible_bruteforce(m, p, n)
        assert total % sub == 0
        assert parabolic_index(m, comp, PrimePower(p, n)) == total // sub


def test_constrained_order_formula_vs_bruteforce_gl2():
    cons = ValuationConstraint.from_grid([[0, 0], [1, 0]])
    pp = PrimePower(3, 2)
    assert constrained_subgroup_order(cons, pp) == 972
    assert count_constrained_bruteforce(cons, pp) == 972
    deep = ValuationConstraint.from_grid([[0, 0], [2, 0]])
    assert constrained_subgroup_order(deep, pp) == 324
    assert count_constrained_bruteforce(deep, pp) == 324


def test_constrained_order_formula_vs_bruteforce_gl3():
    iwahori = ValuationConstraint.from_grid([[0, 1, 1], [0, 0, 1], [0, 0, 0]])
    pp = PrimePower(3, 1)
    assert constrained_subgroup_order(iwahori, pp) == 216  # (q-1)^3 q^3
    assert count_constrained_bruteforce(iwahori, pp) == 216
    grid = ValuationConstraint.from_grid([[0, 0, 0], [1, 0, 0], [1, 0, 0]])
    pp2 = PrimePower(2, 2)
    assert constrained_subgroup_order(grid, pp2) == 12288
    assert count_constrained_bruteforce(grid, pp2) == 12288


def test_constrained_order_unit_diagonal():
    cons = ValuationConstraint.from_grid(
        [[0, 0, 0], [1, 0, 0], [2, 1, 0]], unit_diagonal=True
    )
    pp = PrimePower(2, 2)
    # witness-floor subgroup: order q^(5n+4j) (1-1/q)^3 at n=2, j=1
    expected = 2**14 // 8
    assert constrained_subgroup_order(cons, pp) == expected
    assert count_constrained_bruteforce(cons, pp) == expected


def test_constraint_validation_and_closure():
    with pytest.raises(ValueError):
        ValuationConstraint.from_grid([[1, 0], [0, 0]])  # diagonal must be 0
    with pytest.raises(ValueError):
        ValuationConstraint.from_grid([[0, -1], [0, 0]])
    good = ValuationConstraint.from_grid([[0, 0, 0], [1, 0, 0], [2, 1, 0]])
    assert good.is_multiplicative()
    bad = ValuationConstraint.from_grid([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    assert not bad.is_multiplicative()
    # explicit closure failure for the non-multiplicative grid
    g = (1, 0, 0, 0, 1, 0, 0, 1, 1)  # identity + E_32
    h = (1, 0, 0, 1, 1, 0, 0, 0, 1)  # identity + E_21
    prod = matmul(g, h, 3, 2)
    assert prod[6] % 2 != 0  # (3,1) entry escapes the constraint


def test_double_coset_count_and_oracle():
    cons = ValuationConstraint.from_grid([[0, 0, 0], [1, 0, 0], [1, 0, 0]])
    assert double_coset_count(cons, PrimePower(2, 1)) == 7
    assert double_coset_bruteforce(cons, PrimePower(2, 1)) == 7
    assert double_coset_count(cons, PrimePower(2, 2)) == 7
    assert double_coset_bruteforce(cons, PrimePower(2, 2)) == 7


def test_orbit_count_scalar_action():
    ring = QuotientRing(ExtensionModel.base(3), 1)
    gens = [ring.from_int(1), ring.from_int(-1)]
    space = list(ring.elements())
    assert orbit_count(gens, space, "scalar-mult") == 2


def test_orbit_count_left_mult_cosets():
    group = invertible_matrices(2, 2, 1)
    assert len(group) == 6
    borel = [g for g in group if g[2] % 2 == 0]
    assert len(borel) == 2
    assert orbit_count(borel, group, "left-mult", mod=2) == 3


def test_orbit_count_conjugation_classes():
    group = invertible_matrices(2, 2, 1)
    assert orbit_count(group, group, "conjugation", mod=2) == 3


def test_orbit_count_guard():
    group = invertible_matrices(2, 2, 1)
    with pytest.raises(InfeasibleError):
        orbit_count(group, group, "left-mult", mod=2, guard=10)


def test_bruteforce_guard():
    cons = ValuationConstraint.from_grid([[0, 0], [0, 0]])
    with pytest.raises(InfeasibleError):
        count_constrained_bruteforce(cons, PrimePower(5, 3), guard=100)


def test_cache_roundtrip_and_corruption(tmp_path):
    cache = Cache(tmp_path)
    calls = []

    def compute():
        calls.append(1)
        return 86016

    assert cache.get_or_compute("glenum m=3 p=2 n=2", compute) == 86016
    assert cache.get_or_compute("glenum m=3 p=2 n=2", compute) == 86016
    assert len(calls) == 1
    # corrupt the record: checksum mismatch forces recomputation
    victim = next(tmp_path.iterdir())
    victim.write_text(victim.read_text().replace("86016", "86017", 1))
    assert cache.lookup("glenum m=3 p=2 n=2") is None
    assert cache.get_or_compute("glenum m=3 p=2 n=2", compute) == 86016
    assert len(calls) == 2


def test_cached_enumeration_uses_cache(tmp_path):
    cache = Cache(tmp_path)
    first = count_invertible_bruteforce(2, 3, 1, cache=cache)
    assert first == 48
    assert cache.lookup("gl-enum m=2 p=3 n=1") == "48"
    assert count_invertible_bruteforce(2, 3, 1, cache=cache) == 48
