"""Quotient-ring models: valuations, norms, norm-one subgroups.

Expected orders are frozen from independent counting arguments:
unramified quadratic at level a has norm-one image of order (q+1)*q^(a-1)
(smooth conic point count), ramified quadratic at level t has 2*q^(t//2)
(two mod-p sign classes, one free digit per depth step).
"""

from __future__ import annotations

import math
import random

import pytest

from towerbound.errors import InfeasibleError, NotPrimeError
from towerbound.residue import (
    ExtensionModel,
    PrimePower,
    QuotientRing,
    norm_one_subgroup,
    smallest_irreducible_cubic,
    smallest_nonresidue,
)

INF = math.inf


def test_prime_power_validation():
    PrimePower(3, 1)
    PrimePower(13, 4)
    with pytest.raises(NotPrimeError):
        PrimePower(4, 1)
    with pytest.raises(NotPrimeError):
        PrimePower(1, 1)
    with pytest.raises(ValueError):
        PrimePower(3, 0)


def test_smallest_nonresidue():
    assert smallest_nonresidue(3) == 2
    assert smallest_nonresidue(5) == 2
    assert smallest_nonresidue(7) == 3
    assert smallest_nonresidue(11) == 2
    assert smallest_nonresidue(23) == 5


def test_smallest_irreducible_cubic():
    # p = 2 mod 3: pure cubes are bijective, so a linear term is forced.
    assert smallest_irreducible_cubic(5) == (1, 1)
    # p = 1 mod 3: a pure non-cube constant works.
    assert smallest_irreducible_cubic(7) == (0, 2)
    c1, c0 = smallest_irreducible_cubic(11)
    for t in range(11):
        assert (t**3 + c1 * t + c0) % 11 != 0


def test_model_validation():
    with pytest.raises(NotPrimeError):
        ExtensionModel.unramified_quadratic(2)  # quadratic models need odd p
    with pytest.raises(NotPrimeError):
        ExtensionModel.ramified_cubic(3)  # cubic models need p outside {2, 3}
    with pytest.raises(NotPrimeError):
        ExtensionModel.unramified_quadratic(9)
    with pytest.raises(ValueError):
        ExtensionModel.ramified_quadratic(5, unit=5)  # multiplier must be a unit


def test_base_ring_valuations():
    ring = QuotientRing(ExtensionModel.base(3), 3)  # Z/27
    assert ring.size == 27
    assert ring.from_int(1).valuation() == 0
    assert ring.from_int(3).valuation() == 1
    assert ring.from_int(9).valuation() == 2
    assert ring.from_int(0).valuation() == INF
    assert ring.from_int(27).valuation() == INF  # canonicalizes to zero


def test_ramified_uniformizer_valuation():
    model = ExtensionModel.ramified_quadratic(3)
    ring = QuotientRing(model, 3)
    pi = ring.gen()
    assert pi.valuation() == 1
    assert (pi * pi).valuation() == 2
    assert (pi * pi * pi).valuation() == INF  # dies at level 3
    # norm of the uniformizer generates the base maximal ideal
    assert pi.norm().valuation() == 1


def test_norm_example_unramified():
    model = ExtensionModel.unramified_quadratic(5)
    ring = QuotientRing(model, 2)
    z = ring.element((2, 1))
    nz = z.norm()
    eps = smallest_nonresidue(5)
    assert nz.ring.size == 25
    assert nz.coords[0] == (4 - eps) % 25


def test_norm_lands_in_base_at_intrinsic_precision():
    model = ExtensionModel.ramified_quadratic(5)
    ring = QuotientRing(model, 3)
    assert ring.norm_precision == 2
    z = ring.element((1, 1))
    assert z.norm().ring.model.kind == "base"
    assert z.norm().ring.level == 2


SMALL_RINGS = [
    (ExtensionModel.base(7), 3),
    (ExtensionModel.unramified_quadratic(3), 2),
    (ExtensionModel.ramified_quadratic(3), 3),
    (ExtensionModel.ramified_quadratic(5, unit=smallest_nonresidue(5)), 2),
    (ExtensionModel.unramified_cubic(5), 1),
    (ExtensionModel.ramified_cubic(5), 2),
]


@pytest.mark.parametrize("model,level", SMALL_RINGS)
def test_ultrametric_exhaustive(model, level):
    ring = QuotientRing(model, level)
    assert ring.size <= 10**4
    elems = list(ring.elements())
    for x in elems:
        for y in elems:
            vx, vy = x.valuation(), y.valuation()
            assert (x + y).valuation() >= min(vx, vy)
            prod_val = (x * y).valuation()
            expect = vx + vy
            if expect >= ring.level:
                assert prod_val == INF
            else:
                assert prod_val == expect


@pytest.mark.parametrize("model,level", SMALL_RINGS)
def test_unit_iff_valuation_zero(model, level):
    ring = QuotientRing(model, level)
    for x in ring.elements():
        if x.valuation() == 0:
            assert x.is_unit()
            # a unit has an inverse in the ring: brute search on small rings
        else:
            assert not x.is_unit()


@pytest.mark.parametrize(
    "model,level",
    [
        (ExtensionModel.unramified_quadratic(7), 2),
        (ExtensionModel.ramified_quadratic(7), 3),
        (ExtensionModel.unramified_cubic(7), 1),
        (ExtensionModel.ramified_cubic(7), 3),
    ],
)
def test_norm_multiplicative_random(model, level):
    ring = QuotientRing(model, level)
    rng = random.Random(20260817)
    moduli = ring.coord_moduli
    for _ in range(1000):
        x = ring.element(tuple(rng.randrange(m) for m in moduli))
        y = ring.element(tuple(rng.randrange(m) for m in moduli))
        assert (x * y).norm() == x.norm() * y.norm()


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("a", [1, 2, 3])
def test_norm_one_order_unramified(p, a):
    model = ExtensionModel.unramified_quadratic(p)
    sub = norm_one_subgroup(model, a)
    assert len(sub) == (p + 1) * p ** (a - 1)
    one = sub[0].ring.one()
    assert one in sub
    # closed under multiplication
    for x in sub[: min(len(sub), 12)]:
        for y in sub[: min(len(sub), 12)]:
            assert x * y in set(sub)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_norm_one_order_ramified_both_classes(p, t):
    expected = 2 * p ** (t // 2)
    orders = []
    for unit in (1, smallest_nonresidue(p)):
        model = ExtensionModel.ramified_quadratic(p, unit=unit)
        sub = norm_one_subgroup(model, t)
        orders.append(len(sub))
        for z in sub:
            assert z.norm() == z.ring.base_ring().one()
    assert orders == [expected, expected]


def test_norm_one_precision_stability():
    model = ExtensionModel.unramified_quadratic(3)
    a = norm_one_subgroup(model, 2, slack=2)
    b = norm_one_subgroup(model, 2, slack=4)
    assert a == b


def test_norm_one_guard():
    model = ExtensionModel.unramified_quadratic(7)
    with pytest.raises(InfeasibleError):
        norm_one_subgroup(model, 3, guard=1000)


def test_elements_guard():
    ring = QuotientRing(ExtensionModel.unramified_quadratic(7), 3)
    with pytest.raises(InfeasibleError):
        list(ring.elements(guard=100))
