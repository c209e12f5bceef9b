"""Exact truncated models of quadratic and cubic local-field extensions.

An ExtensionModel fixes the base prime and a defining polynomial; a
QuotientRing truncates it at a power of the maximal ideal. Elements are
coordinate tuples over the power basis (residue generator for unramified
models, uniformizer for ramified ones). Everything is integer arithmetic.
The valuation of zero is the distinguished math.inf, never a sentinel int.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import InfeasibleError, NotPrimeError, PrecisionUnstableError

INF = math.inf

BASE = "base"
UNRAMIFIED_QUADRATIC = "unramified-quadratic"
RAMIFIED_QUADRATIC = "ramified-quadratic"
UNRAMIFIED_CUBIC = "unramified-cubic"
RAMIFIED_CUBIC = "ramified-cubic"

_DEGREES = {
    BASE: 1,
    UNRAMIFIED_QUADRATIC: 2,
    RAMIFIED_QUADRATIC: 2,
    UNRAMIFIED_CUBIC: 3,
    RAMIFIED_CUBIC: 3,
}
_RAMIFIED = {RAMIFIED_QUADRATIC, RAMIFIED_CUBIC}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int, *, odd: bool = False, not3: bool = False) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if odd and p == 2:
        raise NotPrimeError("model needs an odd prime")
    if not3 and p == 3:
        raise NotPrimeError("tame cubic ramification needs p outside {2, 3}")


def smallest_nonresidue(p: int) -> int:
    """Smallest quadratic non-residue mod an odd prime."""
    require_prime(p, odd=True)
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return c
    raise AssertionError("unreachable for odd primes")


def smallest_irreducible_cubic(p: int) -> tuple[int, int]:
    """Lexicographically first (c1, c0) with x^3 + c1*x + c0 irreducible mod p.

    A cubic with no roots is irreducible, so a root scan suffices.
    """
    require_prime(p, odd=True)
    cubes = {pow(t, 3, p) for t in range(p)}
    for c1 in range(p):
        for c0 in range(1, p):
            if c1 == 0:
                if (-c0) % p not in cubes:
                    return (0, c0)
                continue
            if all((pow(t, 3, p) + c1 * t + c0) % p != 0 for t in range(p)):
                return (c1, c0)
    raise AssertionError("no irreducible cubic found; p is not prime?")


@dataclass(frozen=True)
class PrimePower:
    p: int
    n: int

    def __post_init__(self) -> None:
        require_prime(self.p)
        if self.n < 1:
            raise ValueError("exponent must be >= 1")

    @property
    def modulus(self) -> int:
        return self.p**self.n


@dataclass(frozen=True)
class ExtensionModel:
    """Base prime plus defining data for one of the five ring kinds."""

    p: int
    kind: str
    param: tuple[int, ...]

    @classmethod
    def base(cls, p: int) -> "ExtensionModel":
        require_prime(p)
        return cls(p, BASE, ())

    @classmethod
    def unramified_quadratic(cls, p: int, eps: int | None = None) -> "ExtensionModel":
        require_prime(p, odd=True)
        eps = smallest_nonresidue(p) if eps is None else eps % p
        if pow(eps, (p - 1) // 2, p) != p - 1:
            raise ValueError(f"{eps} is a square mod {p}")
        return cls(p, UNRAMIFIED_QUADRATIC, (eps,))

    @classmethod
    def ramified_quadratic(cls, p: int, unit: int = 1) -> "ExtensionModel":
        require_prime(p, odd=True)
        if unit % p == 0:
            raise ValueError("multiplier must be a unit mod p")
        return cls(p, RAMIFIED_QUADRATIC, (unit % p,))

    @classmethod
    def unramified_cubic(cls, p: int) -> "ExtensionModel":
        require_prime(p, odd=True)
        return cls(p, UNRAMIFIED_CUBIC, smallest_irreducible_cubic(p))

    @classmethod
    def ramified_cubic(cls, p: int, unit: int = 1) -> "ExtensionModel":
        require_prime(p, odd=True, not3=True)
        if unit % p == 0:
            raise ValueError("multiplier must be a unit mod p")
        return cls(p, RAMIFIED_CUBIC, (unit % p,))

    @property
    def degree(self) -> int:
        return _DEGREES[self.kind]

    @property
    def ram_index(self) -> int:
        return self.degree if self.kind in _RAMIFIED else 1

    @property
    def res_degree(self) -> int:
        return self.degree // self.ram_index

    def basis_weight(self, i: int) -> int:
        # maximal-ideal valuation of the i-th basis element
        return i if self.kind in _RAMIFIED else 0

    def _head(self) -> tuple[int, ...]:
        """Coordinates of x^degree in the power basis."""
        if self.kind == UNRAMIFIED_QUADRATIC:
            return (self.param[0], 0)
        if self.kind == RAMIFIED_QUADRATIC:
            return (self.param[0] * self.p, 0)
        if self.kind == UNRAMIFIED_CUBIC:
            c1, c0 = self.param
            return (-c0, -c1, 0)
        if self.kind == RAMIFIED_CUBIC:
            return (self.param[0] * self.p, 0, 0)
        raise AssertionError("base model has no head")

    def mul_coords(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        deg = self.degree
        if deg == 1:
            return (a[0] * b[0],)
        conv = [0] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        head = self._head()
        for k in range(2 * deg - 2, deg - 1, -1):
            ck = conv[k]
            if ck:
                conv[k] = 0
                for i, hi in enumerate(head):
                    if hi:
                        conv[k - deg + i] += ck * hi
        return tuple(conv[:deg])

    def mult_matrix(self, coords: tuple[int, ...]) -> list[list[int]]:
        """Matrix of multiplication by the element, columns over the basis."""
        deg = self.degree
        x = tuple(1 if i == 1 else 0 for i in range(deg))
        cols = [tuple(coords)]
        for _ in range(deg - 1):
            cols.append(self.mul_coords(cols[-1], x))
        return [[cols[j][i] for j in range(deg)] for i in range(deg)]

    def norm_int(self, coords: tuple[int, ...]) -> int:
        """Exact integer determinant of the multiplication matrix."""
        m = self.mult_matrix(coords)
        if self.degree == 1:
            return m[0][0]
        if self.degree == 2:
            return m[0][0] * m[1][1] - m[0][1] * m[1][0]
        a, b, c = m[0]
        d, e, f = m[1]
        g, h, i = m[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


@dataclass(frozen=True)
class QuotientRing:
    """An ExtensionModel truncated at the level-th power of the maximal ideal."""

    model: ExtensionModel
    level: int

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValueError("level must be >= 1")

    @property
    def p(self) -> int:
        return self.model.p

    @property
    def coord_moduli(self) -> tuple[int, ...]:
        e = self.model.ram_index
        out = []
        for i in range(self.model.degree):
            digits = -((self.level - self.model.basis_weight(i)) // -e)
            out.append(self.p ** max(digits, 0))
        return tuple(out)

    @property
    def size(self) -> int:
        return math.prod(self.coord_moduli)

    @property
    def norm_precision(self) -> int:
        # base digits at which the norm of a level-capped element is pinned
        return -(self.level // -self.model.ram_index)

    def canon(self, coords: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(c % m if m > 1 else 0 for c, m in zip(coords, self.coord_moduli))

    def element(self, coords: tuple[int, ...]) -> "RingElem":
        return RingElem(self, self.canon(coords))

    def from_int(self, k: int) -> "RingElem":
        return self.element((k,) + (0,) * (self.model.degree - 1))

    def zero(self) -> "RingElem":
        return self.from_int(0)

    def one(self) -> "RingElem":
        return self.from_int(1)

    def gen(self) -> "RingElem":
        if self.model.degree == 1:
            raise ValueError("base ring has no generator beyond 1")
        return self.element(tuple(1 if i == 1 else 0 for i in range(self.model.degree)))

    def coords_iter(self, guard: int | None = None):
        if guard is not None and self.size > guard:
            raise InfeasibleError(f"ring has {self.size} elements, guard is {guard}")
        return itertools.product(*(range(m) for m in self.coord_moduli))

    def elements(self, guard: int | None = None):
        for coords in self.coords_iter(guard):
            yield RingElem(self, coords)

    def val_coords(self, coords: tuple[int, ...]) -> float | int:
        coords = self.canon(coords)
        e = self.model.ram_index
        best: float | int = INF
        for i, c in enumerate(coords):
            if c == 0:
                continue
            v = 0
            while c % self.p == 0:
                c //= self.p
                v += 1
            best = min(best, e * v + self.model.basis_weight(i))
        return best

    def norm_coords(self, coords: tuple[int, ...]) -> int:
        return self.model.norm_int(self.canon(coords)) % (self.p**self.norm_precision)

    def base_ring(self) -> "QuotientRing":
        return QuotientRing(ExtensionModel.base(self.p), self.norm_precision)


@dataclass(frozen=True)
class RingElem:
    ring: QuotientRing
    coords: tuple[int, ...]

    def __add__(self, other: "RingElem") -> "RingElem":
        return self.ring.element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RingElem") -> "RingElem":
        return self.ring.element(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "RingElem":
        return self.ring.element(tuple(-a for a in self.coords))

    def __mul__(self, other: "RingElem") -> "RingElem":
        return self.ring.element(self.ring.model.mul_coords(self.coords, other.coords))

    def __pow__(self, k: int) -> "RingElem":
        if k < 0:
            raise ValueError("negative powers not supported")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def valuation(self) -> float | int:
        return self.ring.val_coords(self.coords)

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def norm(self) -> "RingElem":
        if self.ring.model.degree == 1:
            raise ValueError("norm is defined on extension rings")
        return self.ring.base_ring().from_int(self.ring.norm_coords(self.coords))


def _lifts_to_norm_one(ring: QuotientRing, coords: tuple[int, ...], work: int) -> bool:
    """Newton digit-refinement: can this residue lift to an exact norm-one
    element at `work` base digits of precision?

    Adjustments happen at digit k >= norm_precision, which is a multiple of
    every coordinate modulus, so the target residue is preserved.
    """
    model = ring.model
    p = ring.p
    start = ring.norm_precision
    pw = p**work
    w = list(ring.canon(coords))
    for k in range(start, work):
        pk1 = p ** (k + 1)
        r = (model.norm_int(tuple(w)) - 1) % pk1
        if r == 0:
            continue
        if r % (p**k) != 0:
            return False
        digit = r // (p**k)
        done = False
        for i in range(model.degree):
            bumped = list(w)
            bumped[i] += p**k
            partial = ((model.norm_int(tuple(bumped)) - model.norm_int(tuple(w))) // (p**k)) % p
            if partial % p == 0:
                continue
            delta = (-digit * pow(partial, -1, p)) % p
            w[i] += (p**k) * delta
            done = True
            break
        if not done:
            return False
        if (model.norm_int(tuple(w)) - 1) % pk1 != 0:
            return False
    return (model.norm_int(tuple(w)) - 1) % pw == 0


def norm_one_subgroup(
    model: ExtensionModel,
    level: int,
    *,
    slack: int = 2,
    guard: int = 2**28,
) -> list[RingElem]:
    """Image of the global norm-one units in the level-th quotient.

    Candidates are the residues whose norm is 1 at the level's intrinsic
    precision; each is certified liftable by Newton refinement at working
    precision and again two digits deeper. Any disagreement raises
    PrecisionUnstableError (none is expected for odd tame models).
    """
    if model.degree == 1:
        raise ValueError("norm-one subgroup needs an extension model")
    ring = QuotientRing(model, level)
    if ring.size > guard:
        raise InfeasibleError(f"ring has {ring.size} elements, guard is {guard}")
    pnorm = ring.p**ring.norm_precision
    candidates = [c for c in ring.coords_iter() if ring.norm_coords(c) == 1 % pnorm]
    work = ring.norm_precision + slack
    image_a = [c for c in candidates if _lifts_to_norm_one(ring, c, work)]
    image_b = [c for c in candidates if _lifts_to_norm_one(ring, c, work + 2)]
    if image_a != image_b:
        raise PrecisionUnstableError(
            f"norm-one image changed between {work} and {work + 2} digits"
        )
    return [RingElem(ring, c) for c in image_a]


def generating_subset(elements: list[RingElem]) -> list[RingElem]:
    """Small generating set for a finite abelian group given as a full list."""
    if not elements:
        return []
    one = elements[0].ring.one()
    closure = {one}
    gens: list[RingElem] = []
    for s in sorted(elements, key=lambda z: z.coords):
        if s in closure:
            continue
        gens.append(s)
        frontier = list(closure)
        powers = []
        acc = s
        while acc not in closure:
            powers.append(acc)
            acc = acc * s
        for c in frontier:
            for q in powers:
                closure.add(c * q)
    return gens
