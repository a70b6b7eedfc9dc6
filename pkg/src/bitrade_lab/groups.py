"""Finitely generated abelian groups in invariant-factor form."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm, prod
from typing import Mapping, Sequence

from .linalg import IntMatrix, snf


class DimensionMismatch(ValueError):
    pass


class NotFinite(ValueError):
    pass


class GroupMismatch(ValueError):
    pass


INFINITE = "Infinite"


def _prime_powers(n: int) -> dict[int, int]:
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Normalize a list of cyclic orders to the invariant factor chain.

    Orders of 0 or 1 are ignored; e.g. ``[2, 2, 3]`` becomes ``(2, 6)``.
    """
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        n = abs(int(n))
        if n <= 1:
            continue
        for p, e in _prime_powers(n).items():
            by_prime.setdefault(p, []).append(p**e)
    if not by_prime:
        return ()
    length = max(len(v) for v in by_prime.values())
    factors = [1] * length
    for powers in by_prime.values():
        powers.sort()
        for k, q in enumerate(powers):
            factors[length - len(powers) + k] *= q
    return tuple(factors)


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank + Z_{d1} + ... + Z_{dm}`` with ``d1 | d2 | ... | dm``, all ``di >= 2``."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        f = tuple(self.invariant_factors)
        if any(d < 2 for d in f) or any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise ValueError(f"not an invariant factor chain: {f}")
        object.__setattr__(self, "invariant_factors", f)

    @classmethod
    def from_orders(cls, free_rank: int, orders: Sequence[int]) -> "AbelianGroup":
        return cls(free_rank, invariant_factors(orders))

    @property
    def torsion_order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        """Minimal number of generators."""
        return self.free_rank + len(self.invariant_factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | str:
        return self.torsion_order if self.is_finite else INFINITE

    def torsion(self) -> "AbelianGroup":
        return AbelianGroup(0, self.invariant_factors)

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_orders(
            self.free_rank + other.free_rank, self.invariant_factors + other.invariant_factors
        )

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.free_rank, (0,) * len(self.invariant_factors))

    def element(self, free: Sequence[int], torsion: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(free), tuple(torsion))

    def elements(self):
        """All elements of a finite group, in lexicographic coordinate order."""
        if not self.is_finite:
            raise NotFinite(str(self))
        from itertools import product

        for coords in product(*(range(d) for d in self.invariant_factors)):
            yield GroupElement(self, (), coords)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z_{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data: Mapping) -> "AbelianGroup":
        return cls.from_orders(int(data["free_rank"]), [int(d) for d in data["torsion"]])

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        """Inverse of ``str``; accepts e.g. ``"Z^2 + Z_6"``, ``"Z + Z_2 + Z_2"`` or ``"0"``."""
        text = text.strip()
        if text in ("0", ""):
            return cls()
        free, orders = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part.startswith("Z_"):
                orders.append(int(part[2:].strip("{}")))
            else:
                raise ValueError(f"cannot parse group component {part!r}")
        return cls.from_orders(free, orders)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def __post_init__(self):
        g = self.group
        if len(self.free) != g.free_rank or len(self.torsion) != len(g.invariant_factors):
            raise DimensionMismatch("coordinate vector does not match group")
        object.__setattr__(
            self, "torsion", tuple(x % d for x, d in zip(self.torsion, g.invariant_factors))
        )

    def _check(self, other: "GroupElement") -> None:
        if other.group != self.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.free), tuple(-a for a in self.torsion))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, n: int) -> "GroupElement":
        return GroupElement(self.group, tuple(n * a for a in self.free), tuple(n * a for a in self.torsion))

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def is_torsion(self) -> bool:
        return not any(self.free)

    def coords(self) -> list[int]:
        return list(self.free) + list(self.torsion)


def element_add(x: GroupElement, y: GroupElement) -> GroupElement:
    return x + y


def element_neg(x: GroupElement) -> GroupElement:
    return -x


def element_order(x: GroupElement) -> int | str:
    """Least ``n >= 1`` with ``n*x = 0``, or ``INFINITE``."""
    if any(x.free):
        return INFINITE
    n = 1
    for a, d in zip(x.torsion, x.group.invariant_factors):
        n = lcm(n, d // gcd(a, d))
    return n


def is_isomorphic(a: AbelianGroup, b: AbelianGroup) -> bool:
    return a.free_rank == b.free_rank and a.invariant_factors == b.invariant_factors


def is_quotient_of(q: AbelianGroup, a: AbelianGroup) -> bool:
    """Whether the finite group ``q`` is isomorphic to a quotient of ``a``."""
    if not (q.is_finite and a.is_finite):
        raise NotFinite("quotient test needs finite groups")
    fq, fa = q.invariant_factors, a.invariant_factors
    if len(fq) > len(fa):
        return False
    fq = (1,) * (len(fa) - len(fq)) + fq
    return all(y % x == 0 for x, y in zip(fq, fa))


@dataclass(frozen=True)
class PresentedGroup:
    """A group given by generators and relations, with the image of each generator."""

    generator_names: tuple[str, ...]
    group: AbelianGroup
    images: Mapping[str, GroupElement] = field(hash=False, compare=False)
    relations: IntMatrix | None = field(default=None, hash=False, compare=False)

    def image(self, name: str) -> GroupElement:
        return self.images[name]

    def evaluate(self, coefficients: Sequence[int]) -> GroupElement:
        """Image of the word ``sum c_j * g_j``."""
        out = self.group.zero()
        for c, name in zip(coefficients, self.generator_names):
            if c:
                out = out + c * self.images[name]
        return out

    def relations_hold(self) -> bool:
        if self.relations is None:
            return True
        return all(self.evaluate(self.relations.row(i)).is_zero() for i in range(self.relations.nrows))


def from_presentation(generators: Sequence[str], relation_rows: IntMatrix) -> PresentedGroup:
    """Canonical form of ``F(generators) / <rows>`` plus generator images.

    With ``u @ m @ v = d``, generator ``j`` maps to row ``j`` of ``v`` read in
    the new basis: coordinates with ``d_i = 1`` vanish, ``d_i = 0`` (or beyond
    the rank) are free, the rest are taken mod ``d_i``.
    """
    n = len(generators)
    if relation_rows.ncols != n:
        raise DimensionMismatch(f"{relation_rows.ncols} columns for {n} generators")
    res = snf(relation_rows)
    diag = res.diagonal + [0] * (n - min(relation_rows.shape))
    free_idx = [i for i, d in enumerate(diag) if d == 0]
    tors_idx = [i for i, d in enumerate(diag) if d > 1]
    group = AbelianGroup(len(free_idx), tuple(diag[i] for i in tors_idx))
    v = res.v
    images = {}
    for j, name in enumerate(generators):
        row = v.row(j)
        images[name] = GroupElement(
            group, tuple(row[i] for i in free_idx), tuple(row[i] for i in tors_idx)
        )
    return PresentedGroup(tuple(generators), group, images, relation_rows)
