"""Partial latin squares, latin bitrades and their embeddings in abelian groups."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .groups import AbelianGroup, GroupElement
from .surface import (
    BLACK,
    CLASSES,
    WHITE,
    Face,
    TriColouring,
    Triangulation,
    face_components,
    validate,
)
from .trade import NotSphere, group_aw

Triple = tuple[str, str, str]


class NotPLS(ValueError):
    pass


class NotDisjoint(ValueError):
    pass


class MissingMate(ValueError):
    def __init__(self, triple: Triple, coordinate: int):
        super().__init__(f"{triple} has no mate in coordinate {coordinate}")
        self.triple, self.coordinate = triple, coordinate


class NonUniqueMate(ValueError):
    def __init__(self, triple: Triple, coordinate: int):
        super().__init__(f"{triple} has several mates in coordinate {coordinate}")
        self.triple, self.coordinate = triple, coordinate


class NotABitrade(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalInvariantViolation(AssertionError):
    """A computed object contradicts a theorem; always a bug."""


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class PartialLatinSquare:
    """A set of (row, column, symbol) triples, no two agreeing in two places."""

    triples: frozenset[Triple]

    def __post_init__(self):
        object.__setattr__(self, "triples", frozenset(tuple(t) for t in self.triples))
        rows = {t[0] for t in self.triples}
        cols = {t[1] for t in self.triples}
        syms = {t[2] for t in self.triples}
        if rows & cols or rows & syms or cols & syms:
            raise NotPLS("row, column and symbol labels must be disjoint")
        for drop in range(3):
            seen = {}
            for t in self.triples:
                key = tuple(x for i, x in enumerate(t) if i != drop)
                if key in seen:
                    raise NotPLS(f"{seen[key]} and {t} agree in two coordinates")
                seen[key] = t

    @classmethod
    def of(cls, triples: Iterable[Sequence[str]]) -> "PartialLatinSquare":
        return cls(frozenset(tuple(t) for t in triples))

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(sorted(self.triples))

    def labels(self, coordinate: int) -> list[str]:
        return sorted({t[coordinate] for t in self.triples})

    def lookup(self, drop: int) -> dict[tuple[str, str], Triple]:
        """Index triples by the two coordinates other than ``drop``."""
        return {tuple(x for i, x in enumerate(t) if i != drop): t for t in self.triples}


@dataclass(frozen=True)
class Bitrade:
    white: PartialLatinSquare
    black: PartialLatinSquare

    @property
    def size(self) -> int:
        return len(self.white)

    def n_labels(self) -> int:
        """|R| + |C| + |S|."""
        return sum(len(self.white.labels(i)) for i in range(3))

    def to_json(self) -> dict:
        return {"white": [list(t) for t in self.white], "black": [list(t) for t in self.black]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Bitrade":
        return check_bitrade(
            PartialLatinSquare.of(map(tuple, data["white"])), PartialLatinSquare.of(map(tuple, data["black"]))
        )


def _mate(t: Triple, coordinate: int, other_index: dict) -> Triple | None:
    key = tuple(x for i, x in enumerate(t) if i != coordinate)
    return other_index.get(key)


def check_bitrade(w: PartialLatinSquare, b: PartialLatinSquare) -> Bitrade:
    """Check the bitrade axioms and return the pair as a :class:`Bitrade`."""
    if not isinstance(w, PartialLatinSquare):
        w = PartialLatinSquare.of(w)
    if not isinstance(b, PartialLatinSquare):
        b = PartialLatinSquare.of(b)
    if not w.triples or not b.triples:
        raise NotPLS("both partial latin squares must be nonempty")
    if w.triples & b.triples:
        raise NotDisjoint(f"shared triple {sorted(w.triples & b.triples)[0]}")
    roles = [set(w.labels(i)) | set(b.labels(i)) for i in range(3)]
    if roles[0] & roles[1] or roles[0] & roles[2] or roles[1] & roles[2]:
        raise NotPLS("a label is used in two different coordinates")
    for p, q in ((w, b), (b, w)):
        for drop in range(3):
            index = q.lookup(drop)
            for t in sorted(p.triples):
                m = _mate(t, drop, index)
                if m is None:
                    raise MissingMate(t, drop)
                # a PLS admits at most one triple per key, so uniqueness only fails on equality
                if m[drop] == t[drop]:
                    raise NonUniqueMate(t, drop)
    return Bitrade(w, b)


def bitrade_to_triangulation(bt: Bitrade) -> Triangulation:
    """Faces are the triples, corners in (r, c, s) order; mates are glued.

    Slot 0 is the (r, c) side, slot 1 the (c, s) side and slot 2 the (s, r) side.
    """
    faces, gluing = _raw_faces(bt)
    vertices = [v for i in range(3) for v in bt.white.labels(i)]
    return Triangulation(tuple(vertices), tuple(faces), tuple(gluing))


def triangulation_to_bitrade(t: Triangulation, col: TriColouring) -> Bitrade:
    """Read faces as (r, c, s) triples; fails unless they form a bitrade."""
    white = [col.ordered(f.corners) for f in t.faces_of(WHITE)]
    black = [col.ordered(f.corners) for f in t.faces_of(BLACK)]
    for name, triples in (("white", white), ("black", black)):
        if len(set(triples)) != len(triples):
            raise NotABitrade(f"repeated {name} triple", witness=triples)
    try:
        return check_bitrade(PartialLatinSquare.of(white), PartialLatinSquare.of(black))
    except (NotPLS, NotDisjoint, MissingMate, NonUniqueMate) as exc:
        raise NotABitrade(str(exc), witness=exc) from exc


def canonical_faces(t: Triangulation) -> tuple[frozenset, frozenset]:
    """Face-id-free description: coloured triples and glued side pairs by labels."""
    faces = frozenset((f.colour, f.corners) for f in t.faces)
    sides = frozenset(
        frozenset(((t.face(a).colour, t.face(a).corners, t.face(a).slot(k)),
                   (t.face(b).colour, t.face(b).corners, t.face(b).slot(l))))
        for (a, k), (b, l) in t.gluing
    )
    return faces, sides


NU = {"R": (1, 0), "C": (0, 1), "S": (-1, -1)}


def nu(cls: str) -> tuple[int, int]:
    """The class character: a homomorphism A_W -> Z^2 sending R, C, S to (1,0), (0,1), (-1,-1)."""
    return NU[cls]


@dataclass(frozen=True)
class Embedding:
    target: AbelianGroup
    assignment: Mapping[str, GroupElement] = field(hash=False)

    def table(self) -> dict[str, list[int]]:
        return {v: self.assignment[v].coords() for v in sorted(self.assignment)}

    def to_json(self) -> dict:
        return {"target": str(self.target), "assignment": self.table()}


def check_embedding(p: PartialLatinSquare, e: Embedding) -> bool:
    """Injective on rows, on columns and on symbols, with every triple summing to zero."""
    for i in range(3):
        images = [e.assignment[v] for v in p.labels(i)]
        if len(set(images)) != len(images):
            return False
    return all((e.assignment[r] + e.assignment[c] + e.assignment[s]).is_zero() for r, c, s in p.triples)


def canonical_torsion_embedding(t: Triangulation, col: TriColouring, colour: str = WHITE) -> Embedding:
    """Embed the faces of ``colour`` in the torsion subgroup of their vertex group.

    Each vertex image is shifted by the image of its class representative,
    the representatives being the corners of the least face triple of that
    colour, so every shifted image is torsion and every triple still sums to 0.
    """
    if not validate(t).is_sphere:
        raise NotSphere("torsion embedding needs a sphere triangulation")
    pg = group_aw(t, colour)
    triples = sorted(col.ordered(f.corners) for f in t.faces_of(colour))
    reps = dict(zip(CLASSES, triples[0]))
    target = pg.group.torsion()
    assignment = {}
    for v in t.vertices:
        x = pg.image(v) - pg.image(reps[col[v]])
        if not x.is_torsion():
            raise InternalInvariantViolation(f"shifted image of {v} has a free part")
        assignment[v] = GroupElement(target, (), x.torsion)
    emb = Embedding(target, assignment)
    if not check_embedding(PartialLatinSquare.of(triples), emb):
        raise InternalInvariantViolation("natural map is not an embedding")
    return emb


@dataclass(frozen=True)
class ProperSubBitrade:
    bitrade: Bitrade


@dataclass(frozen=True)
class Indecomposable:
    pass


def _closure(bt: Bitrade, seed: Triple) -> tuple[set[Triple], set[Triple]]:
    # a triple's mates in a sub-bitrade are forced: they are its mates in the whole bitrade
    idx_b = {d: bt.black.lookup(d) for d in range(3)}
    idx_w = {d: bt.white.lookup(d) for d in range(3)}
    w, b = {seed}, set()
    queue = deque([(WHITE, seed)])
    while queue:
        colour, t = queue.popleft()
        idx, dest = (idx_b, b) if colour == WHITE else (idx_w, w)
        for d in range(3):
            m = _mate(t, d, idx[d])
            if m not in dest:
                dest.add(m)
                queue.append((BLACK if colour == WHITE else WHITE, m))
    return w, b


def decompose(bt: Bitrade, cap: int = 20) -> ProperSubBitrade | Indecomposable:
    """Find a proper sub-bitrade, or report that none exists.

    Any sub-bitrade containing a white triple contains that triple's forced
    closure, so it suffices to test the closure of every white triple.
    """
    if bt.size > cap:
        raise TooLarge(f"bitrade of size {bt.size} exceeds cap {cap}")
    for seed in sorted(bt.white.triples):
        w, b = _closure(bt, seed)
        if len(w) < bt.size:
            return ProperSubBitrade(Bitrade(PartialLatinSquare.of(w), PartialLatinSquare.of(b)))
    return Indecomposable()


# -- instance generation ---------------------------------------------------


def cyclic_latin_square(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def row_cycle_switch(square: list[list[int]], r1: int, r2: int, col: int) -> None:
    """Swap rows ``r1`` and ``r2`` along the cycle through ``col``, in place.

    A 2-cycle is an intercalate flip; longer cycles exist in every latin square,
    including the odd-order cyclic ones that contain no intercalate.
    """
    n = len(square)
    where = {square[r2][j]: j for j in range(n)}
    cycle = [col]
    j = where[square[r1][col]]
    while j != col:
        cycle.append(j)
        j = where[square[r1][j]]
    for j in cycle:
        square[r1][j], square[r2][j] = square[r2][j], square[r1][j]


def _transpose_roles(square: list[list[int]], mode: int) -> list[list[int]]:
    """Conjugate the square: mode 0 keeps it, 1 swaps rows/columns, 2 swaps rows/symbols."""
    n = len(square)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = square[i][j]
            if mode == 0:
                out[i][j] = s
            elif mode == 1:
                out[j][i] = s
            else:
                out[s][j] = i
    return out


def random_switch(square: list[list[int]], rng: random.Random) -> list[list[int]]:
    mode = rng.randrange(3)
    sq = _transpose_roles(square, mode)
    n = len(sq)
    r1, r2 = rng.sample(range(n), 2)
    row_cycle_switch(sq, r1, r2, rng.randrange(n))
    # every conjugation used here is an involution
    return _transpose_roles(sq, mode)


def difference_bitrade(l1: Sequence[Sequence[int]], l2: Sequence[Sequence[int]]) -> Bitrade | None:
    """The bitrade of cells where two latin squares of the same order differ."""
    n = len(l1)
    w, b = [], []
    for i in range(n):
        for j in range(n):
            if l1[i][j] != l2[i][j]:
                w.append((f"r{i}", f"c{j}", f"s{l1[i][j]}"))
                b.append((f"r{i}", f"c{j}", f"s{l2[i][j]}"))
    if not w:
        return None
    return check_bitrade(PartialLatinSquare.of(w), PartialLatinSquare.of(b))


def bitrade_components(bt: Bitrade) -> list[Bitrade]:
    """Split into sub-bitrades along the components of the face adjacency graph."""
    tri_faces, gluing = _raw_faces(bt)
    out = []
    for comp in face_components(tri_faces, gluing):
        ids = set(comp)
        w = [f.corners for f in tri_faces if f.id in ids and f.colour == WHITE]
        b = [f.corners for f in tri_faces if f.id in ids and f.colour == BLACK]
        out.append(Bitrade(PartialLatinSquare.of(w), PartialLatinSquare.of(b)))
    return out


def _raw_faces(bt: Bitrade):
    # slot k omits coordinate (k + 2) % 3
    white = sorted(bt.white.triples)
    black = sorted(bt.black.triples)
    faces = [Face(i, WHITE, t) for i, t in enumerate(white)]
    faces += [Face(len(white) + i, BLACK, t) for i, t in enumerate(black)]
    black_id = {t: len(white) + i for i, t in enumerate(black)}
    idx = {drop: bt.black.lookup(drop) for drop in range(3)}
    gluing = [
        ((i, k), (black_id[_mate(t, (k + 2) % 3, idx[(k + 2) % 3])], k))
        for i, t in enumerate(white)
        for k in range(3)
    ]
    return faces, gluing


def _relabel(bt: Bitrade) -> Bitrade:
    # compact labels r1.., c1.., s1.. in order of first appearance
    maps = [{}, {}, {}]
    prefix = "rcs"
    for t in sorted(bt.white.triples):
        for i, x in enumerate(t):
            maps[i].setdefault(x, f"{prefix[i]}{len(maps[i]) + 1}")

    def ren(ts):
        return PartialLatinSquare.of(tuple(maps[i][x] for i, x in enumerate(t)) for t in ts)

    return Bitrade(ren(bt.white.triples), ren(bt.black.triples))


def harvest_spherical(
    n: int, seed: int, count: int, max_switches: int = 6, max_attempts: int | None = None
) -> list[Bitrade]:
    """Spherical bitrades from differences of randomly switched latin squares.

    The base square is the cyclic square of order ``n`` scrambled by random
    cycle switches; a second square is obtained from it by a few more
    switches and their difference is split into components.  Components that
    triangulate the sphere are kept, relabelled, without duplicates.
    Deterministic for a fixed seed.
    """
    if n < 4:
        raise ValueError("order must be at least 4")
    rng = random.Random(seed)
    out: list[Bitrade] = []
    seen: set = set()
    attempts = 0
    max_attempts = max_attempts if max_attempts is not None else 200 * count
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        base = cyclic_latin_square(n)
        for _ in range(rng.randrange(2 * n)):
            base = random_switch(base, rng)
        other = [row[:] for row in base]
        for _ in range(1 + rng.randrange(max_switches)):
            other = random_switch(other, rng)
        diff = difference_bitrade(base, other)
        if diff is None:
            continue
        for comp in bitrade_components(diff):
            if comp.n_labels() != comp.size + 2:
                continue
            if not validate(bitrade_to_triangulation(comp)).is_sphere:
                continue
            comp = _relabel(comp)
            key = (comp.white.triples, comp.black.triples)
            if key in seen:
                continue
            seen.add(key)
            out.append(comp)
            if len(out) == count:
                break
    return out
