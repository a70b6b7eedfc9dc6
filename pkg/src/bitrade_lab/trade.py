"""Groups attached to a face 2-coloured triangulation, and the identities between them.

``A_W`` / ``A_B`` are the vertex groups with one relation ``r + c + s = 0``
per white / black face.  For a vertex 3-coloured triangulation with classes
R, C, S, the T-matrix counts, for each ordered pair of R-vertices, the C-S
edges whose white side lies at ``r_j`` and whose black side lies at ``r_i``.
``B_W`` is presented by the rows of T and ``C_W`` is ``B_W`` with one free
factor removed.  ``-T`` is the Kirchhoff matrix of the digraph D.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .groups import AbelianGroup, PresentedGroup, from_presentation, is_isomorphic, is_quotient_of
from .linalg import IntMatrix, det_bareiss, hnf_row_lattice, integer_kernel
from .surface import (
    BLACK,
    CLASSES,
    WHITE,
    NotThreeColourable,
    R,
    SurfaceReport,
    TriColouring,
    Triangulation,
    rotation_walks,
    tricolour,
    validate,
)


class NotThreeColoured(ValueError):
    pass


class NotSphere(ValueError):
    pass


class NoFreeFactor(ValueError):
    pass


class TooLarge(ValueError):
    pass


class NotASurface(ValueError):
    pass


def group_aw(t: Triangulation, colour: str = WHITE) -> PresentedGroup:
    """The vertex group with one relation per face of ``colour``."""
    index = {v: i for i, v in enumerate(t.vertices)}
    rows = []
    for f in t.faces_of(colour):
        row = [0] * len(t.vertices)
        for v in f.corners:
            row[index[v]] += 1
        rows.append(row)
    return from_presentation(list(t.vertices), IntMatrix.from_rows(rows, ncols=len(t.vertices)))


@dataclass(frozen=True)
class TMatrix:
    labels: tuple[str, ...]  # r_1, ..., r_k
    entries: IntMatrix
    black_counts: tuple[int, ...]  # d_i: faces of the "black" colour at r_i
    white_counts: tuple[int, ...]  # d'_i

    @property
    def k(self) -> int:
        return len(self.labels)

    def row_sums(self) -> list[int]:
        return [sum(self.entries.row(i)) for i in range(self.k)]

    def column_sums(self) -> list[int]:
        return [sum(self.entries.column(j)) for j in range(self.k)]

    def is_balanced(self) -> bool:
        return not any(self.row_sums()) and not any(self.column_sums())

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "entries": self.entries.to_json()}


def _check_colouring(t: Triangulation, col: TriColouring) -> None:
    for f in t.faces:
        try:
            classes = {col[v] for v in f.corners}
        except KeyError as exc:
            raise NotThreeColoured(f"vertex {exc} has no class") from None
        if classes != set(CLASSES):
            raise NotThreeColoured(f"face {f.id} does not see all three classes")


def t_matrix(t: Triangulation, col: TriColouring, colour: str = WHITE) -> TMatrix:
    """T for the given colouring; ``colour=BLACK`` swaps the roles of the colours (T')."""
    _check_colouring(t, col)
    labels = tuple(col.members(R))
    idx = {r: i for i, r in enumerate(labels)}
    k = len(labels)
    m = [[0] * k for _ in range(k)]

    def r_of(fid: int) -> str:
        return next(v for v in t.face(fid).corners if col[v] == R)

    for a, b in t.gluing:
        fa = t.face(a[0])
        if fa.colour != colour:
            a, b = b, a
            fa = t.face(a[0])
        if R in (col[v] for v in fa.slot(a[1])):
            continue
        j, i = idx[r_of(a[0])], idx[r_of(b[0])]
        if i != j:
            m[i][j] += 1
    for i in range(k):
        m[i][i] = -sum(m[i][j] for j in range(k) if j != i)
    d_black = [0] * k
    d_white = [0] * k
    for f in t.faces:
        (d_white if f.colour == colour else d_black)[idx[r_of(f.id)]] += 1
    return TMatrix(labels, IntMatrix.from_rows(m, ncols=k), tuple(d_black), tuple(d_white))


def b_group(tm: TMatrix) -> PresentedGroup:
    names = [f"x{i + 1}" for i in range(tm.k)]
    return from_presentation(names, tm.entries)


def c_group(b: AbelianGroup) -> AbelianGroup:
    """Remove one free factor."""
    if b.free_rank < 1:
        raise NoFreeFactor(str(b))
    return AbelianGroup(b.free_rank - 1, b.invariant_factors)


@dataclass(frozen=True)
class Digraph:
    """Loop-free directed multigraph; ``mult[i, j]`` edges run from ``z_j`` to ``z_i``."""

    mult: IntMatrix

    @property
    def k(self) -> int:
        return self.mult.nrows

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (source, target), one entry per parallel copy."""
        out = []
        for j in range(self.k):
            for i in range(self.k):
                if i != j:
                    out.extend([(j, i)] * self.mult[i, j])
        return out

    def out_degree(self, j: int) -> int:
        return sum(self.mult[i, j] for i in range(self.k) if i != j)

    def in_degree(self, i: int) -> int:
        return sum(self.mult[i, j] for j in range(self.k) if j != i)


def digraph_from_t(tm: TMatrix) -> Digraph:
    k = tm.k
    return Digraph(
        IntMatrix.from_rows(
            [[tm.entries[i, j] if i != j else 0 for j in range(k)] for i in range(k)], ncols=k
        )
    )


def _reach(k: int, succ: list[list[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in succ[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def is_strongly_connected(d: Digraph) -> bool:
    k = d.k
    if k <= 1:
        return True
    fwd = [[] for _ in range(k)]
    bwd = [[] for _ in range(k)]
    for s, t in d.edges():
        fwd[s].append(t)
        bwd[t].append(s)
    return len(_reach(k, fwd, 0)) == k and len(_reach(k, bwd, 0)) == k


def is_eulerian(d: Digraph) -> bool:
    return all(d.in_degree(i) == d.out_degree(i) for i in range(d.k))


def tree_number(tm: TMatrix) -> int:
    """``det(-T̄)`` where T̄ drops the last row and column of T."""
    k = tm.k
    keep = list(range(k - 1))
    return det_bareiss(-tm.entries.submatrix(keep, keep))


def count_arborescences_bruteforce(d: Digraph, root: int, limit: int = 16) -> int:
    """Spanning arborescences diverging from ``root``, by exhausting edge subsets."""
    edges = d.edges()
    if len(edges) > limit:
        raise TooLarge(f"{len(edges)} edges exceeds the brute-force limit {limit}")
    k = d.k
    count = 0
    for subset in combinations(range(len(edges)), k - 1):
        parent = [None] * k
        ok = True
        for e in subset:
            s, t = edges[e]
            if t == root or parent[t] is not None:
                ok = False
                break
            parent[t] = s
        if not ok:
            continue
        # every vertex must climb to the root without a cycle
        for v in range(k):
            steps, x = 0, v
            while x != root and steps <= k:
                x = parent[x]
                steps += 1
            if x != root:
                ok = False
                break
        if ok:
            count += 1
    return count


def cw_bound_holds(order: int, t: int) -> bool:
    """``order < (sqrt(2)/3) * 6**((t-1)/3)``, decided in integers.

    Cubing and squaring both sides: ``729 * order**6 < 8 * 6**(2*(t-1))``.
    """
    return 729 * order**6 < 8 * 6 ** (2 * (t - 1))


def region_boundary(t: Triangulation, col: TriColouring, r: str) -> list[tuple[int, int]]:
    """The C-S sides around ``r`` in rotation order, as (face id, slot).

    The walk starts at the white-side edge with least (C label, S label).
    """
    walks = rotation_walks(t)[r]
    if len(walks) != 1:
        raise NotASurface(f"vertex {r} is pinched")
    seq = [(fid, t.face(fid).opposite_slot(r)) for fid, _ in walks[0].corners]

    def key(pos: int):
        fid, slot = seq[pos]
        face = t.face(fid)
        a, b = face.slot(slot)
        c, s = (a, b) if col[a] == "C" else (b, a)
        return (face.colour != WHITE, c, s, pos)

    start = min(range(len(seq)), key=key)
    return seq[start:] + seq[:start]


def face_boundary_lattice_check(t: Triangulation, col: TriColouring) -> bool:
    """Region boundary sums span exactly the kernel of ``F(E) -> F(C u S)``.

    E is the set of C-S edges; each R-vertex contributes the alternating
    sum of the edges on its rotation, minus on white sides.
    """
    if not validate(t).is_sphere:
        raise NotSphere("lattice check is defined on sphere triangulations")
    _check_colouring(t, col)
    edge_index: dict[tuple[int, int], int] = {}
    ends: list[tuple[str, str]] = []
    for a, b in t.gluing:
        u, v = t.face(a[0]).slot(a[1])
        if col[u] == R or col[v] == R:
            continue
        edge_index[a] = edge_index[b] = len(ends)
        ends.append((u, v))
    cs = col.members("C") + col.members("S")
    vidx = {v: i for i, v in enumerate(cs)}
    incidence = [[0] * len(ends) for _ in cs]
    for e, (u, v) in enumerate(ends):
        incidence[vidx[u]][e] += 1
        incidence[vidx[v]][e] += 1
    boundaries = []
    for r in col.members(R):
        row = [0] * len(ends)
        for a, (fid, slot) in enumerate(region_boundary(t, col, r), start=1):
            row[edge_index[(fid, slot)]] += (-1) ** a
        boundaries.append(row)
    kernel = integer_kernel(IntMatrix.from_rows(incidence, ncols=len(ends)))
    lhs = hnf_row_lattice(IntMatrix.from_rows(boundaries, ncols=len(ends)))
    return lhs == hnf_row_lattice(kernel)


@dataclass(frozen=True)
class TradeGroupReport:
    surface: SurfaceReport
    a_w: PresentedGroup
    a_b: PresentedGroup
    colouring: TriColouring | None = None
    t_matrix: TMatrix | None = None
    t_matrix_black: TMatrix | None = None
    b_w: AbelianGroup | None = None
    b_b: AbelianGroup | None = None
    c_w: AbelianGroup | None = None
    tree_number: int | None = None
    digraph: Digraph | None = None
    verdicts: Mapping[str, bool] = field(default_factory=dict, hash=False)

    @property
    def all_verdicts_hold(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        def s(x):
            return None if x is None else str(x)

        return {
            "surface": self.surface.to_json(),
            "tricolourable": self.colouring is not None,
            "A_W": str(self.a_w.group),
            "A_B": str(self.a_b.group),
            "B_W": s(self.b_w),
            "B_B": s(self.b_b),
            "C_W": s(self.c_w),
            "tree_number": s(self.tree_number),
            "T": None if self.t_matrix is None else self.t_matrix.to_json(),
            "groups": {
                name: None if g is None else g.to_json()
                for name, g in (
                    ("A_W", self.a_w.group),
                    ("A_B", self.a_b.group),
                    ("B_W", self.b_w),
                    ("B_B", self.b_b),
                    ("C_W", self.c_w),
                )
            },
            "verdicts": dict(self.verdicts),
        }


def full_report(t: Triangulation, r_class: str | None = None) -> TradeGroupReport:
    """Every applicable group and verdict for ``t``.

    T-dependent fields are left empty when the triangulation is pinched or
    not vertex 3-colourable.  ``r_class`` picks which colour class plays R.
    """
    surface = validate(t)
    a_w = group_aw(t, WHITE)
    a_b = group_aw(t, BLACK)
    verdicts = {"theorem1_holds": is_isomorphic(a_w.group, a_b.group)}
    col = None
    if surface.is_surface:
        try:
            col = tricolour(t)
        except NotThreeColourable:
            col = None
    if col is None:
        return TradeGroupReport(surface, a_w, a_b, verdicts=verdicts)
    if r_class is not None:
        col = col.relabel(r_class)
    tm = t_matrix(t, col, WHITE)
    tm_b = t_matrix(t, col, BLACK)
    b_w = b_group(tm).group
    b_b = b_group(tm_b).group
    z = AbelianGroup(1)
    c_w = c_group(b_w)
    d = tree_number(tm)
    verdicts["key_lemma_holds"] = is_isomorphic(a_w.group, z.direct_sum(b_w)) and is_isomorphic(
        a_b.group, z.direct_sum(b_b)
    )
    verdicts["tree_number_matches"] = c_w.is_finite and c_w.torsion_order == d
    verdicts["bw_iso_bb"] = is_isomorphic(b_w, b_b)
    verdicts["t_prime_is_transpose"] = tm_b.entries == tm.entries.transpose()
    if surface.orientable and c_w.is_finite:
        verdicts["torsion_quotients_of_c_w"] = is_quotient_of(
            a_w.group.torsion(), c_w
        ) and is_quotient_of(a_b.group.torsion(), c_w)
    return TradeGroupReport(
        surface, a_w, a_b, col, tm, tm_b, b_w, b_b, c_w, d, digraph_from_t(tm), verdicts
    )
