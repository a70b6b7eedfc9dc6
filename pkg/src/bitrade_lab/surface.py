"""Face 2-coloured triangulations: data model, parsing and surface checks.

A triangulation is a list of coloured triangles plus an explicit gluing of
their sides.  Slot ``k`` of a face is the side between corners ``k`` and
``k + 1 (mod 3)``.  The gluing is explicit because the underlying graph need
not be simple: two edges may join the same pair of vertices, and a white and
a black face may carry the same vertex triple.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

WHITE = "white"
BLACK = "black"
COLOURS = (WHITE, BLACK)

R, C, S = "R", "C", "S"
CLASSES = (R, C, S)

Slot = tuple[int, int]


class MalformedTriangulation(ValueError):
    pass


class DuplicateEdgeUse(MalformedTriangulation):
    pass


class UnmatchedEdge(MalformedTriangulation):
    pass


class DisconnectedTriangulation(MalformedTriangulation):
    pass


class NotThreeColourable(ValueError):
    def __init__(self, message: str, witness: tuple[int, int] | None = None):
        super().__init__(message)
        self.witness = witness


def other_colour(colour: str) -> str:
    return BLACK if colour == WHITE else WHITE


@dataclass(frozen=True)
class Face:
    id: int
    colour: str
    corners: tuple[str, str, str]

    def __post_init__(self):
        object.__setattr__(self, "corners", tuple(self.corners))
        if self.colour not in COLOURS:
            raise MalformedTriangulation(f"face {self.id}: unknown colour {self.colour!r}")
        if len(self.corners) != 3 or len(set(self.corners)) != 3:
            raise MalformedTriangulation(f"face {self.id}: corners must be three distinct vertices")

    def slot(self, k: int) -> tuple[str, str]:
        return self.corners[k], self.corners[(k + 1) % 3]

    def opposite_slot(self, v: str) -> int:
        """The slot not touching corner ``v``."""
        return (self.corners.index(v) + 1) % 3


def _pair_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Triangulation:
    vertices: tuple[str, ...]
    faces: tuple[Face, ...]
    gluing: tuple[tuple[Slot, Slot], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "faces", tuple(self.faces))
        object.__setattr__(
            self, "gluing", tuple((tuple(a), tuple(b)) for a, b in self.gluing)
        )
        self._check()

    def _check(self) -> None:
        vset = set(self.vertices)
        if len(vset) != len(self.vertices) or any(not v for v in self.vertices):
            raise MalformedTriangulation("vertex labels must be nonempty and unique")
        ids = [f.id for f in self.faces]
        if len(set(ids)) != len(ids):
            raise MalformedTriangulation("duplicate face id")
        used = set()
        for f in self.faces:
            for v in f.corners:
                if v not in vset:
                    raise MalformedTriangulation(f"face {f.id}: unknown vertex {v!r}")
                used.add(v)
        if used != vset:
            raise MalformedTriangulation(f"vertices in no face: {sorted(vset - used)}")
        nw = sum(1 for f in self.faces if f.colour == WHITE)
        if 2 * nw != len(self.faces):
            raise MalformedTriangulation("white and black face counts differ")
        seen: dict[Slot, Slot] = {}
        by_id = self.face_by_id
        for a, b in self.gluing:
            for s in (a, b):
                if s[0] not in by_id or s[1] not in (0, 1, 2):
                    raise MalformedTriangulation(f"bad slot {s}")
                if s in seen:
                    raise DuplicateEdgeUse(f"slot {s} glued twice")
            seen[a], seen[b] = b, a
            fa, fb = by_id[a[0]], by_id[b[0]]
            if fa.colour == fb.colour:
                raise MalformedTriangulation(f"slots {a} and {b} join faces of the same colour")
            if _pair_key(*fa.slot(a[1])) != _pair_key(*fb.slot(b[1])):
                raise MalformedTriangulation(f"slots {a} and {b} carry different vertex pairs")
        if len(seen) != 3 * len(self.faces):
            missing = [(f.id, k) for f in self.faces for k in range(3) if (f.id, k) not in seen]
            raise UnmatchedEdge(f"unglued slots: {missing[:6]}")
        if len(face_components(self.faces, self.gluing)) > 1:
            raise DisconnectedTriangulation("face adjacency graph is disconnected")

    @cached_property
    def face_by_id(self) -> dict[int, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def mate(self) -> dict[Slot, Slot]:
        m = {}
        for a, b in self.gluing:
            m[a], m[b] = b, a
        return m

    def face(self, fid: int) -> Face:
        return self.face_by_id[fid]

    def faces_of(self, colour: str) -> list[Face]:
        return [f for f in self.faces if f.colour == colour]

    @property
    def t(self) -> int:
        """Number of faces of each colour."""
        return len(self.faces) // 2

    @property
    def n_edges(self) -> int:
        return len(self.gluing)

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - self.n_edges + len(self.faces)

    def is_simple(self) -> bool:
        """No two edges join the same pair of vertices."""
        keys = [_pair_key(*self.face(a[0]).slot(a[1])) for a, _ in self.gluing]
        return len(keys) == len(set(keys))


def face_components(faces: Sequence[Face], gluing: Iterable[tuple[Slot, Slot]]) -> list[list[int]]:
    """Connected components of the face adjacency graph, as sorted face id lists."""
    adj: dict[int, set[int]] = {f.id: set() for f in faces}
    for a, b in gluing:
        if a[0] in adj and b[0] in adj:
            adj[a[0]].add(b[0])
            adj[b[0]].add(a[0])
    seen: set[int] = set()
    comps = []
    for f in sorted(adj):
        if f in seen:
            continue
        comp, queue = [], deque([f])
        seen.add(f)
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in sorted(adj[x]):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def split_components(
    vertices: Sequence[str], faces: Sequence[Face], gluing: Sequence[tuple[Slot, Slot]]
) -> list[Triangulation]:
    """Build one triangulation per face-adjacency component."""
    out = []
    for comp in face_components(faces, gluing):
        ids = set(comp)
        sub_faces = [f for f in faces if f.id in ids]
        used = {v for f in sub_faces for v in f.corners}
        out.append(
            Triangulation(
                tuple(v for v in vertices if v in used),
                tuple(sub_faces),
                tuple((a, b) for a, b in gluing if a[0] in ids),
            )
        )
    return out


def _triples_to_faces(white, black) -> tuple[list[Face], list[tuple[Slot, Slot]]]:
    faces = [Face(i, WHITE, tuple(tr)) for i, tr in enumerate(white)]
    faces += [Face(len(faces) + i, BLACK, tuple(tr)) for i, tr in enumerate(black)]
    slots: dict[str, dict[tuple[str, str], Slot]] = {WHITE: {}, BLACK: {}}
    for f in faces:
        for k in range(3):
            key = _pair_key(*f.slot(k))
            if key in slots[f.colour]:
                raise DuplicateEdgeUse(f"vertex pair {key} occurs twice among {f.colour} faces")
            slots[f.colour][key] = (f.id, k)
    gluing = []
    for key, ws in slots[WHITE].items():
        if key not in slots[BLACK]:
            raise UnmatchedEdge(f"vertex pair {key} has no black face")
        gluing.append((ws, slots[BLACK][key]))
    extra = set(slots[BLACK]) - set(slots[WHITE])
    if extra:
        raise UnmatchedEdge(f"vertex pair {sorted(extra)[0]} has no white face")
    return faces, gluing


def parse_triples(
    vertices: Sequence[str], white_triples: Sequence[Sequence[str]], black_triples: Sequence[Sequence[str]]
) -> Triangulation:
    """Triangulation of a simple graph from its white and black vertex triples.

    Each vertex pair on a white triple must lie on exactly one black triple;
    the two sides are glued.  White faces get ids ``0..t-1``, black ``t..2t-1``.
    """
    faces, gluing = _triples_to_faces(white_triples, black_triples)
    return Triangulation(tuple(vertices), tuple(faces), tuple(gluing))


def from_json(data: Mapping) -> Triangulation:
    """Read either the triples form or the explicit gluing form."""
    comps = components_from_json(data)
    if len(comps) != 1:
        raise DisconnectedTriangulation(f"input has {len(comps)} components")
    return comps[0]


def components_from_json(data: Mapping) -> list[Triangulation]:
    vertices = [str(v) for v in data["vertices"]]
    if "gluing" in data:
        faces = [Face(int(f["id"]), f["colour"], tuple(map(str, f["corners"]))) for f in data["faces"]]
        gluing = [((int(a[0]), int(a[1])), (int(b[0]), int(b[1]))) for a, b in data["gluing"]]
    else:
        faces, gluing = _triples_to_faces(
            [tuple(map(str, t)) for t in data["white"]], [tuple(map(str, t)) for t in data["black"]]
        )
    return split_components(vertices, faces, gluing)


def to_json(t: Triangulation, form: str | None = None) -> dict:
    """Serialize; ``form`` is ``"triples"`` or ``"gluing"`` (default: triples when simple)."""
    if form is None:
        form = "triples" if t.is_simple() and _ids_are_canonical(t) else "gluing"
    data = {
        "vertices": list(t.vertices),
        "white": [list(f.corners) for f in t.faces_of(WHITE)],
        "black": [list(f.corners) for f in t.faces_of(BLACK)],
    }
    if form == "gluing":
        data["faces"] = [{"id": f.id, "colour": f.colour, "corners": list(f.corners)} for f in t.faces]
        data["gluing"] = [[list(a), list(b)] for a, b in t.gluing]
    elif form != "triples":
        raise ValueError(f"unknown form {form!r}")
    return data


def _ids_are_canonical(t: Triangulation) -> bool:
    order = t.faces_of(WHITE) + t.faces_of(BLACK)
    return [f.id for f in order] == list(range(len(order)))


@dataclass(frozen=True)
class RotationWalk:
    """A closed walk through the corners at ``vertex``, crossing glued sides.

    ``link[i]`` is the far endpoint of the side crossed after ``corners[i]``.
    """

    vertex: str
    corners: tuple[tuple[int, int], ...]
    link: tuple[str, ...]
    exit_slots: tuple[int, ...] = field(repr=False, default=())

    @property
    def is_simple_cycle(self) -> bool:
        return len(set(self.link)) == len(self.link)

    def __len__(self) -> int:
        return len(self.corners)


def _walk_from(t: Triangulation, v: str, fid: int, exit_slot: int) -> RotationWalk:
    corners, link, exits = [], [], []
    start = (fid, exit_slot)
    f, s = fid, exit_slot
    while True:
        face = t.face(f)
        i = face.corners.index(v)
        corners.append((f, i))
        exits.append(s)
        a, b = face.slot(s)
        link.append(b if a == v else a)
        g, l = t.mate[(f, s)]
        gface = t.face(g)
        j = gface.corners.index(v)
        s = (j - 1) % 3 if l == j else j
        f = g
        if (f, s) == start:
            break
    return RotationWalk(v, tuple(corners), tuple(link), tuple(exits))


def rotation_walks(t: Triangulation) -> dict[str, list[RotationWalk]]:
    """Partition the corners at each vertex into maximal closed alternating walks."""
    out: dict[str, list[RotationWalk]] = {v: [] for v in t.vertices}
    seen: set[tuple[int, int]] = set()
    for f in sorted(t.faces, key=lambda f: f.id):
        for i, v in enumerate(f.corners):
            if (f.id, i) in seen:
                continue
            w = _walk_from(t, v, f.id, i)
            seen.update(w.corners)
            out[v].append(w)
    return out


def is_orientable(t: Triangulation) -> bool:
    sign = {t.faces[0].id: 1}
    queue = deque([t.faces[0].id])
    while queue:
        f = queue.popleft()
        for k in range(3):
            g, l = t.mate[(f, k)]
            same_dir = t.face(f).slot(k)[0] == t.face(g).slot(l)[0]
            want = -sign[f] if same_dir else sign[f]
            if g not in sign:
                sign[g] = want
                queue.append(g)
            elif sign[g] != want:
                return False
    return True


@dataclass(frozen=True)
class SurfaceReport:
    euler_characteristic: int
    is_surface: bool
    pinch_vertices: frozenset[str]
    orientable: bool | None
    genus_descriptor: str

    @property
    def is_sphere(self) -> bool:
        return self.genus_descriptor == "sphere"

    def to_json(self) -> dict:
        return {
            "euler_characteristic": self.euler_characteristic,
            "is_surface": self.is_surface,
            "pinch_vertices": sorted(self.pinch_vertices),
            "orientable": self.orientable,
            "genus": self.genus_descriptor,
        }


def validate(t: Triangulation) -> SurfaceReport:
    chi = t.euler_characteristic
    walks = rotation_walks(t)
    pinched = frozenset(v for v, ws in walks.items() if len(ws) != 1)
    surface = not pinched
    orientable = is_orientable(t) if surface else None
    if not surface:
        desc = "pseudo-surface"
    elif orientable:
        desc = "sphere" if chi == 2 else f"orientable-genus {(2 - chi) // 2}"
    else:
        desc = f"nonorientable-crosscap {2 - chi}"
    return SurfaceReport(chi, surface, pinched, orientable, desc)


@dataclass(frozen=True)
class TriColouring:
    assignment: Mapping[str, str] = field(hash=False)

    def __getitem__(self, v: str) -> str:
        return self.assignment[v]

    def members(self, cls: str) -> list[str]:
        return sorted(v for v, c in self.assignment.items() if c == cls)

    def relabel(self, r_class: str) -> "TriColouring":
        """Rename classes so that ``r_class`` becomes R (C and S keep their cyclic order)."""
        shift = CLASSES.index(r_class)
        ren = {CLASSES[(k + shift) % 3]: CLASSES[k] for k in range(3)}
        return TriColouring({v: ren[c] for v, c in self.assignment.items()})

    def ordered(self, corners: Sequence[str]) -> tuple[str, str, str]:
        """The corners of a face in (R, C, S) order."""
        by = {self.assignment[v]: v for v in corners}
        return by[R], by[C], by[S]

    def to_json(self) -> dict:
        return {v: self.assignment[v] for v in sorted(self.assignment)}


def tricolour(t: Triangulation) -> TriColouring:
    """Proper vertex 3-colouring by propagation across glued sides.

    The lowest-id face seeds the classes R, C, S on its corners in stored
    order.  Raises :class:`NotThreeColourable` with a conflicting face pair.
    """
    seed = min(t.faces, key=lambda f: f.id)
    colour = dict(zip(seed.corners, CLASSES))
    seen = {seed.id}
    queue = deque([seed.id])
    while queue:
        fid = queue.popleft()
        for k in range(3):
            g, l = t.mate[(fid, k)]
            gface = t.face(g)
            a, b = gface.slot(l)
            third = gface.corners[(l + 2) % 3]
            want = ({R, C, S} - {colour[a], colour[b]})
            if len(want) != 1:
                raise NotThreeColourable(f"faces {fid} and {g} conflict", (fid, g))
            (want,) = want
            have = colour.setdefault(third, want)
            if have != want:
                raise NotThreeColourable(f"faces {fid} and {g} conflict on {third}", (fid, g))
            if g not in seen:
                seen.add(g)
                queue.append(g)
    for f in t.faces:
        if {colour[v] for v in f.corners} != set(CLASSES):
            raise NotThreeColourable(f"face {f.id} is not rainbow", (f.id, f.id))
    return TriColouring(colour)
