"""Rebuild the bundled fixture JSON files.

Torus pictures are transcribed as triangles on a periodic grid: sides are
glued when they are the same segment modulo the period lattice.  The
punctured-plane picture with a vertex at infinity is transcribed with
explicit side tags where two edges join the same pair of vertices.

Every fixture is checked against its published groups before it is written.

    python scripts/transcribe_fixtures.py [--check]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from bitrade_lab.groups import AbelianGroup
from bitrade_lab.surface import (
    BLACK,
    WHITE,
    Face,
    NotThreeColourable,
    Triangulation,
    parse_triples,
    to_json,
    tricolour,
    validate,
)
from bitrade_lab.trade import group_aw

DATA = Path(__file__).resolve().parent.parent / "src" / "bitrade_lab" / "data"


def periodic_torus(labels, period, white, black) -> Triangulation:
    """Triangles given by grid coordinates; ``labels`` maps a reduced point to its vertex."""
    pw, ph = period

    def reduce(p):
        return p[0] % pw, p[1] % ph

    def side_key(p, q):
        p, q = sorted([p, q])
        dx, dy = p[0] - p[0] % pw, p[1] - p[1] % ph
        return (p[0] - dx, p[1] - dy), (q[0] - dx, q[1] - dy)

    faces, sides = [], {}
    for colour, tris in ((WHITE, white), (BLACK, black)):
        for tri in tris:
            fid = len(faces)
            faces.append(Face(fid, colour, tuple(labels[reduce(p)] for p in tri)))
            for k in range(3):
                sides.setdefault(side_key(tri[k], tri[(k + 1) % 3]), []).append((fid, k))
    gluing = []
    for key, pair in sides.items():
        assert len(pair) == 2, (key, pair)
        gluing.append(tuple(pair))
    vertices = sorted(set(labels.values()))
    return Triangulation(tuple(vertices), tuple(faces), tuple(gluing))


def tagged(vertices, white, black) -> Triangulation:
    """Faces as (corners, tags); a side's tag tells apart parallel edges."""
    faces, sides = [], {}
    for colour, tris in ((WHITE, white), (BLACK, black)):
        for corners, tags in tris:
            fid = len(faces)
            faces.append(Face(fid, colour, corners))
            for k in range(3):
                pair = frozenset((corners[k], corners[(k + 1) % 3]))
                sides.setdefault((pair, tags.get(pair, "")), []).append((fid, k))
    gluing = []
    for key, pair in sides.items():
        assert len(pair) == 2, (key, pair)
        gluing.append(tuple(pair))
    return Triangulation(tuple(vertices), tuple(faces), tuple(gluing))


def torus_i():
    labels = {(0, 0): "a", (1, 0): "b", (0, 1): "c", (1, 1): "d"}
    black = [[(0, 0), (1, 0), (0, 1)], [(1, 0), (2, 1), (1, 1)], [(1, 1), (2, 2), (1, 2)], [(0, 1), (1, 1), (0, 2)]]
    white = [[(1, 0), (1, 1), (0, 1)], [(1, 0), (2, 0), (2, 1)], [(1, 1), (2, 1), (2, 2)], [(1, 1), (1, 2), (0, 2)]]
    return periodic_torus(labels, (2, 2), white, black)


def torus_ii():
    labels = {(0, 0): "a", (1, 0): "b", (0, 1): "c", (1, 1): "d"}
    black = [[(0, 0), (1, 1), (0, 1)], [(1, 0), (2, 0), (1, 1)], [(1, 1), (1, 2), (0, 2)], [(1, 1), (2, 1), (2, 2)]]
    white = [[(0, 0), (1, 0), (1, 1)], [(2, 0), (2, 1), (1, 1)], [(0, 1), (1, 1), (0, 2)], [(1, 1), (2, 2), (1, 2)]]
    return periodic_torus(labels, (2, 2), white, black)


def torus_iii():
    labels = {(0, 0): "a", (1, 0): "b", (2, 0): "c", (0, 1): "d", (1, 1): "e", (2, 1): "f"}
    black = [[(i, j), (i + 1, j), (i + 1, j + 1)] for j in range(2) for i in range(3)]
    white = [[(i, j), (i + 1, j + 1), (i, j + 1)] for j in range(2) for i in range(3)]
    return periodic_torus(labels, (3, 2), white, black)


def figure_1():
    # r1 sits at infinity; the two r1-c2 edges and the two r1-s3 edges leave
    # c2 and s3 upwards and downwards in the picture.
    def up(*vs):
        return {frozenset(("r1", v)): "up" for v in vs}

    def down(*vs):
        return {frozenset(("r1", v)): "down" for v in vs}

    black = [
        (("r3", "s3", "c5"), {}),
        (("r3", "s5", "c4"), {}),
        (("r3", "c3", "s4"), {}),
        (("r2", "s1", "c2"), {}),
        (("r2", "c1", "s2"), {}),
        (("r1", "c2", "s3"), up("c2", "s3")),
        (("r1", "c5", "s5"), {}),
        (("r1", "s3", "c3"), down("s3")),
        (("r1", "c2", "s2"), down("c2")),
        (("r1", "c1", "s1"), {}),
        (("r1", "c4", "s4"), {}),
    ]
    white = [
        (("r3", "s5", "c5"), {}),
        (("r3", "s3", "c3"), {}),
        (("r3", "s4", "c4"), {}),
        (("r2", "s1", "c1"), {}),
        (("r2", "s2", "c2"), {}),
        (("r1", "c5", "s3"), up("s3")),
        (("r1", "c4", "s5"), {}),
        (("r1", "c3", "s4"), {}),
        (("r1", "s1", "c2"), up("c2")),
        (("r1", "s2", "c1"), {}),
        (("r1", "c2", "s3"), down("c2", "s3")),
    ]
    vertices = ["r1", "r2", "r3"] + [f"c{i}" for i in range(1, 6)] + [f"s{i}" for i in range(1, 6)]
    return tagged(vertices, white, black)


def torus_cw():
    # vertex 3-coloured torus with 12 faces of each colour, read off the picture
    black = [
        "r3 s4 c3", "r3 s1 c2", "r3 s2 c1", "r3 c4 s3", "r2 s2 c2", "r4 c3 s1",
        "r2 c1 s1", "r1 c4 s1", "r4 c4 s4", "r4 c1 s3", "r1 c3 s3", "r1 c1 s4",
    ]
    white = [
        "r3 c2 s2", "r3 c1 s3", "r3 c4 s4", "r3 c3 s1", "r2 c2 s1", "r2 c1 s2",
        "r4 c4 s1", "r4 c3 s3", "r4 c1 s4", "r1 c1 s1", "r1 c3 s4", "r1 c4 s3",
    ]

    def rcs(t):
        vs = t.split()
        return tuple(sorted(vs, key=lambda v: "rcs".index(v[0])))

    vertices = [f"{p}{i}" for p in "rcs" for i in range(1, 5)]
    return parse_triples(vertices, [rcs(t) for t in white], [rcs(t) for t in black])


def fgg():
    w = "012 034 057 068 135 146 178 236 247 258".split()
    b = "013 026 047 058 124 157 168 235 278 346".split()
    return parse_triples(list("012345678"), [tuple(x) for x in w], [tuple(x) for x in b])


def two_face():
    return parse_triples(["r", "c", "s"], [("r", "c", "s")], [("r", "c", "s")])


def intercalate():
    w = [("r1", "c1", "s1"), ("r1", "c2", "s2"), ("r2", "c1", "s2"), ("r2", "c2", "s1")]
    b = [("r1", "c1", "s2"), ("r1", "c2", "s1"), ("r2", "c1", "s1"), ("r2", "c2", "s2")]
    return parse_triples(["r1", "r2", "c1", "c2", "s1", "s2"], w, b)


BUILDERS = {
    "fgg": (fgg, "Simple nonorientable triangulation on 9 vertices, not vertex 3-colourable.",
            {"A_W": "Z_3 + Z_6", "A_B": "Z_3 + Z_3", "euler_characteristic": -1, "three_colourable": False}),
    "torus-i": (torus_i, "2x2 grid torus on labels a-d, not vertex 3-colourable.",
                {"A_W": "Z_3", "euler_characteristic": 0, "three_colourable": False}),
    "torus-ii": (torus_ii, "2x2 grid torus on labels a-d; a -> 0, d -> 1, b, c -> 2 is a vertex 3-colouring.",
                 {"A_W": "Z^2", "euler_characteristic": 0, "three_colourable": True}),
    "torus-iii": (torus_iii, "3x2 grid torus on labels a-f, not vertex 3-colourable.",
                  {"A_W": "Z_9", "euler_characteristic": 0, "three_colourable": False}),
    "torus-cw": (torus_cw, "Vertex 3-coloured torus whose white and black groups differ.",
                 {"A_W": "Z^2 + Z_6", "A_B": "Z^2 + Z_3", "euler_characteristic": 0, "three_colourable": True}),
    "figure-1": (figure_1, "13-vertex sphere with doubled edges and a repeated vertex triple.",
                 {"euler_characteristic": 2, "three_colourable": True}),
    "two-face": (two_face, "Two triangles glued along their boundary.",
                 {"A_W": "Z^2", "A_B": "Z^2", "euler_characteristic": 2, "three_colourable": True}),
    "intercalate": (intercalate, "Smallest latin bitrade.",
                    {"A_W": "Z^2 + Z_2", "A_B": "Z^2 + Z_2", "euler_characteristic": 2, "three_colourable": True}),
}


def check(name: str, t: Triangulation, expected: dict) -> list[str]:
    problems = []
    rep = validate(t)
    if rep.euler_characteristic != expected["euler_characteristic"]:
        problems.append(f"chi {rep.euler_characteristic}")
    for key, colour in (("A_W", WHITE), ("A_B", BLACK)):
        if key in expected:
            got = group_aw(t, colour).group
            if got != AbelianGroup.parse(expected[key]):
                problems.append(f"{key} = {got}, expected {expected[key]}")
    try:
        tricolour(t)
        colourable = True
    except NotThreeColourable:
        colourable = False
    if colourable != expected["three_colourable"]:
        problems.append(f"three_colourable = {colourable}")
    return problems


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="verify only, do not write")
    args = ap.parse_args(argv)
    failed = False
    for name, (build, note, expected) in BUILDERS.items():
        t = build()
        problems = check(name, t, expected)
        status = "ok" if not problems else "MISMATCH " + "; ".join(problems)
        print(f"{name:12s} {validate(t).genus_descriptor:26s} {status}")
        failed |= bool(problems)
        if not args.check and not problems:
            payload = {"name": name, "description": note, "expected": expected, "triangulation": to_json(t)}
            (DATA / f"{name}.json").write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
