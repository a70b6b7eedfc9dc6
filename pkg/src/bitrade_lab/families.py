"""The exponential family of sphere triangulations and the bundled fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .surface import Triangulation, from_json, parse_triples

FIXTURES = (
    "fgg",
    "torus-i",
    "torus-ii",
    "torus-iii",
    "torus-cw",
    "figure-1",
    "two-face",
    "intercalate",
)


class InvalidParams(ValueError):
    pass


class UnknownFixture(KeyError):
    pass


@dataclass(frozen=True)
class ExpFamilyParams:
    k: int  # number of regions
    w: int = 2  # each region holds 2w black faces

    def __post_init__(self):
        if self.k < 2 or self.w < 1:
            raise InvalidParams(f"need k >= 2 and w >= 1, got k={self.k}, w={self.w}")

    @property
    def t(self) -> int:
        return 2 * self.w * self.k

    @property
    def n_vertices(self) -> int:
        return 2 + self.k * (2 * self.w - 1) + self.k


def _boundary(i: int, w: int) -> list[str]:
    # s' -> c_i.1 -> s_i.1 -> ... -> c_i.w -> s''
    path = ["s'"]
    for m in range(1, w + 1):
        path.append(f"c{i}.{m}")
        if m < w:
            path.append(f"s{i}.{m}")
    path.append("s''")
    return path


def exp_family(p: ExpFamilyParams | int, w: int | None = None) -> Triangulation:
    """Sphere tiled by ``k`` regions, each a fan of ``4w`` triangles around ``r_i``.

    Region ``i`` is bounded by boundary paths ``i`` and ``i+1`` (cyclically),
    each running from ``s'`` to ``s''`` through ``2w`` edges.  Colours alternate
    around ``r_i``, white on the side ``(s', c_i.1)``.  For ``w = 2`` every
    T-matrix row is ``2, -4, 2`` around the cycle.
    """
    if not isinstance(p, ExpFamilyParams):
        p = ExpFamilyParams(p, 2 if w is None else w)
    k, w = p.k, p.w
    bounds = {i: _boundary(i, w) for i in range(1, k + 1)}
    white, black = [], []
    for i in range(1, k + 1):
        r = f"r{i}"
        own, nxt = bounds[i], bounds[i % k + 1]
        for j in range(2 * w):
            # corners stored as (r, c, s)
            a, b = own[j], own[j + 1]
            tri = (r, a, b) if a.startswith("c") else (r, b, a)
            (white if j % 2 == 0 else black).append(tri)
        for j in range(2 * w):
            a, b = nxt[j], nxt[j + 1]
            tri = (r, a, b) if a.startswith("c") else (r, b, a)
            (white if j % 2 == 1 else black).append(tri)
    vertices = ["s'", "s''"]
    for i in range(1, k + 1):
        vertices.append(f"r{i}")
        vertices.extend(bounds[i][1:-1])
    return parse_triples(vertices, white, black)


def fixture_data(name: str) -> dict:
    if name not in FIXTURES:
        raise UnknownFixture(name)
    text = resources.files("bitrade_lab").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def fixture(name: str) -> Triangulation:
    """Load a bundled triangulation by name (see ``FIXTURES``)."""
    return from_json(fixture_data(name)["triangulation"])


def fixture_expectations(name: str) -> dict:
    """Published groups recorded alongside each fixture."""
    return fixture_data(name).get("expected", {})
