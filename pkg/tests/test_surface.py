import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bitrade_lab.bitrade import bitrade_to_triangulation, harvest_spherical
from bitrade_lab.families import exp_family, fixture
from bitrade_lab.surface import (
    BLACK,
    WHITE,
    DisconnectedTriangulation,
    DuplicateEdgeUse,
    Face,
    MalformedTriangulation,
    NotThreeColourable,
    Triangulation,
    UnmatchedEdge,
    components_from_json,
    from_json,
    parse_triples,
    rotation_walks,
    to_json,
    tricolour,
    validate,
)

FGG_W = "012 034 057 068 135 146 178 236 247 258".split()
FGG_B = "013 026 047 058 124 157 168 235 278 346".split()


def two_face():
    return parse_triples(["r", "c", "s"], [("r", "c", "s")], [("r", "c", "s")])


def test_parse_two_face():
    t = two_face()
    assert len(t.faces) == 2 and t.n_edges == 3 and t.t == 1


def test_parse_fgg_counts():
    t = parse_triples(list("012345678"), [tuple(x) for x in FGG_W], [tuple(x) for x in FGG_B])
    assert len(t.vertices) == 9 and len(t.faces) == 20 and t.n_edges == 30


def test_parse_unmatched():
    with pytest.raises(UnmatchedEdge):
        parse_triples(["r", "c", "s"], [("r", "c", "s")], [])


def test_parse_duplicate_pair():
    with pytest.raises(DuplicateEdgeUse):
        parse_triples(["a", "b", "c", "d"], [("a", "b", "c"), ("a", "b", "d")], [("a", "b", "c"), ("a", "b", "d")])


def test_face_needs_distinct_corners():
    with pytest.raises(MalformedTriangulation):
        Face(0, WHITE, ("a", "a", "b"))


def test_gluing_must_join_opposite_colours():
    faces = [Face(0, WHITE, ("a", "b", "c")), Face(1, BLACK, ("a", "b", "c"))]
    bad = [((0, 0), (0, 1)), ((0, 2), (1, 2)), ((1, 0), (1, 1))]
    with pytest.raises(MalformedTriangulation):
        Triangulation(("a", "b", "c"), faces, bad)


def test_validate_examples():
    r = validate(two_face())
    assert (r.euler_characteristic, r.is_surface, r.orientable, r.genus_descriptor) == (2, True, True, "sphere")
    r = validate(fixture("fgg"))
    assert r.euler_characteristic == -1 and r.is_surface and not r.orientable
    assert r.genus_descriptor == "nonorientable-crosscap 3"
    r = validate(fixture("torus-cw"))
    assert r.euler_characteristic == 0 and r.orientable and r.genus_descriptor == "orientable-genus 1"


def test_rotation_two_face():
    (w,) = rotation_walks(two_face())["r"]
    assert len(w) == 2


def test_figure1_s3_walk_not_simple():
    walks = rotation_walks(fixture("figure-1"))
    assert len(walks["s3"]) == 1
    assert not walks["s3"][0].is_simple_cycle
    assert validate(fixture("figure-1")).is_sphere


def test_exp_rotations_simple():
    for ws in rotation_walks(exp_family(3, 2)).values():
        assert len(ws) == 1 and ws[0].is_simple_cycle


def test_disconnected_input_is_split():
    # two spheres that share the label p but no face
    white = [("p", "a", "b"), ("p", "x", "y")]
    black = [("p", "a", "b"), ("p", "x", "y")]
    faces = [Face(i, WHITE, tr) for i, tr in enumerate(white)] + [Face(2 + i, BLACK, tr) for i, tr in enumerate(black)]
    gluing = [((0, 0), (2, 0)), ((0, 1), (2, 1)), ((0, 2), (2, 2)), ((1, 0), (3, 0)), ((1, 1), (3, 1)), ((1, 2), (3, 2))]
    with pytest.raises(DisconnectedTriangulation):
        Triangulation(("p", "a", "b", "x", "y"), faces, gluing)
    comps = components_from_json(
        {"vertices": ["p", "a", "b", "x", "y"], "white": [list(x) for x in white], "black": [list(x) for x in black]}
    )
    assert len(comps) == 2 and all(validate(c).is_sphere for c in comps)


def test_pseudo_surface():
    # identify r1 and r2 of a sphere; they share no face, so the result is a
    # valid connected complex whose link at r1 has two components
    t = exp_family(3, 2)
    faces = [Face(f.id, f.colour, tuple("r1" if v == "r2" else v for v in f.corners)) for f in t.faces]
    merged = Triangulation(tuple(v for v in t.vertices if v != "r2"), faces, t.gluing)
    r = validate(merged)
    assert not r.is_surface
    assert r.pinch_vertices == frozenset({"r1"})
    assert r.genus_descriptor == "pseudo-surface"
    assert len(rotation_walks(merged)["r1"]) == 2


def test_tricolour_examples():
    col = tricolour(two_face())
    assert sorted(col.assignment.values()) == ["C", "R", "S"]
    with pytest.raises(NotThreeColourable) as err:
        tricolour(fixture("fgg"))
    assert err.value.witness is not None
    with pytest.raises(NotThreeColourable):
        tricolour(fixture("torus-i"))


def test_json_round_trip_triples():
    t = parse_triples(list("012345678"), [tuple(x) for x in FGG_W], [tuple(x) for x in FGG_B])
    data = to_json(t)
    assert "gluing" not in data
    assert to_json(from_json(data)) == data


def test_json_round_trip_gluing():
    t = fixture("figure-1")
    data = to_json(t)
    assert "gluing" in data
    t2 = from_json(data)
    assert t2 == t


harvested = [bitrade_to_triangulation(b) for n in (4, 5, 6) for b in harvest_spherical(n, 11, 8)]


@pytest.mark.parametrize("t", harvested + [exp_family(k, w) for k in (2, 3, 5) for w in (1, 2, 3)])
def test_sphere_invariants(t):
    r = validate(t)
    assert 2 * t.n_edges == 3 * len(t.faces)
    assert r.euler_characteristic == len(t.vertices) - t.t
    assert r.is_sphere
    col = tricolour(t)
    for f in t.faces:
        assert sorted(col[v] for v in f.corners) == ["C", "R", "S"]
    for ws in rotation_walks(t).values():
        (w,) = ws
        colours = [t.face(fid).colour for fid, _ in w.corners]
        assert len(colours) % 2 == 0
        assert all(a != b for a, b in zip(colours, colours[1:] + colours[:1]))


@pytest.mark.parametrize("name", ["torus-ii", "torus-cw", "figure-1", "two-face", "intercalate"])
def test_tricolour_implies_orientable(name):
    t = fixture(name)
    tricolour(t)
    assert validate(t).orientable


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(1, 3))
def test_exp_family_json_round_trip(k, w):
    t = exp_family(k, w)
    assert to_json(from_json(to_json(t))) == to_json(t)
