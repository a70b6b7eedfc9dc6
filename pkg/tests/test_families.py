import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bitrade_lab.bitrade import triangulation_to_bitrade
from bitrade_lab.families import (
    FIXTURES,
    ExpFamilyParams,
    InvalidParams,
    UnknownFixture,
    exp_family,
    fixture,
    fixture_expectations,
)
from bitrade_lab.groups import AbelianGroup
from bitrade_lab.suites import family_row, fixture_row, w_quotient
from bitrade_lab.surface import tricolour, validate
from bitrade_lab.trade import b_group, c_group, group_aw, t_matrix


def test_params_validation():
    with pytest.raises(InvalidParams):
        ExpFamilyParams(1, 2)
    with pytest.raises(InvalidParams):
        ExpFamilyParams(3, 0)
    p = ExpFamilyParams(3, 2)
    assert p.t == 12 and p.n_vertices == 14


def test_exp_3_2():
    t = exp_family(ExpFamilyParams(3, 2))
    assert validate(t).is_sphere and t.t == 12 and len(t.vertices) == 14
    col = tricolour(t)
    c = c_group(b_group(t_matrix(t, col)).group)
    assert c == AbelianGroup(0, (2, 6))
    assert group_aw(t).group.rank == 4


def test_exp_4_3_order():
    t = exp_family(4, 3)
    c = c_group(b_group(t_matrix(t, tricolour(t))).group)
    assert c.torsion_order == 4 * 3**3


def test_exp_4_3_w_quotient():
    t = exp_family(4, 3)
    q = w_quotient(t_matrix(t, tricolour(t)).entries, 3)
    assert q == AbelianGroup(0, (3, 3, 3, 3))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 8), st.integers(1, 5))
def test_family_invariants(k, w):
    p = ExpFamilyParams(k, w)
    t = exp_family(p)
    assert len(t.vertices) == p.n_vertices and t.t == p.t
    assert validate(t).is_sphere
    assert t.is_simple()
    col = tricolour(t)
    triangulation_to_bitrade(t, col)
    row = family_row(k, w)
    assert row["passed"], row


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_loads_and_matches(name):
    t = fixture(name)
    assert fixture_expectations(name)["euler_characteristic"] == validate(t).euler_characteristic
    row = fixture_row(name)
    assert row["passed"], row


def test_fixture_groups():
    assert str(group_aw(fixture("fgg")).group) == "Z_3 + Z_6"
    assert str(group_aw(fixture("torus-iii")).group) == "Z_9"
    t = fixture("two-face")
    assert validate(t).euler_characteristic == 2 and group_aw(t).group == AbelianGroup(2)


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        fixture("nope")


def test_torus_ii_is_vertex_three_colourable():
    # a -> R, d -> C, b and c -> S is an explicit proper colouring of this transcription
    t = fixture("torus-ii")
    explicit = {"a": 0, "d": 1, "b": 2, "c": 2}
    assert all(sorted(explicit[v] for v in f.corners) == [0, 1, 2] for f in t.faces)
    tricolour(t)
