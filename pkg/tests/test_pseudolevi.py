import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jordanstrata.core import build_root_system
from jordanstrata.pseudolevi import (
    TorusCoset, admissible_cosets, center_component_group, coset_admissible,
    enumerate_pseudo_levis, format_pseudo_levi, is_levi, isolated_cosets, parse_pseudo_levi,
    pseudo_levi, pseudo_levi_from_nodes,
)
from jordanstrata.weyl import subsystem_orbit_conjugate


@pytest.mark.parametrize("name,count", [("A1", 2), ("A2", 3), ("A3", 5), ("B2", 5), ("C2", 5),
                                        ("G2", 6), ("B3", 10), ("F4", 20), ("E6", 21)])
def test_class_counts(name, count):
    assert len(enumerate_pseudo_levis(build_root_system(name))) == count


def test_class_representatives_are_pairwise_non_conjugate():
    rs = build_root_system("C3")
    reps = enumerate_pseudo_levis(rs)
    for a, b in itertools.combinations(reps, 2):
        if a.subsystem.type_multiset == b.subsystem.type_multiset:
            assert not subsystem_orbit_conjugate(rs, a.subsystem, b.subsystem)


def test_every_extended_subset_is_covered():
    rs = build_root_system("B3")
    reps = enumerate_pseudo_levis(rs)
    for k in range(rs.rank + 1):
        for nodes in itertools.combinations(range(rs.rank + 1), k):
            sub = pseudo_levi_from_nodes(rs, nodes).subsystem
            assert any(r.subsystem.type_multiset == sub.type_multiset
                       and subsystem_orbit_conjugate(rs, r.subsystem, sub) for r in reps)


def test_representatives_prefer_standard_position():
    rs = build_root_system("A3")
    reps = enumerate_pseudo_levis(rs)
    assert [r.nodes for r in reps] == [(), (1,), (1, 2), (1, 3), (1, 2, 3)]


def test_component_groups():
    a1 = build_root_system("A1")
    assert center_component_group(a1, pseudo_levi(a1, [0])) == [2]
    a3 = build_root_system("A3")
    assert center_component_group(a3, pseudo_levi(a3, [0, 1, 2])) == [4]
    assert center_component_group(a3, pseudo_levi(a3, [0])) == []
    # Sp4 Levi Sp2 x GL1 has a disconnected centre
    c2 = build_root_system("C2")
    assert center_component_group(c2, pseudo_levi(c2, [1])) == [2]
    e6 = build_root_system("E6")
    assert center_component_group(e6, pseudo_levi_from_nodes(e6, range(1, 7))) == [3]


def test_isolated_cosets():
    c2 = build_root_system("C2")
    assert len(isolated_cosets(c2, pseudo_levi_from_nodes(c2, (0, 1)))) == 2
    assert len(isolated_cosets(c2, pseudo_levi_from_nodes(c2, (0, 2)))) == 2
    g2 = build_root_system("G2")
    pts = isolated_cosets(g2, pseudo_levi_from_nodes(g2, (0, 2)))
    assert sorted(p.canonical_point for p in pts) == [
        (Fraction(1, 3), Fraction(0)), (Fraction(2, 3), Fraction(0))]
    with pytest.raises(ValueError, match="not full rank"):
        isolated_cosets(g2, pseudo_levi_from_nodes(g2, (1,)))


def test_admissibility():
    b2 = build_root_system("B2")
    pl = pseudo_levi_from_nodes(b2, (0, 1))
    zero = (Fraction(0), Fraction(0))
    # at x = 0 the centraliser is all of B2, larger than 2A1
    assert not coset_admissible(b2, pl, zero)
    assert coset_admissible(b2, pl, (Fraction(0), Fraction(1, 2)))
    with pytest.raises(ValueError, match="not centralized"):
        coset_admissible(b2, pl, (Fraction(1, 3), Fraction(0)))
    with pytest.raises(ValueError, match="not centralized"):
        TorusCoset(pl, (Fraction(1, 3), Fraction(0)))
    a2 = build_root_system("A2")
    assert coset_admissible(a2, pseudo_levi(a2, [0]), (Fraction(0), Fraction(0)))


def test_is_levi():
    b3 = build_root_system("B3")
    assert is_levi(b3, pseudo_levi_from_nodes(b3, (1, 3)))
    assert not is_levi(b3, pseudo_levi_from_nodes(b3, (0, 1)))
    a3 = build_root_system("A3")
    # every pseudo-Levi of type A is a Levi
    for pl in enumerate_pseudo_levis(a3):
        if pl.rank < a3.rank:
            assert pl.is_levi_flag


def test_format_round_trip():
    e7 = build_root_system("E7")
    pl = pseudo_levi_from_nodes(e7, (0, 2, 3))
    text = format_pseudo_levi(pl)
    assert text == "E7:{a0,a2,a3}"
    assert parse_pseudo_levi(e7, text).nodes == (0, 2, 3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "G2"]), st.data())
def test_coset_key_is_invariant_under_v_and_coroots(name, data):
    rs = build_root_system(name)
    reps = [p for p in enumerate_pseudo_levis(rs) if 0 < p.rank < rs.rank]
    pl = data.draw(st.sampled_from(reps))
    cosets = admissible_cosets(rs, pl)
    c = data.draw(st.sampled_from(cosets))
    x = list(c.base_point)
    for b in pl.center_subspace.basis:
        t = Fraction(data.draw(st.integers(-7, 7)), data.draw(st.integers(1, 9)))
        x = [xi + t * bi for xi, bi in zip(x, b)]
    for i in range(rs.rank):
        n = data.draw(st.integers(-3, 3))
        x = [xi + n * int(ci) for xi, ci in zip(x, rs.coroot_coweights[i])]
    assert pl.coset_key(x) == c.key
    assert TorusCoset(pl, tuple(x)) == c
