import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from jordanstrata.classical import signed_perms, transport_labels
from jordanstrata.core import build_root_system
from jordanstrata.orbits import orbit_labels, parse_orbit_label
from jordanstrata.pseudolevi import TorusCoset, pseudo_levi, pseudo_levi_from_nodes
from jordanstrata.stratify import (
    GuardError, JordanTriple, canonical_triple, central_translate, closure_contains_point,
    closure_witness, enumerate_jordan_classes, generic_point, group_point, is_sheet,
    isolated_points_in_regular_closure, jordan_triple, meets_unipotent, point_key,
    regular_closure_contains, sln_strata, triple_to_dict,
)
from jordanstrata.weyl import enumerate_weyl

F = Fraction


def test_a1_has_five_jordan_classes():
    rs = build_root_system("A1")
    ts = enumerate_jordan_classes(rs)
    assert len(ts) == 5
    assert sorted(t.dimension for t in ts) == [0, 0, 2, 2, 3]
    assert sum(is_sheet(t) for t in ts) == 3


@pytest.mark.parametrize("name,count", [("A2", 12), ("A3", 32), ("B2", 19), ("C2", 19),
                                        ("B3", 50), ("C3", 62)])
def test_class_counts(name, count):
    assert len(enumerate_jordan_classes(build_root_system(name))) == count


def test_guards():
    with pytest.raises(GuardError):
        enumerate_jordan_classes(build_root_system("E6"))
    with pytest.raises(GuardError):
        enumerate_jordan_classes(build_root_system("A6"))
    with pytest.raises(GuardError):
        sln_strata(8)


def test_inadmissible_coset_is_rejected():
    b2 = build_root_system("B2")
    with pytest.raises(ValueError, match="admissible"):
        jordan_triple(b2, pseudo_levi_from_nodes(b2, (0, 1)), (0, 0))


@pytest.mark.parametrize("name", ["A2", "B2", "C3"])
def test_canonical_form_is_idempotent(name):
    rs = build_root_system(name)
    ts = enumerate_jordan_classes(rs)
    assert len(set(ts)) == len(ts)
    for t in ts:
        assert canonical_triple(rs, t) == t


def _conjugate(t, w, signed):
    """The triple w t built from scratch."""
    rs = t.rs
    pl = pseudo_levi(rs, [w(b) for b in t.pseudo_levi.base])
    x = w.act_coweight(t.x_s)
    pi, sg = signed
    pairs = transport_labels(t.factors, t.labels, pi[0], sg[0]) if t.orbit else ()
    return JordanTriple(pl, TorusCoset(pl, x), pairs)


@pytest.mark.parametrize("name", ["A3", "B3", "C3"])
def test_canonical_form_is_weyl_invariant(name):
    rs = build_root_system(name)
    wt = enumerate_weyl(rs)
    rng = random.Random(4)
    ts = enumerate_jordan_classes(rs)
    for t in rng.sample(ts, 15):
        for _ in range(3):
            w = wt.element(rng.randrange(len(wt)))
            u = _conjugate(t, w, signed_perms(rs, w.perm[None, :]))
            assert canonical_triple(rs, u) == t


@pytest.mark.parametrize("name", ["A2", "B2", "C3"])
def test_generic_point_dimension(name):
    rs = build_root_system(name)
    for t in enumerate_jordan_classes(rs):
        p = generic_point(t)
        assert p.roots == t.pseudo_levi.roots
        assert p.orbit_dimension == t.class_orbit_dimension
        assert closure_contains_point(t, p)
        assert regular_closure_contains(t, p)
    # the regular family is dense
    assert max(t.dimension for t in enumerate_jordan_classes(rs)) == rs.dimension()


def _closure_order(rs):
    ts = enumerate_jordan_classes(rs)
    pts = [generic_point(t) for t in ts]
    le = {(i, j): closure_contains_point(ts[j], pts[i])
          for i in range(len(ts)) for j in range(len(ts))}
    return ts, le


@pytest.mark.parametrize("name", ["A2", "B2"])
def test_closure_is_a_partial_order(name):
    ts, le = _closure_order(build_root_system(name))
    n = len(ts)
    for i in range(n):
        assert le[i, i]
    for i, j in itertools.permutations(range(n), 2):
        if le[i, j] and le[j, i]:
            pytest.fail(f"{ts[i]} and {ts[j]} lie in each other's closures")
    for i, j, k in itertools.product(range(n), repeat=3):
        if le[i, j] and le[j, k]:
            assert le[i, k]
    # closures of smaller classes have smaller dimension
    for i, j in itertools.permutations(range(n), 2):
        if le[i, j]:
            assert ts[i].dimension < ts[j].dimension


@pytest.mark.parametrize("name", ["A2", "B2", "C2"])
def test_regular_closure_lies_in_closure(name):
    rs = build_root_system(name)
    ts = enumerate_jordan_classes(rs)
    pts = [generic_point(t) for t in ts]
    for t, p in itertools.product(ts, pts):
        if regular_closure_contains(t, p):
            assert closure_contains_point(t, p)


def test_a1_closures():
    rs = build_root_system("A1")
    reg = jordan_triple(rs, ())
    one = group_point(rs, (0,), [parse_orbit_label("A1:[1,1]")])
    u = group_point(rs, (0,), [parse_orbit_label("A1:[2]")])
    assert closure_contains_point(reg, one) and closure_contains_point(reg, u)
    assert regular_closure_contains(reg, u) and not regular_closure_contains(reg, one)
    assert closure_witness(reg, u) is not None
    iso = isolated_points_in_regular_closure(reg)
    assert [(p.semisimple, str(p.labels[0])) for p in iso] == [
        ((F(0),), "A1:[2]"), ((F(1),), "A1:[2]")]
    minus = jordan_triple(rs, (0,), (1,), [parse_orbit_label("A1:[2]")])
    assert not closure_contains_point(minus, u)
    assert closure_witness(minus, u) is None


@pytest.mark.parametrize("name", ["A2", "B2", "C2", "B3"])
def test_meets_unipotent_matches_closure(name):
    rs = build_root_system(name)
    zero = tuple(F(0) for _ in range(rs.rank))
    full = group_point(rs, zero)
    unipotents = [full.with_labels([l]) for l in orbit_labels(rs.letter, rs.rank)]
    for t in enumerate_jordan_classes(rs):
        hit = any(closure_contains_point(t, p) for p in unipotents)
        assert hit == meets_unipotent(t)


def test_point_key_is_conjugation_invariant():
    rs = build_root_system("B3")
    wt = enumerate_weyl(rs)
    x = (F(1, 3), F(-1, 2), F(2, 5))
    k = point_key(group_point(rs, x))
    for j in range(0, len(wt), 11):
        y = wt.element(j).act_coweight(x)
        y = tuple(a + int(c) for a, c in zip(y, rs.coroot_coweights[j % rs.rank]))
        assert point_key(group_point(rs, y)) == k
    # root values mod 1 are a class invariant, so distinct multisets give distinct keys
    def spectrum(z):
        return sorted(v % 1 for v in rs.pair_all(z))
    for z in [(F(1, 3), F(1, 3), F(2, 5)), (F(1, 3), F(1, 2), F(1, 5)), (F(2, 3), F(0), F(2, 5))]:
        assert spectrum(z) != spectrum(x)
        assert point_key(group_point(rs, z)) != k


def test_sln_strata():
    got = {n: sorted(s.components for s in sln_strata(n)) for n in range(2, 5)}
    assert got == {2: [1, 2], 3: [1, 1, 3], 4: [1, 1, 1, 2, 4]}
    for n in range(2, 5):
        assert all(s.disjoint for s in sln_strata(n))


def test_central_translate():
    rs = build_root_system("A2")
    reg = jordan_triple(rs, ())
    assert central_translate(reg, 1) == reg
    t = jordan_triple(rs, (0, 1), None, [parse_orbit_label("A2:[3]")])
    assert central_translate(t, 3) == t
    assert central_translate(t, 1) != t
    with pytest.raises(GuardError):
        central_translate(jordan_triple(build_root_system("B2"), ()), 1)


def test_triple_serialisation():
    rs = build_root_system("C2")
    t = jordan_triple(rs, (1,), None, [parse_orbit_label("C1:[2]")])
    d = triple_to_dict(t)
    assert d["type"] == "A1" and d["is_sheet"] is False and d["dim"] == t.dimension
    assert set(d) == {"pi", "type", "coset", "orbits", "dim", "is_sheet"}
