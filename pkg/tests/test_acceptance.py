"""Acceptance criteria 1-8, each printing one PASS/FAIL line."""

import itertools
import random
import time

import pytest

from jordanstrata.core import build_root_system
from jordanstrata.fixtures import SL4_EXAMPLE, compare_codim1, sl4_example_counts
from jordanstrata.localgeom import (
    local_branch_count, local_branch_count_at_r, sheet_smooth_classical,
)
from jordanstrata.orbits import (
    LeviShape, OrbitLabel, algebra_dimension, dominance_leq, induce_partition, is_rigid,
    is_rigid_by_search, is_very_even, levi_dimension, orbit_dimension, orbit_labels,
    parse_orbit_label,
)
from jordanstrata.stratify import (
    closure_contains_point, enumerate_jordan_classes, generic_point, group_point,
    is_sheet, sln_strata,
)
from jordanstrata.weyl import CapExceeded


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_1_sl4_branch_counts(capsys):
    t0 = time.perf_counter()
    got = sl4_example_counts()
    dt = time.perf_counter() - t0
    ok = tuple(got) == SL4_EXAMPLE["expected"] and dt < 1.0
    report(capsys, 1, ok, f"SL4 counts (r, rv) = {got}, expected (2, 1), {dt:.2f}s")


def test_criterion_2_codim1_lists(capsys):
    t0 = time.perf_counter()
    results = {name: compare_codim1(name) for name in ["G2", "F4", "E6", "E7"]}
    dt = time.perf_counter() - t0
    bad = {n: (c.missing, c.extra) for n, c in results.items() if not c.ok}
    ok = not bad and dt < 300
    report(capsys, 2, ok, f"G2/F4/E6/E7 codim-one lists, {dt:.1f}s, mismatches (missing, extra): "
           f"{bad or 'none'}")


def test_criterion_2_optional_e8(capsys):
    t0 = time.perf_counter()
    try:
        c = compare_codim1("E8")
    except CapExceeded:
        with capsys.disabled():
            print("\nACCEPTANCE 2 (E8 optional): skipped(cap)")
        pytest.skip("skipped(cap)")
    dt = time.perf_counter() - t0
    report(capsys, "2 (E8 optional)", c.ok and dt < 3600,
           f"E8 codim-one list, {len(c.computed)} entries, {dt:.1f}s, "
           f"missing={c.missing} extra={c.extra}")


def test_criterion_3_sln_sheets_and_strata(capsys):
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 6):
        rs = build_root_system(f"A{n - 1}")
        for s in sln_strata(n):
            if not s.disjoint:
                bad.append(f"SL{n} stratum {s.sheet} has overlapping translates")
            for u in s.translates:
                ok, wit = sheet_smooth_classical(rs, u)
                if not ok:
                    bad.append(f"SL{n} sheet {u}: counts {[c for _, c in wit]}")
    dt = time.perf_counter() - t0
    report(capsys, 3, not bad and dt < 120,
           f"SL_n sheets n=2..5 smooth, strata disjoint-or-equal, {dt:.1f}s, failures: "
           f"{bad or 'none'}")


def _label(letter, rank, parts):
    tag = "I" if is_very_even(letter, parts) else None
    return OrbitLabel(letter, rank, parts, tag)


def _random_instance(rng):
    letter = rng.choice("BCD")
    rank = rng.randint(4 if letter == "D" else 2, 6)
    m = rng.randint(0, rank - 2)
    rest, blocks = rank - m, []
    while rest:
        a = rng.randint(1, rest)
        blocks.append(a)
        rest -= a
    orbs = [rng.choice(orbit_labels("A", a - 1)) for a in blocks]
    orbs.append(rng.choice(orbit_labels(letter, m)))
    return letter, rank, LeviShape(tuple(blocks), (letter, m)), orbs


def _in_stages(letter, rank, shape, orbs):
    """Induce the last gl block into the tail first, then the rest."""
    blocks, m = shape.gl_blocks, shape.tail[1]
    a = blocks[-1]
    mid = induce_partition(LeviShape((a,), (letter, m)), [orbs[-2], orbs[-1]], letter, a + m)
    mid = _label(letter, a + m, mid)
    return induce_partition(LeviShape(blocks[:-1], (letter, a + m)), orbs[:-2] + [mid],
                            letter, rank)


def _merge_first_blocks(letter, rank, shape, orbs):
    """Induce the first two gl blocks into one gl block first, then the rest."""
    a, b = shape.gl_blocks[:2]
    merged = induce_partition(LeviShape((a, b)), orbs[:2], "A", a + b - 1)
    lab = OrbitLabel("A", a + b - 1, merged)
    return induce_partition(LeviShape((a + b,) + shape.gl_blocks[2:], shape.tail),
                            [lab] + orbs[2:], letter, rank)


def test_criterion_4_induction_invariants(capsys):
    t0 = time.perf_counter()
    rng = random.Random(20261016)
    bad, n = [], 0
    while n < 300:
        letter, rank, shape, orbs = _random_instance(rng)
        n += 1
        lam = induce_partition(shape, orbs, letter, rank)
        ind = _label(letter, rank, lam)
        inner = sum(orbit_dimension(o) for o in orbs)
        want = inner + algebra_dimension(letter, rank) - levi_dimension(shape, letter)
        if orbit_dimension(ind) != want:
            bad.append(("dim", letter, rank, shape, orbs))
        if len(shape.gl_blocks) >= 1 and _in_stages(letter, rank, shape, orbs) != lam:
            bad.append(("stages", letter, rank, shape, orbs))
        if len(shape.gl_blocks) >= 2 and _merge_first_blocks(letter, rank, shape, orbs) != lam:
            bad.append(("merge", letter, rank, shape, orbs))
    dt = time.perf_counter() - t0
    report(capsys, 4, not bad and dt < 60,
           f"{n} random B/C/D induction instances (rank <= 6), {dt:.1f}s, failures: "
           f"{bad[:3] or 'none'}")


def test_criterion_5_rigidity_oracle(capsys):
    t0 = time.perf_counter()
    bad, n = [], 0
    for letter in "ABCD":
        for rank in range(1, 5):
            for o in orbit_labels(letter, rank):
                n += 1
                if is_rigid(o) != is_rigid_by_search(o):
                    bad.append(str(o))
    dt = time.perf_counter() - t0
    report(capsys, 5, not bad and dt < 120,
           f"{n} orbits in A/B/C/D rank <= 4, {dt:.1f}s, disagreements: {bad or 'none'}")


def _points_over(rs, xs):
    """All points (x, v) with x from xs and v running over every label choice."""
    out = []
    for x in xs:
        base = group_point(rs, x)
        choices = [f.labels() for f in base.factors]
        for labs in itertools.product(*choices):
            out.append(base.with_labels(list(labs)))
    return out


def test_criterion_6_closure_consistency(capsys):
    t0 = time.perf_counter()
    bad, checks = [], 0
    for n in range(2, 5):
        rs = build_root_system(f"A{n - 1}")
        ts = enumerate_jordan_classes(rs)
        gps = [generic_point(t) for t in ts]
        le = {}
        for i, t in enumerate(ts):
            for j, p in enumerate(gps):
                le[j, i] = closure_contains_point(t, p)
            if not le[i, i]:
                bad.append(f"not reflexive: {t}")
        for i, j, k in itertools.product(range(len(ts)), repeat=3):
            if le[i, j] and le[j, k]:
                checks += 1
                if not le[i, k]:
                    bad.append(f"not transitive: {ts[i]} < {ts[j]} < {ts[k]}")
        xs = sorted({p.semisimple for p in gps})
        pts = _points_over(rs, xs)
        for t in ts:
            inside = [p for p in pts if closure_contains_point(t, p)]
            for p in inside:
                for q in pts:
                    if q.semisimple != p.semisimple or q.factors != p.factors:
                        continue
                    checks += 1
                    below = all(dominance_leq(a, b) for a, b in zip(q.labels, p.labels))
                    if below and not closure_contains_point(t, q):
                        bad.append(f"not monotone: {t} contains {p} but not {q}")
    dt = time.perf_counter() - t0
    report(capsys, 6, not bad,
           f"SL_n n <= 4 closures reflexive/transitive/monotone ({checks} checks), {dt:.1f}s, "
           f"failures: {bad[:3] or 'none'}")


def test_criterion_7_branch_count_monotonicity(capsys):
    t0 = time.perf_counter()
    bad, pairs = [], 0
    for name in ["A1", "A2", "A3", "B2", "B3", "C2", "C3"]:
        rs = build_root_system(name)
        ts = enumerate_jordan_classes(rs)
        pts = [generic_point(t) for t in ts]
        for t in ts:
            for p in pts:
                pairs += 1
                at_r = local_branch_count_at_r(rs, t, p.semisimple)
                at_rv = local_branch_count(rs, t, p)
                if at_rv > at_r:
                    bad.append(f"{name} {t} at {p}: {at_rv} > {at_r}")
    dt = time.perf_counter() - t0
    report(capsys, 7, not bad,
           f"{pairs} (tau, rv) pairs in classical rank <= 3, {dt:.1f}s, violations: "
           f"{bad[:3] or 'none'}")


def test_criterion_8_rigid_partition_fixtures(capsys):
    cases = ["D6:[2,2,2,2,1,1,1,1]", "A1:[1,1]", "B2:[1,1,1,1,1]"]
    bad = []
    for text in cases:
        o = parse_orbit_label(text)
        if not (is_rigid(o) and is_rigid_by_search(o)):
            bad.append(text)
    report(capsys, 8, not bad, f"{cases} valid and rigid, failures: {bad or 'none'}")
