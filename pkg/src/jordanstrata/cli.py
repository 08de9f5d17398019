"""Command line interface.

Exit codes: 0 success (or point contained), 1 failure (fixture mismatch or
internal error), 2 usage or guard violation, 3 point not contained / not
conjugate.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .core import CartanTypeError, build_root_system, format_vector, parse_vector
from .orbits import LeviShape, OrbitLabel, VeryEvenAmbiguity, induce_tagged, ls_induce, \
    parse_orbit_label
from .pseudolevi import format_pseudo_levi, parse_pseudo_levi, pseudo_levi
from .stratify import (
    DEFAULT_RANK_GUARD, GuardError, enumerate_jordan_classes, generic_point, group_point,
    is_sheet, jordan_triple, closure_contains_point, sln_strata, triple_to_dict,
)
from .weyl import DEFAULT_BFS_CAP, DEFAULT_WEYL_CAP, CapExceeded

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NOT_CONTAINED = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------------
# output


def _emit(args, payload, text_lines, tsv_rows=None):
    fmt = args.format
    if fmt == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif fmt == "tsv":
        buf = io.StringIO()
        w = csv.writer(buf, delimiter="\t", lineterminator="\n")
        for row in tsv_rows if tsv_rows is not None else [[l] for l in text_lines]:
            w.writerow(row)
        out = buf.getvalue()
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _root_system(args):
    if not args.type:
        raise UsageError("--type is required")
    try:
        return build_root_system(args.type)
    except (CartanTypeError, ValueError) as e:
        raise UsageError(str(e))


def _parse_pi(rs, text):
    text = text.strip()
    if text.startswith("roots"):
        body = text[len("roots"):].strip().strip("{}")
        return pseudo_levi(rs, [int(t) for t in body.split(",") if t.strip()])
    return parse_pseudo_levi(rs, text)


def _labels(items):
    return [parse_orbit_label(s) for s in items] if items else None


# ----------------------------------------------------------------------------
# subcommands


def cmd_enumerate(args):
    rs = _root_system(args)
    classes = enumerate_jordan_classes(rs, args.rank_guard, args.weyl_cap, args.bfs_cap)
    if args.sheets_only:
        classes = [t for t in classes if is_sheet(t)]
    if args.closure_matrix:
        pts = [generic_point(t) for t in classes]
        keys = [str(t) for t in classes]
        rows = [[""] + keys]
        for t, k in zip(classes, keys):
            rows.append([k] + [str(int(closure_contains_point(t, p, args.weyl_cap)))
                               for p in pts])
        payload = {"type": rs.name, "classes": keys,
                   "closure": [[int(v) for v in r[1:]] for r in rows[1:]]}
        _emit(args, payload, ["\t".join(r) for r in rows], rows)
        return EXIT_OK
    dicts = [triple_to_dict(t) for t in classes]
    lines = [f"# {rs.name}: {len(classes)} " + ("sheets" if args.sheets_only else "Jordan classes")]
    lines += [f"{d['pi']}\t{d['type']}\tx_s={d['coset']}\t{' '.join(d['orbits']) or '()'}"
              f"\tdim={d['dim']}\tsheet={d['is_sheet']}" for d in dicts]
    rows = [["pi", "type", "coset", "orbits", "dim", "is_sheet"]]
    rows += [[d["pi"], d["type"], d["coset"], " ".join(d["orbits"]), d["dim"], d["is_sheet"]]
             for d in dicts]
    payload = {"type": rs.name, "count": len(dicts), "classes": dicts}
    if args.strata:
        if rs.letter != "A":
            raise UsageError("--strata needs a type A ambient")
        strata = sln_strata(rs.rank + 1, guard=max(args.rank_guard + 1, 2), weyl_cap=args.weyl_cap)
        payload["strata"] = [{"sheet": triple_to_dict(s.sheet), "components": s.components,
                              "disjoint": s.disjoint} for s in strata]
        lines.append(f"# {len(strata)} strata")
        lines += [f"stratum\t{s.sheet}\tcomponents={s.components}\tdisjoint={s.disjoint}"
                  for s in strata]
    _emit(args, payload, lines, rows)
    return EXIT_OK


def cmd_verify_paper(args):
    from .fixtures import compare_codim1, sl4_example_counts, SL4_EXAMPLE
    from .localgeom import sheet_smooth_classical
    results = []
    names = ["G2", "F4", "E6", "E7"] + ([] if args.skip_e8 else ["E8"])
    for name in names:
        try:
            c = compare_codim1(name)
        except CapExceeded:
            results.append({"fixture": f"codim1 {name}", "status": "skipped(cap)"})
            continue
        results.append({"fixture": f"codim1 {name}", "status": "pass" if c.ok else "fail",
                        "missing": c.missing, "extra": c.extra})
    got = sl4_example_counts()
    results.append({"fixture": "SL4 branch counts (r, rv)",
                    "status": "pass" if tuple(got) == SL4_EXAMPLE["expected"] else "fail",
                    "computed": list(got), "expected": list(SL4_EXAMPLE["expected"])})
    for n in range(2, args.max_n + 1):
        strata = sln_strata(n, weyl_cap=args.weyl_cap)
        rs = build_root_system(f"A{n - 1}")
        bad = []
        for s in strata:
            for u in s.translates:
                ok, wit = sheet_smooth_classical(rs, u)
                if not ok:
                    bad.append(str(u))
        ok = not bad and all(s.disjoint for s in strata)
        results.append({"fixture": f"SL{n} sheets smooth, strata components disjoint",
                        "status": "pass" if ok else "fail", "offending": bad})
    lines = []
    for r in results:
        extra = ""
        if r.get("missing") or r.get("extra"):
            extra = f"  missing={r['missing']} extra={r['extra']}"
        if "computed" in r:
            extra = f"  computed={r['computed']} expected={r['expected']}"
        lines.append(f"{r['status']:>12}  {r['fixture']}{extra}")
    rows = [["fixture", "status"]] + [[r["fixture"], r["status"]] for r in results]
    _emit(args, {"results": results}, lines, rows)
    return EXIT_FAIL if any(r["status"] == "fail" for r in results) else EXIT_OK


def cmd_local(args):
    from .localgeom import local_model
    rs = _root_system(args)
    if args.pi is None or args.xr is None:
        raise UsageError("local needs --pi and --xr")
    pl = _parse_pi(rs, args.pi)
    xs = parse_vector(args.xs) if args.xs else None
    t = jordan_triple(rs, pl, xs, _labels(args.orbit))
    p = group_point(rs, parse_vector(args.xr), _labels(args.v))
    m = local_model(rs, t, p, args.weyl_cap)
    d = m.to_dict()
    d["triple"] = triple_to_dict(t)
    lines = [f"triple: {t}", f"point: {p}", f"centralizer: {m.centralizer_type}",
             f"count: {m.count}"]
    lines += [f"branch: {b}  (w = {w})" for b, w in zip(m.branches, m.representatives)]
    rows = [["count", m.count]] + [["branch", str(b), str(w)]
                                   for b, w in zip(m.branches, m.representatives)]
    _emit(args, d, lines, rows)
    return EXIT_OK if m.count > 0 else EXIT_NOT_CONTAINED


def cmd_codim1(args):
    from .fixtures import codim1_unique_subsets
    from .localgeom import codim1_normal, codim1_normal_linear
    rs = _root_system(args)
    test = codim1_normal_linear if args.linear else codim1_normal
    if args.pi:
        pl = _parse_pi(rs, args.pi)
        v = test(rs, pl)
        _emit(args, {"pi": format_pseudo_levi(pl), "type": pl.type_label, "normal": v},
              [f"{format_pseudo_levi(pl)}\t{pl.type_label}\t{v}"],
              [["pi", "type", "normal"], [format_pseudo_levi(pl), pl.type_label, v]])
        return EXIT_OK
    from .pseudolevi import pseudo_levi_from_nodes
    subs = [pseudo_levi_from_nodes(rs, n) for n in codim1_unique_subsets(rs, test)]
    lines = [f"# {rs.name}: {len(subs)} subsets"] + \
        [f"{format_pseudo_levi(p)}\t{p.type_label}" for p in subs]
    rows = [["pi", "type"]] + [[format_pseudo_levi(p), p.type_label] for p in subs]
    _emit(args, {"type": rs.name, "subsets": [{"pi": format_pseudo_levi(p),
                                                "type": p.type_label} for p in subs]},
          lines, rows)
    return EXIT_OK


def cmd_conjugate(args):
    from .weyl import subsystem_orbit_conjugate
    rs = _root_system(args)
    if not args.pi or len(args.pi) != 2:
        raise UsageError("conjugate needs exactly two --pi values")
    a, b = (_parse_pi(rs, s) for s in args.pi)
    v = subsystem_orbit_conjugate(rs, a.subsystem, b.subsystem, args.bfs_cap)
    _emit(args, {"a": format_pseudo_levi(a), "b": format_pseudo_levi(b), "conjugate": v},
          [f"{format_pseudo_levi(a)} {'~' if v else '!~'} {format_pseudo_levi(b)}"],
          [["a", "b", "conjugate"], [format_pseudo_levi(a), format_pseudo_levi(b), v]])
    return EXIT_OK if v else EXIT_NOT_CONTAINED


def cmd_induce(args):
    rs = _root_system(args)
    letter, rank = rs.letter, rs.rank
    if letter not in "ABCD":
        raise UsageError("induce needs a classical type")
    blocks = tuple(int(b) for b in args.blocks.split(",") if b.strip()) if args.blocks else ()
    orbs = _labels(args.orbit) or []
    if letter == "A":
        shape = LeviShape(blocks)
    else:
        m = rank - sum(blocks)
        shape = LeviShape(blocks, (letter, m))
        if len(orbs) == len(blocks):
            from .orbits import zero_orbit
            orbs.append(zero_orbit(letter, m))
    if len(orbs) != len(shape.gl_blocks) + (0 if letter == "A" else 1):
        raise UsageError("give one --orbit per block (and optionally the tail label last)")
    if letter == "D" and args.negative_parity is not None:
        res = induce_tagged(shape, orbs, letter, rank, args.negative_parity)
    else:
        res = ls_induce(shape, orbs, letter, rank)
    _emit(args, {"induced": str(res)}, [str(res)], [["induced"], [str(res)]])
    return EXIT_OK


# ----------------------------------------------------------------------------
# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="Cartan label, e.g. A3, C2, E7")
    common.add_argument("--rank-guard", type=int, default=DEFAULT_RANK_GUARD)
    common.add_argument("--weyl-cap", type=int, default=DEFAULT_WEYL_CAP)
    common.add_argument("--bfs-cap", type=int, default=DEFAULT_BFS_CAP)
    common.add_argument("--format", choices=["json", "tsv", "text"], default="text")
    common.add_argument("--out", help="write the report to this path")

    p = argparse.ArgumentParser(prog="jordanstrata",
                                description="Jordan classes, sheets and local branch counts.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list Jordan classes")
    e.add_argument("--sheets-only", action="store_true")
    e.add_argument("--strata", action="store_true", help="also group sheets into strata (type A)")
    e.add_argument("--closure-matrix", action="store_true",
                   help="containment of generic points of classes in class closures")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify-paper", parents=[common], help="check published fixtures")
    v.add_argument("--skip-e8", action="store_true")
    v.add_argument("--max-n", type=int, default=5)
    v.set_defaults(func=cmd_verify_paper)

    lo = sub.add_parser("local", parents=[common], help="local model at a point r v")
    lo.add_argument("--pi", help='pseudo-Levi, e.g. "{a1}" or "roots{0,5}"')
    lo.add_argument("--xs", help="semisimple coweight of the triple, e.g. 0,1/2,0")
    lo.add_argument("--orbit", action="append", help="orbit label per nontrivial factor")
    lo.add_argument("--xr", help="semisimple coweight of the point")
    lo.add_argument("--v", action="append", help="unipotent label per nontrivial factor of C(r)")
    lo.set_defaults(func=cmd_local)

    c = sub.add_parser("codim1", parents=[common], help="codimension-one normality test")
    c.add_argument("--pi")
    c.add_argument("--linear", action="store_true", help="use linear W-conjugacy of subsystems")
    c.set_defaults(func=cmd_codim1)

    cj = sub.add_parser("conjugate", parents=[common], help="W-conjugacy of two subsystems")
    cj.add_argument("--pi", action="append")
    cj.set_defaults(func=cmd_conjugate)

    i = sub.add_parser("induce", parents=[common], help="Lusztig-Spaltenstein induction")
    i.add_argument("--blocks", default="", help="gl block sizes, e.g. 2,1")
    i.add_argument("--orbit", action="append", help="labels per block, tail label last")
    i.add_argument("--negative-parity", type=int, default=None,
                   help="type D: parity of negative signs in the blocks (fixes the tag)")
    i.set_defaults(func=cmd_induce)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, GuardError, CapExceeded, VeryEvenAmbiguity, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {e!r}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
