"""Command-line interface: ``python -m permcodes <command> ...``.

Exit status 0 on success, 1 when a verification or table comparison fails,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import builtins as B
from .codes import (
    inner_distribution,
    min_distance_bruteforce,
    min_distance_via_supports,
    repetition_distances,
    twisted_code,
)
from .groups import DEFAULT_SEED, coset_action, parse_group_text
from .perm import Permutation
from .reps import Representation, profile_csv, tuple_kernel

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    if isinstance(obj, dict):
        w.writerow(["key", "value"])
        for k, v in obj.items():
            w.writerow([k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v])
    else:
        for row in obj:
            w.writerow(row)


def parse_tuple(spec: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in spec.replace(";", ",").split(",") if x.strip())
    except ValueError:
        raise UsageError(f"malformed tuple spec {spec!r}; use e.g. 1,2,2") from None
    if not out:
        raise UsageError("the tuple spec is empty")
    return out


def load_group(source: str, subgroups=(), seed=None):
    """A built-in name, or a group file whose pool is the natural action followed by
    the coset action of each ``--subgroup`` (generators separated by ';')."""
    if source in B.BUILTINS:
        if subgroups:
            raise UsageError("--subgroup only applies to group files")
        return B.get(source, seed=seed)
    path = Path(source)
    if not path.exists():
        raise UsageError(f"{source!r} is neither a built-in group ({', '.join(B.BUILTINS)}) nor a file")
    try:
        G = parse_group_text(path.read_text())
    except ValueError as exc:
        raise UsageError(f"{source}: {exc}") from None
    pool = [Representation.natural(G)]
    for k, spec in enumerate(subgroups):
        try:
            gens = [Permutation.parse(s, G.degree) for s in spec.split(";") if s.strip()]
        except ValueError as exc:
            raise UsageError(f"subgroup {k + 1}: {exc}") from None
        if not all(g in G for g in gens):
            raise UsageError(f"subgroup {k + 1}: generators are not in the group")
        H = G.subgroup(gens)
        pool.append(coset_action(G, H, name=f"cosets of subgroup {k + 1}"))
    return B.Builtin(path.name, G, pool, (1,))


def _reps(b, spec):
    indices = parse_tuple(spec) if spec else b.default_tuple
    try:
        reps = b.tuple_of(indices)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len({r.degree for r in reps}) != 1:
        raise UsageError("all members of the tuple must have the same degree")
    return indices, reps


# -- commands -----------------------------------------------------------------


def cmd_tables(args, out) -> int:
    from .tables import SUPPORT_TABLES, TABLE_NAMES, reproduce_tables, support_rows_csv

    only = args.only or None
    if only:
        bad = [n for n in only if n not in TABLE_NAMES]
        if bad:
            raise UsageError(f"unknown table(s) {bad}; choose from {TABLE_NAMES}")
    results = reproduce_tables(only, expected_dir=args.expected_dir)
    if args.format == "json":
        _dump([r.to_dict() for r in results], "json", out)
    else:
        for r in results:
            out.write(f"# {r.name}: {'match' if r.ok else 'MISMATCH'}\n")
            if r.name in SUPPORT_TABLES:
                out.write("# columns matched to reference labels by (element order, support vector)\n")
                out.write(support_rows_csv(r))
            else:
                for row in r.rows:
                    out.write(json.dumps(row, sort_keys=True) + "\n")
            for m in r.mismatches:
                out.write(f"# {m}\n")
    for r in results:
        for m in r.mismatches:
            print(m, file=sys.stderr)
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


def cmd_mindist(args, out) -> int:
    b = load_group(args.group, args.subgroup, args.seed)
    indices, reps = _reps(b, args.tuple)
    G = b.group
    K = tuple_kernel(reps)
    res = {"group": b.name, "tuple": list(indices), "order": G.order, "kernel_order": len(K)}
    C = twisted_code(G, reps)
    res["code_size"] = len(C)
    res["length"] = C.length
    if len(K) == 1:
        res["delta_formula"] = min_distance_via_supports(G, reps)
    if args.bruteforce or len(K) > 1:
        res["delta_bruteforce"] = min_distance_bruteforce(C)
    res["delta_rep"] = repetition_distances(G, reps)
    _dump(res, args.format, out)
    return EXIT_OK


def cmd_distribution(args, out) -> int:
    b = load_group(args.group, args.subgroup, args.seed)
    indices, reps = _reps(b, args.tuple)
    C = twisted_code(b.group, reps)
    d = inner_distribution(C)
    if args.format == "json":
        _dump({"group": b.name, "tuple": list(indices), "distribution": {str(k): v for k, v in d.nonzero().items()}}, "json", out)
    else:
        out.write(d.to_csv())
    return EXIT_OK


def cmd_neighbours(args, out) -> int:
    from .checks import neighbour_suite

    res = neighbour_suite((args.group,))
    _dump(res.details[args.group], args.format, out)
    return EXIT_OK if res.ok else EXIT_MISMATCH


def cmd_asl2r(args, out) -> int:
    from . import asl2r

    if args.emit == "reps":
        C = asl2r.build_G(args.f)
        if args.format == "json":
            from .reps import profile_table

            _dump(profile_table(list(C.reps)), "json", out)
        else:
            out.write(profile_csv(list(C.reps)))
        return EXIT_OK
    if args.emit == "audit":
        res = asl2r.full_audit(args.f)
        _dump(res if args.format == "json" else {**res["checks"], "ok": res["ok"]}, args.format, out)
        return EXIT_OK if res["ok"] else EXIT_MISMATCH
    rep = asl2r.affmain_check(args.f).to_dict()
    if args.format == "json":
        _dump(rep, "json", out)
    else:
        dists = [("twisted", rep["twisted"])] + [
            (f"repetition S_{w}", d) for w, d in enumerate(rep["repetition"])
        ]
        keys = sorted({int(k) for _, d in dists for k in d})
        rows = [["code"] + keys] + [[n] + [d.get(str(k), 0) for k in keys] for n, d in dists]
        _dump(rows, "csv", out)
    return EXIT_OK if rep["ok"] else EXIT_MISMATCH


def cmd_verify(args, out) -> int:
    from .checks import SUITES

    names = args.suite or list(SUITES)
    bad = [n for n in names if n not in SUITES]
    if bad:
        raise UsageError(f"unknown suite(s) {bad}; choose from {list(SUITES)}")
    results = []
    for n in names:
        fn = SUITES[n]
        if n == "tables":
            r = fn(expected_dir=args.expected_dir)
        elif n in ("proposition", "determinism"):
            r = fn(seed=args.seed if args.seed is not None else DEFAULT_SEED)
        else:
            r = fn()
        results.append(r)
    verdict = {
        "ok": all(r.ok for r in results),
        "suites": {r.name: {"ok": r.ok, "failures": r.failures} for r in results},
    }
    if args.format == "json":
        _dump(verdict, "json", out)
    else:
        _dump([["suite", "ok", "failures"]] + [[r.name, r.ok, "; ".join(r.failures)] for r in results], "csv", out)
    for r in results:
        if not r.ok:
            print(f"suite {r.name} failed", file=sys.stderr)
    return EXIT_OK if verdict["ok"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="permcodes", description="Twisted permutation codes")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=None)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", parents=[common], help="reproduce the reference tables")
    t.add_argument("--only", action="append", help="table name (repeatable)")
    t.add_argument("--expected-dir", type=Path, default=None)
    t.set_defaults(fn=cmd_tables)

    for name, fn in (("mindist", cmd_mindist), ("distribution", cmd_distribution)):
        c = sub.add_parser(name, parents=[common])
        c.add_argument("--group", required=True, help="built-in name or group file")
        c.add_argument("--tuple", "--reps", dest="tuple", default=None, help="1-based pool indices, e.g. 1,2")
        c.add_argument("--subgroup", action="append", default=[], help="generators of a subgroup, ';'-separated")
        if name == "mindist":
            c.add_argument("--bruteforce", action="store_true")
        c.set_defaults(fn=fn)

    n = sub.add_parser("neighbours", parents=[common])
    n.add_argument("--group", required=True, choices=("s6", "a6"))
    n.set_defaults(fn=cmd_neighbours)

    a = sub.add_parser("asl2r", parents=[common])
    a.add_argument("--f", type=int, required=True, choices=(2, 3))
    a.add_argument("--emit", choices=("reps", "audit", "distributions"), default="audit")
    a.set_defaults(fn=cmd_asl2r)

    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    v.add_argument("--expected-dir", type=Path, default=None)
    v.set_defaults(fn=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
