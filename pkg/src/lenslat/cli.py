"""Command-line front end.

Every subcommand prints in one of three formats (human, json, csv) and
exits 0 on success/agreement, 1 on any mismatch or failed check, 2 on a
usage error, and 3 when a search gave up on its node budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import gcd

from .berge import berge_entries, ALL_TYPES
from .changemaker import enumerate_changemakers, standard_basis
from .contfrac import dual_pair, hj_eval, hj_expand
from .embed import (
    DEFAULT_NODE_BUDGET,
    Linear,
    NotLinear,
    SumOfTwo,
    find_embeddings,
    recognize_linear,
)
from .errors import DomainError, EnumerationCapExceeded, NodeBudgetExceeded
from .lattice import q_orbit_rep
from .verify import (
    MISMATCH,
    UNRESOLVED,
    cross_check_directions,
    default_cache_dir,
    fixtures_check,
    genus_problems,
    realization_summary,
    verify_genus_bound,
    verify_realization,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _emit(rows, fmt, human_lines):
    """Print a list of dict rows as json/csv, or preformatted lines."""
    if fmt == "json":
        json.dump(rows, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    elif fmt == "csv":
        if rows:
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=sorted(rows[0]))
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
            sys.stdout.write(buf.getvalue())
    else:
        for line in human_lines:
            print(line)


def _cmd_expand(args):
    s = hj_expand(args.p, args.q)
    rows = [{"p": args.p, "q": args.q, "string": list(s.terms)}]
    _emit(rows, args.format, [f"{args.p}/{args.q} = {list(s.terms)}"])
    return EXIT_OK


def _cmd_eval(args):
    p, q = hj_eval(args.terms)
    rows = [{"string": args.terms, "p": p, "q": q}]
    _emit(rows, args.format, [f"{args.terms} = {p}/{q}"])
    return EXIT_OK


def _cmd_dual(args):
    s, t = dual_pair(args.p, args.q)
    rows = [{
        "p": args.p, "q": args.q,
        "string": list(s.terms), "dual": list(t.terms),
    }]
    _emit(rows, args.format, [
        f"{args.p}/{args.q} = {list(s.terms)}",
        f"{args.p}/{args.p - args.q} = {list(t.terms)}",
    ])
    return EXIT_OK


def _cmd_changemakers(args):
    vs = enumerate_changemakers(args.p, cap=max(args.p, 400))
    rows = [{"p": args.p, "sigma": list(v)} for v in vs]
    _emit(rows, args.format,
          [f"{len(vs)} changemakers of norm {args.p}:"]
          + [f"  {v}" for v in vs])
    return EXIT_OK


def _cmd_basis(args):
    sb = standard_basis(tuple(args.sigma))
    rows = [
        {"index": i, "vector": vec, "tag": tag}
        for i, (vec, tag) in enumerate(zip(sb.vectors, sb.tags), start=1)
    ]
    human = [f"sigma = {sb.sigma}"]
    for row in rows:
        human.append(f"  v_{row['index']} = {row['vector']}  [{row['tag']}]")
    _emit(rows, args.format, human)
    return EXIT_OK


def _recognized_row(res):
    if isinstance(res, Linear):
        return {
            "kind": "linear", "p": res.p, "q": res.q,
            "k": res.k_raw, "k_orbit": res.k_orbit, "genus": res.genus,
        }
    if isinstance(res, SumOfTwo):
        return {"kind": "sum", "p": res.p,
                "summands": [list(s) for s in res.summands]}
    return {"kind": "none", "p": res.p}


def _cmd_recognize(args):
    try:
        res = recognize_linear(tuple(args.sigma))
    except NodeBudgetExceeded:
        print("node budget exhausted", file=sys.stderr)
        return EXIT_BUDGET
    row = _recognized_row(res)
    if isinstance(res, Linear):
        human = [
            f"linear lattice of order {res.p}, q orbit {res.q}",
            f"  k = {res.k_raw} (orbit representative {res.k_orbit})",
            f"  genus {res.genus}",
        ]
    elif isinstance(res, SumOfTwo):
        human = [f"sum of two linear lattices: {res.summands}"]
    else:
        human = ["not a linear lattice or a sum of two"]
    _emit([row], args.format, human)
    return EXIT_OK


def _cmd_embed(args):
    try:
        embs = find_embeddings(args.p, args.q, node_budget=args.budget)
    except NodeBudgetExceeded:
        print("node budget exhausted", file=sys.stderr)
        return EXIT_BUDGET
    rows = [
        {"p": e.p, "q": e.q, "sigma": list(e.sigma),
         "k": e.k_raw, "k_orbit": e.k_orbit, "genus": e.genus}
        for e in embs
    ]
    human = [f"{len(embs)} embedding(s) for ({args.p}, {args.q}):"]
    for e in embs:
        human.append(
            f"  sigma = {e.sigma}, k = {e.k_raw} "
            f"(orbit {e.k_orbit}), genus {e.genus}"
        )
    _emit(rows, args.format, human)
    return EXIT_OK


def _cmd_berge_list(args):
    types = tuple(args.types) if args.types else None
    entries = berge_entries(args.max, types=types)
    rows = [
        {"p": e.p, "k": e.k, "q": e.q, "types": list(e.types)}
        for e in entries
    ]
    human = [
        f"p={e.p} k={e.k} q={e.q} types={','.join(e.types)}" for e in entries
    ]
    _emit(rows, args.format, human)
    return EXIT_OK


def _cmd_verify(args):
    cache = args.cache or default_cache_dir()
    records = verify_realization(
        args.min, args.max, jobs=args.jobs, cache_dir=cache,
        node_budget=args.budget, force=args.force,
    )
    counts = realization_summary(records)
    bad = [r for r in records if r.status != "MATCH"]
    rows = [r.to_dict() for r in (bad if not args.all else records)]
    human = [
        f"checked {len(records)} (p, q-orbit) pairs: "
        f"{counts['MATCH']} match, {counts[MISMATCH]} mismatch, "
        f"{counts[UNRESOLVED]} unresolved"
    ]
    for r in bad:
        human.append(f"  {r.status}: p={r.p} q={r.q} "
                     f"berge={list(r.berge_ks)} found={list(r.embeddings)}")
    _emit(rows, args.format, human)
    if counts[MISMATCH]:
        return EXIT_FAIL
    if counts[UNRESOLVED]:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_crosscheck(args):
    checked, problems = cross_check_directions(
        args.max, jobs=args.jobs, node_budget=args.budget
    )
    rows = [{"checked": checked, "problems": list(problems)}]
    human = [f"checked {checked} changemakers up to norm {args.max}, "
             f"{len(problems)} discrepancies"]
    human.extend(f"  {p}" for p in problems)
    _emit(rows, args.format, human)
    return EXIT_FAIL if problems else EXIT_OK


def _cmd_genus(args):
    cache = args.cache or default_cache_dir()
    records = verify_genus_bound(args.max, jobs=args.jobs, cache_dir=cache)
    problems = genus_problems(records, args.max)
    rows = [
        {"p": r.p, "sigma": list(r.sigma), "genus": r.genus,
         "bound": r.bound, "satisfies": r.satisfies, "equality": r.equality,
         "type_one_minus": r.type_one_minus,
         "one_minus_equality": r.one_minus_equality}
        for r in records
        if args.all or r.equality or not r.satisfies or r.one_minus_equality
    ]
    human = [f"{len(records)} realizable (p, sigma) pairs up to {args.max}"]
    for r in records:
        if not r.satisfies:
            human.append(f"  exception: p={r.p} sigma={r.sigma} genus={r.genus} "
                         f"bound={r.bound:.4f}")
        elif r.equality:
            human.append(f"  equality: p={r.p} sigma={r.sigma} genus={r.genus}")
        if r.one_minus_equality:
            human.append(f"  sharper equality: p={r.p} sigma={r.sigma}")
    human.extend(f"  problem: {p}" for p in problems)
    _emit(rows, args.format, human)
    return EXIT_FAIL if problems else EXIT_OK


def _cmd_fixtures(args):
    report = fixtures_check(args.cap)
    rows = [{"checked": report.checked, "failures": list(report.failures)}]
    human = [f"checked {report.checked} tabulated instances, "
             f"{len(report.failures)} failures"]
    human.extend(f"  {f}" for f in report.failures)
    _emit(rows, args.format, human)
    return EXIT_OK if report.ok else EXIT_FAIL


def _tiling_squares(p, q):
    """Greedy square tiling of a p-by-q rectangle (Euclidean algorithm)."""
    squares = []
    x = y = 0
    w, h = p, q
    while w and h:
        if w >= h:
            n = w // h
            for i in range(n):
                squares.append((x + i * h, y, h))
            x += n * h
            w -= n * h
        else:
            n = h // w
            for i in range(n):
                squares.append((x, y + i * w, w))
            y += n * w
            h -= n * w
    return squares


def _cmd_tiling(args):
    if not (0 < args.q < args.p) or gcd(args.p, args.q) != 1:
        print("require 0 < q < p coprime", file=sys.stderr)
        return EXIT_USAGE
    squares = _tiling_squares(args.p, args.q)
    scale = max(1, 600 // args.p)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{args.p * scale}" height="{args.q * scale}" '
        f'viewBox="0 0 {args.p} {args.q}">'
    ]
    for x, y, s in squares:
        parts.append(
            f'<rect x="{x}" y="{y}" width="{s}" height="{s}" '
            f'fill="none" stroke="black" stroke-width="{1 / scale:.4f}"/>'
        )
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(svg)
        print(f"wrote {len(squares)} squares to {args.output}")
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def _add_format(sub):
    sub.add_argument("--format", choices=("human", "json", "csv"),
                     default="human")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lenslat",
        description="Changemaker complements, surgery classes, and their "
                    "cross-verification.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("expand", help="negative continued fraction of p/q")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    _add_format(s)
    s.set_defaults(func=_cmd_expand)

    s = subs.add_parser("eval", help="evaluate a string back to p/q")
    s.add_argument("terms", type=int, nargs="+")
    _add_format(s)
    s.set_defaults(func=_cmd_eval)

    s = subs.add_parser("dual", help="expansion of p/q and of p/(p-q)")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    _add_format(s)
    s.set_defaults(func=_cmd_dual)

    s = subs.add_parser("changemakers", help="all changemakers of norm p")
    s.add_argument("p", type=int)
    _add_format(s)
    s.set_defaults(func=_cmd_changemakers)

    s = subs.add_parser("basis", help="standard basis of a changemaker")
    s.add_argument("sigma", type=int, nargs="+")
    _add_format(s)
    s.set_defaults(func=_cmd_basis)

    s = subs.add_parser("recognize",
                        help="is the complement a linear lattice?")
    s.add_argument("sigma", type=int, nargs="+")
    _add_format(s)
    s.set_defaults(func=_cmd_recognize)

    s = subs.add_parser("embed", help="changemaker embeddings of a lattice")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    _add_format(s)
    s.set_defaults(func=_cmd_embed)

    s = subs.add_parser("berge-list", help="closed-form surgery classes")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--types", nargs="*", choices=ALL_TYPES)
    _add_format(s)
    s.set_defaults(func=_cmd_berge_list)

    s = subs.add_parser("verify",
                        help="search vs closed-form list over a range of p")
    s.add_argument("--min", type=int, default=2)
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--jobs", type=int, default=None)
    s.add_argument("--cache", default=None,
                   help=f"cache directory (default ${'{'}LENSLAT_CACHE_DIR{'}'})")
    s.add_argument("--force", action="store_true",
                   help="recompute even when cached")
    s.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    s.add_argument("--all", action="store_true",
                   help="emit matching records too, not just failures")
    _add_format(s)
    s.set_defaults(func=_cmd_verify)

    s = subs.add_parser("crosscheck",
                        help="recognizer vs search on small changemakers")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--jobs", type=int, default=None)
    s.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    _add_format(s)
    s.set_defaults(func=_cmd_crosscheck)

    s = subs.add_parser("genus", help="genus bound over realizable pairs")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--jobs", type=int, default=None)
    s.add_argument("--cache", default=None)
    s.add_argument("--all", action="store_true")
    _add_format(s)
    s.set_defaults(func=_cmd_genus)

    s = subs.add_parser("fixtures", help="re-derive the tabulated families")
    s.add_argument("--cap", type=int, default=6)
    _add_format(s)
    s.set_defaults(func=_cmd_fixtures)

    s = subs.add_parser("tiling",
                        help="SVG square tiling of a p-by-q rectangle")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=_cmd_tiling)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, EnumerationCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
