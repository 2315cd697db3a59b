"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 budget exhausted,
3 a verification produced FAIL or DISCREPANCY.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import textio
from .autsearch import automorphism_group
from .digraph import complete_graph, loop_graph
from .errors import BudgetExceeded, PrimfixError
from .families import (construct, hamming_descriptor, johnson_descriptor, orbital_digraphs,
                       squashed_descriptor, srg_descriptor)
from .fixity import (GROWTH_HEADER, VERIFY_HEADER, classify, fixity_brute, growth_report,
                     render, spread_jset, verify_family, verify_table1)
from .geometry import ROWS, row_graph, srg_catalog
from .jset import hamming_core, is_homogeneous, jset_stabilizer
from .permgroup import DEFAULT_CAP, wreath_product_action

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_FAIL = 0, 1, 2, 3
DEFAULT_BUDGET_MS = 60_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------
# Family spec strings, e.g. "johnson:m=6,k=2,i=1|2" or "srg:row=ii,m=2"
# --------------------------------------------------------------------------

def parse_family_spec(spec: str) -> tuple[str, dict]:
    name, _, rest = spec.partition(":")
    name = name.strip().lower()
    if name not in ("hamming", "johnson", "squashed", "srg"):
        raise UsageError(f"unknown family {name!r}")
    opts = {}
    for item in filter(None, (x.strip() for x in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            raise UsageError(f"bad family option {item!r}; expected key=value")
        opts[key.strip()] = value.strip()
    return name, opts


def _int(opts: dict, key: str, default=None) -> int:
    if key not in opts:
        if default is None:
            raise UsageError(f"family spec needs {key}=")
        return default
    try:
        return int(opts[key])
    except ValueError:
        raise UsageError(f"{key} must be an integer") from None


def _indices(opts: dict) -> list[int]:
    try:
        return [int(x) for x in opts.get("i", "1").split("|")]
    except ValueError:
        raise UsageError("i must be integers separated by '|'") from None


def descriptor_from_spec(spec: str, r: int | None = None):
    name, opts = parse_family_spec(spec)
    r = r if r is not None else _int(opts, "r", 1)
    m = _int(opts, "m")
    if name == "hamming":
        return hamming_descriptor(r, m)
    idx = _indices(opts)
    if name == "johnson":
        k = _int(opts, "k")
        return johnson_descriptor(m, k, r=r, jset=spread_jset(r, k, idx))
    if name == "squashed":
        return squashed_descriptor(m, r=r, jset=spread_jset(r, m // 2, idx))
    row = opts.get("row")
    if row is None:
        raise UsageError("srg family spec needs row=")
    return srg_descriptor(row, m, r=r, jset=spread_jset(r, 2, idx))


def parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a..b") from None
    if a < 1 or b < a:
        raise UsageError(f"bad range {text!r}")
    return range(a, b + 1)


# --------------------------------------------------------------------------
# Verbs
# --------------------------------------------------------------------------

def _emit(text: str, out: str | None) -> None:
    if out:
        textio.write_atomic(out, text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "johnson":
        desc = johnson_descriptor(args.m, args.k, args.i)
        graph, label = construct(desc), desc.describe()
    elif kind == "squashed":
        desc = squashed_descriptor(args.m, args.i)
        graph, label = construct(desc), desc.describe()
    elif kind == "hamming":
        jset = textio.read_jset(args.jset) if args.jset else None
        desc = hamming_descriptor(args.r, args.m, jset)
        graph, label = construct(desc), desc.describe()
    elif kind == "complete":
        graph, label = complete_graph(args.m), f"K{args.m}"
    elif kind == "loop":
        graph, label = loop_graph(args.m), f"L{args.m}"
    else:
        built = row_graph(args.row, args.m)
        graph, label = built.graph, f"row {built.row} m={args.m} ({built.choice})"
    _emit(textio.format_digraph(graph, label), args.output)
    return EXIT_OK


def cmd_aut(args) -> int:
    result = automorphism_group(textio.read_digraph(args.file), args.search_budget_ms)
    print(f"order={result.order}")
    print("base=" + " ".join(map(str, result.base)))
    for g in result.generators:
        print(g.cycle_string())
    return EXIT_OK


def cmd_fixity(args) -> int:
    report = fixity_brute(textio.read_digraph(args.file), args.search_budget_ms, args.element_cap)
    print(report.line())
    if args.witness:
        print(f"witness={report.witness.cycle_string()}")
    return EXIT_OK


def cmd_orbitals(args) -> int:
    group = textio.read_group(args.group)
    graphs = orbital_digraphs(group)
    os.makedirs(args.out_dir, exist_ok=True)
    for idx, g in enumerate(graphs):
        path = os.path.join(args.out_dir, f"{args.prefix}{idx}.dg")
        textio.write_atomic(path, textio.format_digraph(g, f"orbital {idx}"))
        print(f"{path} arcs={g.arc_count}")
    print(f"rank={len(graphs)}")
    return EXIT_OK


def cmd_wreath(args) -> int:
    inner, top = textio.read_group(args.inner), textio.read_group(args.top)
    action = wreath_product_action(inner, top, args.element_cap)
    _emit(textio.format_group(action.group, f"wreath product, degree {action.product_degree}"),
          args.output)
    return EXIT_OK


def cmd_jset(args) -> int:
    j = textio.read_jset(args.file)
    stab = jset_stabilizer(j)
    print(f"stabilizer_order={stab.order}")
    homogeneous = is_homogeneous(j)
    print(f"homogeneous={'yes' if homogeneous else 'no'}")
    if homogeneous:
        found = hamming_core(j)
        print(f"hamming={'yes' if found else 'no'}")
        if found:
            print(f"core=a={found[0]},b={found[1]}")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.target == "table1":
        if args.row is None or args.m is None:
            raise UsageError("verify table1 needs --row and --m")
        records = verify_table1(args.row, args.m, args.search_budget_ms, args.element_cap)
        for rec in records:
            print(rec.line())
        bad = any(rec.status == "DISCREPANCY" for rec in records)
    else:
        if not args.family:
            raise UsageError("verify family needs at least one --family")
        print(VERIFY_HEADER)
        bad = False
        for spec in args.family:
            rec = verify_family(descriptor_from_spec(spec), args.search_budget_ms,
                                args.element_cap)
            print(rec.csv())
            bad |= rec.status == "FAIL"
    return EXIT_FAIL if bad else EXIT_OK


def cmd_classify(args) -> int:
    result = classify(textio.read_digraph(args.file), args.search_budget_ms, args.element_cap)
    print(result.summary())
    for note in result.notes:
        print(f"note: {note}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    rows = [args.row] if args.row else list(ROWS)
    print("row,m,v,d,lambda,mu,relfix")
    for row in rows:
        rec = srg_catalog(row, args.m)
        print(",".join([rec.row, str(rec.m)] + [render(x) for x in rec.values().values()]))
    return EXIT_OK


def cmd_growth(args) -> int:
    specs = [descriptor_from_spec(args.family, r) for r in parse_range(args.range)]
    print(GROWTH_HEADER)
    for row in growth_report(specs):
        print(row.csv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--element-cap", type=int, default=DEFAULT_CAP,
                        help="maximum group elements to materialize (default %(default)s)")
    common.add_argument("--search-budget-ms", type=float, default=DEFAULT_BUDGET_MS,
                        help="time budget for automorphism searches (default %(default)s)")

    parser = _Parser(prog="primfix", description="Vertex-primitive digraphs and relative fixity.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", parents=[common], help="write a family member as a digraph file")
    p.add_argument("kind", choices=["johnson", "squashed", "hamming", "complete", "loop", "srg"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--i", type=int, nargs="+", default=[1], help="distance indices")
    p.add_argument("--row", choices=sorted(ROWS))
    p.add_argument("--jset", help="J-set file for hamming (default: unit vectors)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("aut", parents=[common], help="automorphism group generators and order")
    p.add_argument("file")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("fixity", parents=[common], help="exact fixity by brute force")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="also print a minimal-support automorphism")
    p.set_defaults(func=cmd_fixity)

    p = sub.add_parser("orbitals", parents=[common], help="write one digraph file per orbital")
    p.add_argument("--group", required=True)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--prefix", default="orbital_")
    p.set_defaults(func=cmd_orbitals)

    p = sub.add_parser("wreath", parents=[common], help="product action of inner wr top")
    p.add_argument("--inner", required=True)
    p.add_argument("--top", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_wreath)

    p = sub.add_parser("jset", parents=[common], help="J-set tests")
    p.add_argument("action", choices=["check"])
    p.add_argument("file")
    p.set_defaults(func=cmd_jset)

    p = sub.add_parser("verify", parents=[common], help="brute force against printed values")
    p.add_argument("target", choices=["table1", "family"])
    p.add_argument("--row", choices=sorted(ROWS))
    p.add_argument("--m", type=int)
    p.add_argument("--family", action="append", help="e.g. hamming:r=2,m=4 or johnson:m=6,k=2,i=1")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", parents=[common], help="large-fixity classification verdict")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("catalog", parents=[common], help="printed strongly regular parameters")
    p.add_argument("--row", choices=sorted(ROWS))
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("growth-report", parents=[common], help="valency against ln n as CSV")
    p.add_argument("--family", required=True, help="e.g. hamming:m=4")
    p.add_argument("--range", required=True, help="r values, e.g. 1..4")
    p.set_defaults(func=cmd_growth)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.search_budget_ms is not None and args.search_budget_ms <= 0:
            args.search_budget_ms = None
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PrimfixError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
