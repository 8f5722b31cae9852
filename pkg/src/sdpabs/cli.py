"""Command-line front end: ``sdpabs abstract|check|bench|selftest``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import CapExceeded, ParseError
from .parser import parse_goal, parse_problem

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sdpabs", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("abstract", help="cover of a goal by cubes over the predicates")
    a.add_argument("-p", "--problem", required=True, help="problem file ('-' for stdin)")
    a.add_argument("-g", "--goal", help="file with a (goal ...) block overriding the problem's")
    a.add_argument("--json", action="store_true", help="emit a JSON document")
    a.add_argument("--dot", metavar="FILE", help="write the refutation circuits as DOT")
    a.add_argument("--underapprox-disjunction", action="store_true",
                   help="split disjunctive clauses literal by literal (may be weaker)")
    a.add_argument("--order", choices=("input", "sift"), default="input")
    a.add_argument("--node-cap", type=_positive, default=10_000_000)
    a.add_argument("--cube-cap", type=_positive, default=1 << 20)
    a.add_argument("--jobs", type=_positive, default=1)

    c = sub.add_parser("check", help="satisfiability of the conjunction of the predicates")
    c.add_argument("-p", "--problem", required=True)

    b = sub.add_parser("bench", help="benchmark families")
    b.add_argument("family", choices=("diamond", "mixed"))
    b.add_argument("--max-n", type=_positive, default=10, help="largest diamond count")
    b.add_argument("--count", type=_positive, default=20, help="number of mixed queries")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    b.add_argument("--plot", metavar="FILE", help="figure path (default: bench_<family>.png)")
    b.add_argument("--no-plot", action="store_true")

    s = sub.add_parser("selftest", help="run the built-in oracle comparisons")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--full", action="store_true", help="larger corpora")
    return ap


def cmd_abstract(args) -> int:
    from .predabs import abstract_formula, abstraction_circuits

    text = _read(args.problem)
    prob = parse_problem(text, require_goal=args.goal is None)
    goal = parse_goal(_read(args.goal), prob.store) if args.goal else prob.goal
    res = abstract_formula(
        prob.store, prob.predicates, goal,
        underapprox_disjunction=args.underapprox_disjunction, order=args.order,
        node_cap=args.node_cap, cube_cap=args.cube_cap, jobs=args.jobs,
    )
    labels = [prob.label(i) for i in range(len(prob.predicates))]
    if args.dot:
        circuit, roots = abstraction_circuits(prob.store, prob.predicates, goal)
        res.stats["circuit_nodes"] = sum(circuit.stats(r)["node_count"] for r in roots)

        def leaf_label(key):
            i, pol = key
            return labels[i] if pol else "!" + labels[i]

        Path(args.dot).write_text(circuit.to_dot(roots, leaf_label))
    if args.json:
        doc = {"cubes": res.cube_strings(prob.store, labels), "exact": res.exact, "stats": res.stats}
        if res.reasons:
            doc["reasons"] = sorted(set(res.reasons))
        print(json.dumps(doc, indent=2))
    else:
        for line in res.lines(prob.store, labels):
            print(line)
    if not res.exact:
        print("warning: result is an under-approximation", file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    from .combine import decide

    prob = parse_problem(_read(args.problem), require_goal=False)
    print(decide(prob.store, prob.predicates))
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import diamond_rows, format_table, mixed_rows

    sep = "\t" if args.format == "tsv" else ","
    if args.family == "diamond":
        rows = diamond_rows(args.max_n)
        ok = all(r["primes"] == r["expected"] and r["predicates"] == 5 * r["n"] - 1 for r in rows)
    else:
        rows = mixed_rows(args.count, args.seed)
        ok = True
    sys.stdout.write(format_table(rows, sep))
    if not args.no_plot:
        from .plotting import diamond_figure, throughput_figure

        path = args.plot or f"bench_{args.family}.png"
        draw = diamond_figure if args.family == "diamond" else throughput_figure
        draw(rows, path)
        print(f"figure written to {path}", file=sys.stderr)
    if not ok:
        print("error: prime counts differ from 2^n", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .checks import run_selftest

    results = run_selftest(args.seed, quick=not args.full)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name} ({detail})")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_FAIL


COMMANDS = {"abstract": cmd_abstract, "check": cmd_check, "bench": cmd_bench, "selftest": cmd_selftest}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
