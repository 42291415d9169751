"""Command-line interface: ``tubix <subcommand> [GRAPH.json | --stdin] [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from .export import ExportError, export_off
from .graph import FAMILIES, Graph, GraphError, generate_family, members, parse_graph
from .realization import (
    WeightScheme,
    build_hrep,
    format_number,
    hrep_to_json,
    load_scheme,
    make_scheme,
    SolverError,
    realize,
    vertices_to_json,
)
from .tubings import enumerate_maximal_tubings, enumerate_tubes, enumerate_tubings, f_vector, tubing_to_lists
from .verify import DEFAULT_ORACLE_CAP, FAIL, full_report, survey

EX_OK, EX_FAIL, EX_INCOMPLETE, EX_USAGE, EX_IOERR = 0, 1, 2, 64, 74
DEFAULT_MAX_N = 12

log = logging.getLogger("tubix")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--output", choices=("json", "csv", "text"), default="json")
    p.add_argument("-o", dest="outfile", metavar="FILE", help="write to FILE instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP,
                   help="max candidate systems for the brute-force vertex oracle")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="refuse graphs with more nodes")
    p.add_argument("--scheme", default="power3", help="power3, loday or custom:FILE")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _graph_input() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("graph", nargs="?", help="graph JSON file (default: read stdin)")
    p.add_argument("--stdin", action="store_true", help="read the graph from stdin")
    return p


def build_parser() -> argparse.ArgumentParser:
    common, graph_in = _common(), _graph_input()
    parser = _Parser(prog="tubix", description="Realize and certify graph-associahedra.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("tubes", parents=[common, graph_in], help="list the tubes")
    p = sub.add_parser("tubings", parents=[common, graph_in], help="list tubings")
    p.add_argument("-k", type=int, help="only tubings with K tubes")
    p.add_argument("--max-only", action="store_true", help="only maximal tubings")
    p.add_argument("--count", action="store_true", help="print only the number of tubings")
    sub.add_parser("realize", parents=[common, graph_in], help="vertex coordinates")
    sub.add_parser("hrep", parents=[common, graph_in], help="halfspace description")
    sub.add_parser("fvector", parents=[common, graph_in], help="face counts")
    p = sub.add_parser("verify", parents=[common, graph_in], help="certify V- and H-descriptions agree")
    p.add_argument("--kmax", type=int, help="face-lattice check up to K-tubings")
    p = sub.add_parser("survey", parents=[common], help="verify every graph on N labeled nodes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--up-to", action="store_true", help="scan n = 2..N instead of only N")
    p.add_argument("--stop-on-fail", action="store_true", help="stop at the first failing graph")
    p = sub.add_parser("family", parents=[common], help="emit a named graph family")
    p.add_argument("kind", choices=FAMILIES)
    p.add_argument("size", type=int)
    sub.add_parser("export-off", parents=[common, graph_in], help="OFF mesh of a 4-node realization")
    return parser


def _read_graph(args) -> Graph:
    if args.graph and not args.stdin and args.graph != "-":
        try:
            text = Path(args.graph).read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read {args.graph}: {exc.strerror}") from exc
    else:
        text = sys.stdin.read()
    g = parse_graph(text)
    if g.n > args.max_n:
        raise UsageError(f"graph has {g.n} nodes, above --max-n {args.max_n}")
    return g


def _scheme(spec: str, n: int) -> WeightScheme:
    if spec.startswith("custom:"):
        path = spec[len("custom:"):]
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read scheme file {path}: {exc.strerror}") from exc
        scheme = load_scheme(text, name=spec)
        if scheme.n != n:
            raise UsageError(f"custom scheme has {scheme.n} weights, graph has {n} nodes")
        return scheme
    if n < 2:
        raise UsageError("realization needs a graph with at least 2 nodes")
    return make_scheme(spec, n)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _cmd_tubes(args) -> tuple[str, int]:
    g = _read_graph(args)
    tubes = [members(t) for t in enumerate_tubes(g)]
    if args.output == "text":
        return "".join(" ".join(map(str, t)) + "\n" for t in tubes), EX_OK
    if args.output == "csv":
        return _csv([["size", "nodes"]] + [[len(t), " ".join(map(str, t))] for t in tubes]), EX_OK
    return _dump({"n": g.n, "tubes": tubes}), EX_OK


def _cmd_tubings(args) -> tuple[str, int]:
    g = _read_graph(args)
    if args.max_only:
        if args.k is not None and args.k != g.n - 1:
            raise UsageError("--max-only conflicts with -k")
        if g.n < 2:
            raise UsageError("maximal tubings need n >= 2")
        found, k = enumerate_maximal_tubings(g), g.n - 1
    else:
        if args.k is not None and not 0 <= args.k <= g.n - 1:
            raise UsageError(f"-k must lie in [0, {g.n - 1}]")
        found, k = enumerate_tubings(g, args.k), args.k
    if args.count:
        return f"{len(found)}\n", EX_OK
    lists = [tubing_to_lists(t) for t in found]
    if args.output == "text":
        return "".join(json.dumps(t) + "\n" for t in lists), EX_OK
    if args.output == "csv":
        return _csv([["k", "tubing"]] + [[len(t), json.dumps(t)] for t in lists]), EX_OK
    return _dump({"n": g.n, "k": k, "count": len(lists), "tubings": lists}), EX_OK


def _cmd_realize(args) -> tuple[str, int]:
    g = _read_graph(args)
    scheme = _scheme(args.scheme, g.n)
    vertices = realize(g, scheme)
    if args.output == "text":
        return "".join(f"{json.dumps(tubing_to_lists(u))} -> ({', '.join(map(format_number, p))})\n"
                       for u, p in vertices), EX_OK
    if args.output == "csv":
        header = ["tubing"] + [f"x{i}" for i in range(g.n)]
        return _csv([header] + [[json.dumps(tubing_to_lists(u)), *map(format_number, p)]
                                for u, p in vertices]), EX_OK
    return _dump(vertices_to_json(scheme, g.n, vertices)), EX_OK


def _cmd_hrep(args) -> tuple[str, int]:
    g = _read_graph(args)
    scheme = _scheme(args.scheme, g.n)
    h = build_hrep(g, scheme)
    if args.output == "text":
        lines = [" + ".join(f"x{i}" for i in range(g.n)) + f" = {format_number(h.total)}"]
        lines += [" + ".join(f"x{i}" for i in members(hs.support)) + f" >= {format_number(hs.rhs)}"
                  for hs in h.halfspaces]
        return "\n".join(lines) + "\n", EX_OK
    if args.output == "csv":
        return _csv([["tube", "rhs"]] + [[" ".join(map(str, members(hs.tube))), format_number(hs.rhs)]
                                         for hs in h.halfspaces]), EX_OK
    return _dump(hrep_to_json(scheme, h)), EX_OK


def _cmd_fvector(args) -> tuple[str, int]:
    g = _read_graph(args)
    if g.n < 2:
        raise UsageError("f-vector needs n >= 2")
    fv = f_vector(g)
    if args.output == "text":
        return " ".join(map(str, fv)) + "\n", EX_OK
    if args.output == "csv":
        return _csv([["k", "count"]] + [[k, c] for k, c in enumerate(fv, start=1)]), EX_OK
    return _dump({"n": g.n, "f_vector": fv}), EX_OK


def _report_text(report) -> str:
    lines = [f"graph {report.graph.to_json()} scheme {report.scheme}"]
    for c in report.checks:
        extra = f"  {json.dumps(c.witness)}" if c.witness else (f"  ({c.detail})" if c.detail else "")
        lines.append(f"  {c.status.upper():7} {c.name}{extra}")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def _cmd_verify(args) -> tuple[str, int]:
    g = _read_graph(args)
    scheme = _scheme(args.scheme, g.n)
    report = full_report(g, scheme, args.oracle_cap, args.kmax)
    if args.output == "text":
        return _report_text(report), report.exit_code
    if args.output == "csv":
        return _csv([["check", "status"]] + [[c.name, c.status] for c in report.checks]), report.exit_code
    return _dump(report.to_dict()), report.exit_code


def _cmd_survey(args, out) -> int:
    if args.n < 2 or args.n > args.max_n:
        raise UsageError(f"--n must lie in [2, {args.max_n}]")
    if args.scheme.startswith("custom:"):
        raise UsageError("survey supports only the named schemes")
    make_scheme(args.scheme, 2)
    sizes = range(2, args.n + 1) if args.up_to else [args.n]
    code = EX_OK
    total = failed = 0
    for n in sizes:
        for report in survey(n, args.scheme, args.connected_only, args.jobs, args.oracle_cap):
            total += 1
            if args.output == "text":
                out.write(f"{report.verdict}\t{report.graph.to_json()}\n")
            else:
                out.write(_dump(report.to_dict()))
            out.flush()
            if report.verdict == FAIL:
                failed += 1
                code = EX_FAIL
                bad = report.first_failure
                print(f"first failure: graph {report.graph.to_json()} check {bad.name} "
                      f"witness {json.dumps(bad.witness)}", file=sys.stderr)
                if args.stop_on_fail:
                    return code
            elif not report.complete and code == EX_OK:
                code = EX_INCOMPLETE
    print(f"{total} graphs, {failed} failed", file=sys.stderr)
    return code


def _cmd_family(args) -> tuple[str, int]:
    return generate_family(args.kind, args.size).to_json() + "\n", EX_OK


def _cmd_export_off(args) -> tuple[str, int]:
    g = _read_graph(args)
    scheme = _scheme(args.scheme, g.n)
    try:
        return export_off(g, scheme, args.oracle_cap), EX_OK
    except ExportError as exc:
        print(f"tubix: {exc}", file=sys.stderr)
        return "", EX_FAIL if "verification" in str(exc) else EX_USAGE


COMMANDS = {
    "tubes": _cmd_tubes,
    "tubings": _cmd_tubings,
    "realize": _cmd_realize,
    "hrep": _cmd_hrep,
    "fvector": _cmd_fvector,
    "verify": _cmd_verify,
    "family": _cmd_family,
    "export-off": _cmd_export_off,
}


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "survey":
            if args.outfile:
                with open(args.outfile, "w", encoding="utf-8") as fh:
                    return _cmd_survey(args, fh)
            return _cmd_survey(args, sys.stdout)
        text, code = COMMANDS[args.command](args)
        if args.outfile:
            Path(args.outfile).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return code
    except (UsageError, GraphError, ValueError) as exc:
        print(f"tubix: {exc}", file=sys.stderr)
        return EX_USAGE
    except OSError as exc:
        print(f"tubix: {exc}", file=sys.stderr)
        return EX_IOERR
    except SolverError as exc:
        print(f"tubix: {exc}", file=sys.stderr)
        return EX_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
