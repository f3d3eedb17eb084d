"""Command-line front door.

    python -m spectral_connectivity analyze --named petersen
    python -m spectral_connectivity certify --edge -k 3 --named petersen --oracle
    python -m spectral_connectivity spectrum --g6 'C~' --matrix signless
    python -m spectral_connectivity gen --exhaustive 5 --connected
    python -m spectral_connectivity verify --exhaustive 5 --all --seed 1 --json

Graph input is taken from ``--named``, then ``--g6``, then a file path
(first graph6 line), then standard input; giving more than one explicit
source is a configuration error.  Exit codes: 0 success, 1 counterexample
found by ``verify``, 2 bad flags or unparsable input.
"""

from __future__ import annotations

import argparse
import sys

from . import certify as cert
from .certify import EPS, analyze, certify_edge, certify_vertex, compare_thresholds, dumps
from .corpus import MAX_EXHAUSTIVE, CorpusSpec, enumerate_labeled, gnp_stream, parse_named
from .errors import GraphError
from .graph import Graph, parse_graph6, write_graph6
from .spectra import adjacency, eigenvalues_sym, laplacian, pencil, signless_laplacian
from .verify import PROPERTIES, Caps, default_threads, run_campaign


class ConfigError(Exception):
    """Raised for flag combinations argparse cannot reject on its own."""


def _fmt(x, digits: int = 6) -> str:
    return "-" if x is None else f"{x:.{digits}f}"


def _emit(args, payload: dict, table: str) -> None:
    print(dumps(payload) if args.json else table)


def _read_graph(args) -> Graph:
    given = [s for s in ("named", "g6", "path") if getattr(args, s, None)]
    if len(given) > 1:
        raise ConfigError(f"give exactly one graph source, got {', '.join('--' + s for s in given)}")
    if args.named:
        return parse_named(args.named)
    if args.g6:
        return parse_graph6(args.g6)
    if args.path:
        with open(args.path) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ConfigError("no graph on input")
    return parse_graph6(lines[0])


def _rows_table(results) -> str:
    out = [f"{'theorem':<26}{'k':>3}  {'stat':<8}{'threshold':>14}{'value':>14}  fired"]
    for r in results:
        row = r.row
        threshold = _fmt(row.rhs) if row.applicable else "n/a"
        out.append(f"{row.theorem:<26}{row.k:>3}  {row.statistic:<8}{threshold:>14}"
                   f"{_fmt(r.lhs):>14}  {'yes' if r.fired else 'no'}")
    return "\n".join(out)


def cmd_analyze(args) -> int:
    a = analyze(_read_graph(args), eps=args.eps)
    s = a.stats
    head = [
        f"graph6   {a.graph6}",
        f"n={s.n}  m={s.m}  delta={s.delta}  Delta={s.Delta}  girth={s.girth or 'acyclic'}  omega={s.omega}",
        f"kappa={a.kappa}  kappa'={a.kappa_edge}",
        f"mu1={_fmt(s.mu1)}  mu={_fmt(s.mu)}  lambda2={_fmt(s.lambda2)}  q2={_fmt(s.q2)}",
        "",
        _rows_table(a.results),
    ]
    _emit(args, a.to_dict(), "\n".join(head))
    return 0


def cmd_certify(args) -> int:
    G = _read_graph(args)
    run = certify_vertex if args.vertex else certify_edge
    c = run(G, args.k, with_oracle=args.oracle, r=args.r_override, eps=args.eps)
    lines = [f"{c.verdict}: {c.target}-connectivity >= {c.k} for {c.graph6}",
             "fired: " + (", ".join(r.row.theorem for r in c.fired) or "none")]
    if c.oracle is not None:
        lines.append(f"oracle: {c.oracle} ({'agrees' if c.agrees else 'DISAGREES'})")
    lines += ["", _rows_table(c.results)]
    _emit(args, c.to_dict(), "\n".join(lines))
    return 0


MATRICES = {"laplacian": laplacian, "adjacency": adjacency, "signless": signless_laplacian}


def cmd_spectrum(args) -> int:
    G = _read_graph(args)
    if args.pencil:
        a, b = args.pencil
        M, name = pencil(G, a, b), f"pencil({a:g},{b:g})"
    else:
        M, name = MATRICES[args.matrix](G), args.matrix
    sp = eigenvalues_sym(M)
    values = [cert._num(v) for v in sp.values]
    payload = {"graph6": write_graph6(G), "matrix": name, "values": values,
               "residual": cert._num(sp.residual), "sweeps": sp.iterations}
    table = "\n".join([f"{name} spectrum of {payload['graph6']} (descending)"]
                      + [f"{v:.9g}" for v in values] + [f"residual {sp.residual:.3g}, {sp.iterations} sweeps"])
    _emit(args, payload, table)
    return 0


def cmd_compare(args) -> int:
    p = cert.ParamSet(args.n, args.delta, args.Delta or args.delta, args.girth, args.r, args.k)
    report = compare_thresholds(p)
    lines = [f"{r.theorem:<26}{r.target:<8}{_fmt(r.rhs, 9) if r.applicable else 'n/a':>16}  {r.reason}"
             for r in report.rows]
    lines += [f"{c.name}: new {float(c.lhs):.9g} vs prior {float(c.rhs):.9g} -> {'holds' if c.holds else 'FAILS'}"
              for c in report.remarks]
    _emit(args, report.to_dict(), "\n".join(lines))
    return 0


def cmd_gen(args) -> int:
    if args.exhaustive is not None:
        graphs = enumerate_labeled(args.exhaustive, args.connected, args.min_degree)
    elif args.gnp:
        if args.seed is None:
            raise ConfigError("--gnp needs --seed")
        n, p, count = _gnp_args(args.gnp)
        graphs = gnp_stream(n, p, count, args.seed)
    else:
        graphs = (parse_named(name) for name in args.named)
    out = sys.stdout
    for G in graphs:
        out.write(write_graph6(G) + "\n")
    return 0


def _gnp_args(values):
    n, p, count = values
    try:
        return int(n), float(p), int(count)
    except ValueError:
        raise ConfigError("--gnp takes N P COUNT") from None


def _corpus(args) -> CorpusSpec:
    if args.exhaustive is not None:
        return CorpusSpec("exhaustive", n=args.exhaustive, connected=not args.include_disconnected,
                          min_degree=args.min_degree, min_girth=args.min_girth)
    if args.gnp:
        if args.seed is None:
            raise ConfigError("--gnp needs --seed")
        n, p, count = _gnp_args(args.gnp)
        return CorpusSpec("random", n=n, p=p, count=count, seed=args.seed)
    if args.file:
        return CorpusSpec("file", path=args.file)
    return CorpusSpec("named", names=tuple(args.named))


def cmd_verify(args) -> int:
    if args.all or not args.properties:
        properties = PROPERTIES
    else:
        properties = tuple(p.strip() for p in args.properties.split(",") if p.strip())
        unknown = set(properties) - set(PROPERTIES)
        if unknown:
            raise ConfigError(f"unknown properties {sorted(unknown)}; known: {', '.join(PROPERTIES)}")
    caps = Caps(cut_cap=args.cut_cap, quotient_cap=args.quotient_cap, pair_cap=args.pair_cap,
                samples=args.samples)
    result = run_campaign(_corpus(args), properties, caps=caps, seed=args.seed, eps=args.eps,
                          scale=args.scale, threads=args.threads, engine=args.engine)
    if args.json:
        print(result.to_json())
    else:
        print(f"graphs checked: {result.graphs}  ({result.elapsed:.1f} s)")
        for prop, count in sorted(result.checks_run.items()):
            print(f"  {prop:<16}{count:>10}")
        print(f"counterexamples: {len(result.counterexamples)}")
        for c in result.counterexamples[:20]:
            print(f"  {c.property} {c.graph6} {dumps(c.witness)}")
        print(f"razor-edge rows: {len(result.razor_edges)}")
    return result.exit_code


def _graph_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("path", nargs="?", help="file whose first line is a graph6 string")
    p.add_argument("--named", help="family[:params], e.g. petersen, cycle:8, complete_bipartite:3,3")
    p.add_argument("--g6", help="inline graph6 string")


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", help="machine-readable output")
    shared.add_argument("--threads", type=int, default=default_threads(), help="worker processes")
    shared.add_argument("--seed", type=int, help="seed for randomised corpora and sampling")
    shared.add_argument("--eps", type=float, default=EPS, help="threshold slack (default 1e-9)")

    parser = argparse.ArgumentParser(prog="spectral_connectivity", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[shared], help="invariants and every threshold row")
    _graph_source(p)
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("certify", parents=[shared], help="certify edge or vertex connectivity >= k")
    _graph_source(p)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--edge", action="store_true")
    target.add_argument("--vertex", action="store_true")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also compute the exact connectivity")
    p.add_argument("--r-override", type=int, help="clique bound r >= omega for clique rows")
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("spectrum", parents=[shared], help="eigenvalues of a graph matrix")
    _graph_source(p)
    p.add_argument("--matrix", choices=sorted(MATRICES), default="laplacian")
    p.add_argument("--pencil", nargs=2, type=float, metavar=("A", "B"), help="use aD + bA instead")
    p.set_defaults(run=cmd_spectrum)

    p = sub.add_parser("compare", parents=[shared], help="threshold table for a parameter set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--Delta", type=int)
    p.add_argument("--girth", type=int)
    p.add_argument("--r", type=int, default=2, help="clique bound")
    p.add_argument("-k", type=int, default=2)
    p.set_defaults(run=cmd_compare)

    p = sub.add_parser("gen", parents=[shared], help="emit graph6 lines")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--exhaustive", type=int, metavar="N")
    src.add_argument("--gnp", nargs=3, metavar=("N", "P", "COUNT"))
    src.add_argument("--named", nargs="+", metavar="FAMILY")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--min-degree", type=int, default=0)
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("verify", parents=[shared], help="run a verification campaign")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--exhaustive", type=int, metavar="N")
    src.add_argument("--file", metavar="PATH")
    src.add_argument("--gnp", nargs=3, metavar=("N", "P", "COUNT"))
    src.add_argument("--named", nargs="+", metavar="FAMILY")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--properties", help="comma-separated: " + ",".join(PROPERTIES))
    which.add_argument("--all", action="store_true")
    p.add_argument("--min-degree", type=int, default=0)
    p.add_argument("--min-girth", type=int)
    p.add_argument("--include-disconnected", action="store_true",
                   help="exhaustive corpora keep disconnected graphs (only the Turan probe applies)")
    defaults = Caps()
    p.add_argument("--cut-cap", type=int, default=defaults.cut_cap)
    p.add_argument("--quotient-cap", type=int, default=defaults.quotient_cap)
    p.add_argument("--pair-cap", type=int, default=defaults.pair_cap)
    p.add_argument("--samples", type=int, default=defaults.samples)
    p.add_argument("--engine", choices=("auto", "batch", "graph"), default="auto")
    p.add_argument("--scale", type=float, default=1.0,
                   help="multiply the mu thresholds (values < 1 are a harness self-test)")
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "exhaustive", None) is not None and not 1 <= args.exhaustive <= MAX_EXHAUSTIVE:
        print(f"error: --exhaustive needs 1 <= N <= {MAX_EXHAUSTIVE}", file=sys.stderr)
        return 2
    try:
        return args.run(args)
    except (ConfigError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
