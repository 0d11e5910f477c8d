"""Command line: ``turan-forest <command> ...``.

Exit status: 0 success / PASS / free, 1 FAIL or forest found where
freeness was expected, 2 usage error.  ``--json`` prints exactly one JSON
document on stdout.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from . import constructions as C
from . import formulas as F
from ._accel import BACKEND
from .containment import contains_forest, verify_embedding
from .forest import ForestSpecError, parse_spec
from .graph import Graph6Error, graph6_decode, graph6_encode

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, doc: dict, text: str) -> None:
    if args.json:
        json.dump(doc, sys.stdout, indent=None if args.compact else 2, sort_keys=False)
        sys.stdout.write("\n")
    else:
        print(text)


def _read_graph(text: str | None):
    """A graph6 line, an inline construction (g1:/g2:/g3:/h:) or '-'/None for stdin.

    Returns (graph, descriptor or None).
    """
    if text is None or text == "-":
        line = sys.stdin.readline().strip()
        if not line:
            raise UsageError("expected a graph6 line on stdin")
        text = line
    if ":" in text and not text.startswith(">>graph6<<"):
        d = C.parse_construction(text)
        return d.build(), d
    return graph6_decode(text), None


# --------------------------------------------------------------------------

def cmd_formula(args) -> int:
    fam = args.family
    need = {
        "path": ("n", "l"),
        "two-p5": ("n",),
        "even-paths": ("n", "k", "l"),
        "stars": ("n", "k", "l"),
        "path-star": ("n", "k1", "k2", "l"),
        "bracket-path": ("n", "m", "l"),
        "bracket-star": ("n", "s"),
    }[fam]
    missing = [f"--{x}" for x in need if getattr(args, x) is None]
    if missing:
        raise UsageError(f"--family {fam} needs {', '.join(missing)}")
    if fam == "bracket-path":
        v = F.bracket_path(args.n, args.m, args.l)
        _emit(args, {"family": fam, "value": v}, str(v))
        return EXIT_OK
    if fam == "bracket-star":
        v = F.bracket_star(args.n, args.s)
        _emit(args, {"family": fam, "value": v}, str(v))
        return EXIT_OK
    res = {
        "path": lambda: F.ex_path(args.n, args.l),
        "two-p5": lambda: F.ex_two_p5(args.n),
        "even-paths": lambda: F.ex_k_even_paths(args.n, args.k, args.l),
        "stars": lambda: F.ex_k_stars(args.n, args.k, args.l),
        "path-star": lambda: F.ex_path_star(args.n, args.k1, args.k2, args.l),
    }[fam]()
    doc = {"family": fam, **res.to_json()}
    lines = [f"value      {res.value}", f"applicable {res.applicable}", f"threshold  {res.threshold}"]
    if res.note:
        lines.append(f"note       {res.note}")
    for d in res.extremal:
        lines.append(f"extremal   {d.name} {dict(d.params)}: {d.expr}  ({d.expr.size} edges)")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_construct(args) -> int:
    d = C.parse_construction(args.construction)
    g = d.build()
    try:
        formula = C.edge_formula(d)
    except C.NoClosedForm:
        formula = None
    doc = {
        "name": d.name,
        "params": dict(d.params),
        "expr": str(d.expr),
        "n": g.n,
        "edges_formula": formula,
        "edges_counted": g.edge_count,
        "graph6": graph6_encode(g),
    }
    text = f"{graph6_encode(g)}" if args.graph6_only else (
        f"{d}\nn={g.n} edges_counted={g.edge_count} edges_formula={formula}\n{graph6_encode(g)}")
    _emit(args, doc, text)
    return EXIT_OK


def cmd_check_free(args) -> int:
    src = args.construct if args.construct is not None else args.graph
    g, d = _read_graph(src)
    spec = parse_spec(args.forest)
    emb = contains_forest(g, spec, d.symmetry() if d else None)
    doc = {"forest": str(spec), "n": g.n, "edges": g.edge_count, "free": emb is None,
           "certificate": emb.to_json() if emb else None}
    if emb is not None and not verify_embedding(g, spec, emb):  # pragma: no cover - kernel bug guard
        raise RuntimeError("search returned an invalid certificate")
    if emb is None:
        text = f"free: the graph (n={g.n}, e={g.edge_count}) contains no {spec}"
    else:
        parts = "; ".join(f"{c}: {list(p)}" for c, p in zip(spec.components, emb.parts))
        text = f"contains {spec}: {parts}"
    _emit(args, doc, text)
    return EXIT_OK if emb is None else EXIT_FAIL


def cmd_oracle(args) -> int:
    from .oracle import turan_oracle

    res = turan_oracle(args.n, parse_spec(args.forest), jobs=args.jobs, cache_dir=args.cache_dir,
                       resume=args.resume, seed=not args.no_seed)
    text = "\n".join([f"ex({res.n}, {res.spec}) = {res.max_edges}",
                      f"graphs examined: {res.graphs_examined}",
                      *[f"extremal: {c}" for c in res.extremal_classes]])
    _emit(args, res.to_json(), text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    reports = run_suite(args.suite, jobs=args.jobs, seed=args.seed)
    doc = {"suite": args.suite, "status": "FAIL" if any(r.status == "FAIL" for r in reports) else "PASS",
           "reports": [r.to_json() for r in reports]}
    if args.report:
        Path(args.report).write_text(json.dumps(doc, indent=2) + "\n")
    rows = [f"{'check':<18} {'status':<7} {'pass':>6} {'fail':>6} {'skip':>6}"]
    for r in reports:
        c = r.counts()
        rows.append(f"{r.check_id:<18} {r.status:<7} {c['PASS']:>6} {c['FAIL']:>6} {c['SKIPPED']:>6}")
        for p in r.failures()[:5]:
            rows.append(f"    FAIL {p.params}: {p.reason}")
        if r.note:
            rows.append(f"    note: {r.note}")
    _emit(args, doc, "\n".join(rows))
    return EXIT_FAIL if doc["status"] == "FAIL" else EXIT_OK


def cmd_crossover(args) -> int:
    res = F.crossover_scan(args.f, args.g, args.lo, args.hi, args.threshold, trace=args.trace,
                           chunk=args.chunk, jobs=args.jobs)
    lines = [f"{args.f} < {args.g} on [{args.lo}, {args.hi}]",
             f"stabilization {res.stabilization if res.stabilization is not None else 'not reached'}"]
    if args.threshold is not None:
        lines += [f"threshold     {res.threshold}", f"sufficient    {res.sufficient}", f"slack         {res.slack}"]
    if res.trace is not None:
        lines += [f"{n}\t{a}\t{b}" for n, a, b in res.trace]
    _emit(args, res.to_json(), "\n".join(lines))
    return EXIT_FAIL if res.sufficient is False else EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document")
    common.add_argument("--compact", action="store_true", help="single-line JSON")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (oracle, verify, crossover)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--cache-dir", default=None, help="directory for the oracle result cache")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="turan-forest", description="Turán numbers of path-star forests.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("formula", parents=[common], help="closed-form Turán numbers")
    f.add_argument("--family", required=True,
                   choices=["path", "two-p5", "even-paths", "stars", "path-star", "bracket-path", "bracket-star"])
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--l", type=int, help="path order (stars: number of leaves)")
    f.add_argument("--k", type=int, help="number of copies (even-paths, stars)")
    f.add_argument("--k1", type=int)
    f.add_argument("--k2", type=int)
    f.add_argument("--m", type=int, help="bracket-path m")
    f.add_argument("--s", type=int, help="bracket-star s")
    f.set_defaults(func=cmd_formula)

    c = sub.add_parser("construct", parents=[common], help="build a named construction")
    c.add_argument("construction", help="g1:n,k,l | g2:n,k1,k2,L | g3:n,k | h:n,k,l,s")
    c.add_argument("--graph6-only", action="store_true", help="print only the graph6 line")
    c.set_defaults(func=cmd_construct)

    cf = sub.add_parser("check-free", parents=[common], help="does a graph contain the forest?")
    src = cf.add_mutually_exclusive_group()
    src.add_argument("--graph", help="graph6 line, inline construction, or - for stdin (default)")
    src.add_argument("--construct", help="inline construction, e.g. g3:38,0")
    cf.add_argument("--forest", required=True, help="forest spec, e.g. 2P5+S4")
    cf.set_defaults(func=cmd_check_free)

    o = sub.add_parser("oracle", parents=[common], help="exact ex(n, forest) by enumeration (n <= 10)")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--forest", required=True)
    o.add_argument("--resume", help="checkpoint file for the last enumeration level")
    o.add_argument("--no-seed", action="store_true", help="do not prune with a known free construction")
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", default="all", help="suite id or 'all'")
    v.add_argument("--report", help="write the JSON report here")
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("crossover", parents=[common], help="where does f < g start to hold for good?")
    x.add_argument("--f", required=True, help="formula id, e.g. bracket_path:10,5")
    x.add_argument("--g", required=True, help="formula id, e.g. linear:3,-5")
    x.add_argument("--lo", type=int, required=True)
    x.add_argument("--hi", type=int, required=True)
    x.add_argument("--threshold", type=int, help="claimed bound to test for sufficiency")
    x.add_argument("--trace", action="store_true", help="include per-n values")
    x.add_argument("--chunk", type=int, default=1 << 20, help="scan chunk size")
    x.set_defaults(func=cmd_crossover)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ForestSpecError, Graph6Error, ValueError) as exc:
        parser.exit(EXIT_USAGE, f"{parser.prog} {args.command}: error: {exc}\n")
    except BrokenPipeError:  # e.g. piped into head
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
