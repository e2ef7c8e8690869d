"""Command-line entry point: ``neumaier <subcommand> ...``.

Exit status is 0 when a result or verdict was reached, 1 for an inconclusive
verdict or a timeout, and 2 for usage and input errors.  Tabular output is
TSV with a header row; progress goes to standard error.
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .canon import automorphism_group, canonical_graph
from .constructions import LatinSquare, gamma25, latin_square_graph, square_order5
from .errors import BudgetExceeded, NeumaierError
from .graph import Graph, classify, decode_graph6, encode_graph6
from .ilp.campaign import CampaignOptions, Verdict, run_campaign
from .ilp.designs import fixed_edges_from_design, partition_fixing, read_design
from .ilp.export import export_model
from .ilp.model import BranchSense, build_model
from .ilp.solver import Outcome, solve_feasibility
from .params import ParameterSet, check_all, complement_parameters, enumerate_admissible
from . import search

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_duration(text: str) -> float:
    """``90``, ``90s``, ``30m``, ``2h`` or ``1h30m`` to seconds."""
    m = re.fullmatch(r"(?:(\d+(?:\.\d+)?)h)?(?:(\d+(?:\.\d+)?)m)?(?:(\d+(?:\.\d+)?)s?)?", text.strip())
    if not text.strip() or m is None:
        raise argparse.ArgumentTypeError(f"bad duration {text!r}; use e.g. 90, 30m, 2h")
    h, mi, s = (float(x) if x else 0.0 for x in m.groups())
    return h * 3600 + mi * 60 + s


def _params(text: str) -> ParameterSet:
    try:
        return ParameterSet.parse(text)
    except (NeumaierError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", ",").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    xs = _ints(text)
    if len(xs) != 2 or xs[0] == xs[1] or min(xs) < 1:
        raise argparse.ArgumentTypeError(f"expected two distinct 1-based vertices 'u,w', got {text!r}")
    return (min(xs) - 1, max(xs) - 1)


def _err(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _read_graphs(path) -> list[Graph]:
    text = sys.stdin.read() if path in (None, "-") else Path(path).read_text()
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(decode_graph6(line))
        except NeumaierError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
    return out


def _write(args, text: str) -> None:
    if getattr(args, "output", None) and args.output != "-":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# params

def cmd_params(args) -> int:
    if args.action == "enumerate":
        rows = enumerate_admissible(args.vmax)
    else:
        if args.tuple is None:
            raise UsageError("params check needs a parameter tuple, e.g. 16,9,4,2,4")
        rows = [args.tuple]
    lines = ["v\tk\tlambda\te\ts\tstatus"]
    for p in rows:
        rep = check_all(p)
        status = "admissible" if rep.passed else "rejected"
        lines.append("\t".join(map(str, p.astuple())) + f"\t{status}")
        if args.report:
            for cid, desc in rep.failures:
                lines.append(f"#\t{cid}\t{desc}")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / construct / canon

def verdict_line(g: Graph) -> str:
    v = classify(g)
    if v.parameters is not None:
        return f"{v.tag} " + " ".join(map(str, v.parameters))
    extra = f"\t{v.witness.reason}" if v.witness else ""
    return f"{v.tag} {g.n}{extra}"


def cmd_verify(args) -> int:
    for g in _read_graphs(args.input):
        print(verdict_line(g))
    return EXIT_OK


def _emit_graph(args, g: Graph) -> None:
    if args.edges:
        lines = [f"{u + 1} {w + 1}" for u, w in g.edges()]
        _write(args, "\n".join(lines) + "\n")
    else:
        _write(args, encode_graph6(g) + "\n")


def cmd_construct(args) -> int:
    if args.which == "gamma25":
        g = gamma25()
    elif args.which == "gamma1":
        g = search.gamma1()
    elif args.which == "latin5":
        g = latin_square_graph(square_order5())
    else:
        if args.file is not None:
            sq = LatinSquare.parse(Path(args.file).read_text())
            if args.order is not None and sq.n != args.order:
                raise UsageError(f"{args.file} holds a square of order {sq.n}, not {args.order}")
        elif args.order is not None:
            sq = LatinSquare.cyclic(args.order)
        else:
            raise UsageError("construct ls needs --file or --order")
        g = latin_square_graph(sq)
    _emit_graph(args, g)
    return EXIT_OK


def cmd_canon(args) -> int:
    print("canonical_graph6\tgroup_order\torbits")
    for g in _read_graphs(args.input):
        grp = automorphism_group(g)
        orbits = " | ".join(",".join(str(u + 1) for u in o) for o in grp.vertex_orbits)
        print(f"{encode_graph6(canonical_graph(g))}\t{grp.order}\t{orbits}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# search

def _stats_footer(st: search.SearchStats) -> str:
    head = "#nodes_expanded\tcompletions_found\tisomorph_rejections\tseconds\tstatus"
    return head + "\n" + "\t".join(st.as_row()) + "\n"


def cmd_search(args) -> int:
    code = EXIT_OK
    if args.mode == "degseq":
        if args.sequence is None:
            raise UsageError("search degseq needs a degree sequence, e.g. 1,3,3,3,3,5")
        graphs = search.enumerate_by_degree_sequence(args.sequence)
        for g in graphs:
            print(encode_graph6(g))
        print(f"#count\t{len(graphs)}")
        return EXIT_OK
    if args.mode == "diamondfree":
        graphs = search.enumerate_regular_diamondfree(args.n, args.degree)
        print("graph6\ttriangle_partition")
        for g in graphs:
            print(f"{encode_graph6(g)}\t{'yes' if search.triangle_partition(g) else 'no'}")
        return EXIT_OK
    if args.mode == "lemma51":
        try:
            graphs, table, st = search.lemma51_pipeline(budget=args.budget, progress=_err)
        except BudgetExceeded as exc:
            graphs, st, code = exc.partial or [], exc.stats, EXIT_INCONCLUSIVE
            table = []
            _err(str(exc))
        for g in graphs:
            print(encode_graph6(g))
        print("#seed\tstage1\tstage2\tstage3")
        for row in table:
            print("#" + "\t".join(map(str, row)))
        sys.stdout.write(_stats_footer(st))
        return code
    if args.params is None:
        raise UsageError("search unique needs --params")
    try:
        graphs, st = search.exhaustive_strict_search(args.params, args.budget, args.workers,
                                                     args.checkpoint, args.resume)
    except BudgetExceeded as exc:
        graphs, st, code = exc.partial or [], exc.stats, EXIT_INCONCLUSIVE
        _err(str(exc))
    for g in graphs:
        print(encode_graph6(g))
    sys.stdout.write(_stats_footer(st))
    return code


# ---------------------------------------------------------------------------
# ilp

def _read_fixed_edges(path) -> list[tuple[int, int]]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            u, w = (int(x) for x in parts)
        except ValueError:
            raise UsageError(f"{path}: line {lineno}: expected 'u w', got {line!r}") from None
        if u < 1 or w < 1 or u == w:
            raise UsageError(f"{path}: line {lineno}: vertices are distinct and 1-based")
        out.append((min(u, w) - 1, max(u, w) - 1))
    return out


def _model_from_args(args):
    cp = complement_parameters(args.params)
    if args.design is not None:
        fixed = fixed_edges_from_design(read_design(args.design, cp.s), cp)
    elif args.fixed is not None:
        fixed = _read_fixed_edges(args.fixed)
    elif args.partition:
        fixed = partition_fixing(cp, args.group_adjacency)
    else:
        fixed = []
    if args.branch is not None:
        sense = BranchSense(args.sense)
        return build_model(cp, fixed, args.branch, sense, include_er_branch=True)
    return build_model(cp, fixed, include_er_branch=False)


def _add_model_args(p) -> None:
    p.add_argument("--params", type=_params, required=True, help="v,k,lambda,e,s of the Neumaier graph")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--design", help="design file: one block per line, 1-based points, '#' comments")
    src.add_argument("--fixed", help="fixed-edge file: 'u w' per line, 1-based")
    src.add_argument("--partition", action="store_true", help="fix coclique edges by the pair partition")
    p.add_argument("--group-adjacency", action="store_true",
                   help="with --partition: also join vertices serving the same coclique pair")
    p.add_argument("--branch", type=_pair, help="pair 'u,w' (1-based) forced adjacent for the branch")
    p.add_argument("--sense", choices=[s.value for s in BranchSense], default="more",
                   help="branch side: 'more' or 'fewer' common neighbours than lambda'")


def cmd_encode(args) -> int:
    _write(args, export_model(_model_from_args(args), args.format))
    return EXIT_OK


def cmd_solve(args) -> int:
    m = _model_from_args(args)
    res = solve_feasibility(m, args.budget)
    print("outcome\tgraph6\tnodes\tseconds")
    g6 = encode_graph6(res.graph) if res.graph is not None else "-"
    print(f"{res.outcome}\t{g6}\t{res.stats.nodes}\t{res.stats.wall_time:.3f}")
    return EXIT_INCONCLUSIVE if res.outcome is Outcome.Timeout else EXIT_OK


def cmd_campaign(args) -> int:
    files = []
    if args.designs is not None:
        d = Path(args.designs)
        if not d.is_dir():
            raise UsageError(f"--designs {d} is not a directory")
        files = sorted(f for f in d.iterdir() if f.is_file() and not f.name.startswith("."))
        if not files:
            raise UsageError(f"--designs {d} holds no design files")
    opts = CampaignOptions(budget=args.budget, assume_no_srg=args.assume_no_srg,
                           group_adjacency=args.group_adjacency, export_only=args.export_only,
                           export_format=args.format, workers=args.workers)
    report = run_campaign(args.params, files, opts, progress=_err)
    _write(args, report.to_tsv(times=not args.no_times))
    return EXIT_INCONCLUSIVE if report.verdict is Verdict.Inconclusive and args.export_only is None \
        else EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="neumaier", allow_abbrev=False,
                                 description="Tools for (strictly) Neumaier graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        p = sub.add_parser(name, allow_abbrev=False, **kw)
        p.set_defaults(func=func)
        return p

    p = add("params", cmd_params, help="admissible parameter tuples (TSV)")
    p.add_argument("action", choices=["enumerate", "check"])
    p.add_argument("tuple", nargs="?", type=_params, help="for 'check': v,k,lambda,e,s")
    p.add_argument("--vmax", type=int, default=64, help="largest v for 'enumerate' (default 64)")
    p.add_argument("--report", action="store_true", help="add a row per failed condition")
    p.add_argument("-o", "--output")

    p = add("verify", cmd_verify, help="classify graph6 lines: tag followed by v k lambda e s")
    p.add_argument("input", nargs="?", help="graph6 file, one graph per line (default stdin)")

    p = add("construct", cmd_construct, help="print a named construction")
    p.add_argument("which", choices=["gamma25", "gamma1", "latin5", "ls"])
    p.add_argument("--order", type=int, help="ls: order of the Latin square")
    p.add_argument("--file", help="ls: square as n lines of n 1-based colours")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--graph6", action="store_true", help="graph6 output (default)")
    fmt.add_argument("--edges", action="store_true", help="'u w' edge list, 1-based")
    p.add_argument("-o", "--output")

    p = add("canon", cmd_canon, help="canonical graph6, group order and vertex orbits (TSV)")
    p.add_argument("input", nargs="?", help="graph6 file (default stdin)")

    p = add("search", cmd_search, help="exhaustive generation")
    p.add_argument("mode", choices=["unique", "degseq", "diamondfree", "lemma51"])
    p.add_argument("sequence", nargs="?", type=_ints, help="degseq: comma-separated degrees")
    p.add_argument("--params", type=_params, help="unique: v,k,lambda,e,s")
    p.add_argument("--budget", type=parse_duration, help="time limit, e.g. 90s, 30m, 2h")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", help="unique: write the open frontier here when the budget runs out")
    p.add_argument("--resume", help="unique: continue from a checkpoint file")
    p.add_argument("--n", type=int, default=9, help="diamondfree: vertex count")
    p.add_argument("--degree", type=int, default=4, help="diamondfree: degree")

    p = add("encode-ilp", cmd_encode, help="write the feasibility model for the complement")
    _add_model_args(p)
    p.add_argument("--format", choices=["lp", "mps"], default="lp")
    p.add_argument("-o", "--output")

    p = add("solve", cmd_solve, help="solve one model with the built-in solver")
    _add_model_args(p)
    p.add_argument("--budget", type=parse_duration, default=3600.0)

    p = add("campaign", cmd_campaign, help="all models needed to settle a parameter set")
    p.add_argument("--params", type=_params, required=True)
    p.add_argument("--designs", help="directory of design files, one per isomorphism class")
    p.add_argument("--assume-no-srg", action="store_true",
                   help="drop the edge-regularity branch (no strongly regular graph exists)")
    p.add_argument("--group-adjacency", action="store_true",
                   help="partition fixing: also join vertices serving the same coclique pair")
    p.add_argument("--export-only", type=Path, metavar="DIR", help="write models to DIR without solving")
    p.add_argument("--format", choices=["lp", "mps"], default="lp", help="export format")
    p.add_argument("--budget", type=parse_duration, default=3600.0, help="per-run time limit")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-times", action="store_true", help="omit the seconds column")
    p.add_argument("-o", "--output")
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, NeumaierError, OSError) as exc:
        _err(f"neumaier {args.command}: {exc}")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
