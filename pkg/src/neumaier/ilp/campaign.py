"""Nonexistence campaigns: one model per fixed-edge source and branch choice.

A source is either the partition-fixed skeleton or a block design.  When the
edge-regularity branch is active every orbit of possible edges (under the
symmetries of the skeleton that fix the coclique) needs two runs, one per
side of lambda'.
"""
from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..canon import pair_orbits
from ..errors import DomainError, MissingDesigns
from ..graph import Graph, Tag, classify, complement, encode_graph6
from ..params import ParameterSet, complement_parameters, is_admissible, check_all
from .designs import fixed_edges_from_design, partition_fixing, read_design
from .export import export_model
from .model import BranchSense, IlpModel, build_model
from .solver import Outcome, _Conflict, _Propagator, branching_order, solve_feasibility


class Verdict(enum.Enum):
    Nonexistent = "Nonexistent"
    FoundGraph = "FoundGraph"
    Inconclusive = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass
class CampaignOptions:
    budget: float | None = 3600.0       # seconds per run
    assume_no_srg: bool = False
    group_adjacency: bool = False       # only with partition fixing
    export_only: Path | None = None
    export_format: str = "lp"
    workers: int = 1


@dataclass
class Run:
    source: str
    branch_pair: tuple[int, int] | None
    branch_sense: BranchSense | None
    outcome: str                        # Infeasible / Feasible / Timeout / Exported
    graph6: str = ""
    nodes: int = 0
    wall_time: float = 0.0

    def fields(self, times: bool = True) -> list[str]:
        pair = f"{self.branch_pair[0] + 1},{self.branch_pair[1] + 1}" if self.branch_pair else "-"
        out = [self.source, pair, str(self.branch_sense or "-"), self.outcome, self.graph6 or "-",
               str(self.nodes)]
        if times:
            out.append(f"{self.wall_time:.3f}")
        return out


@dataclass
class CampaignReport:
    params: ParameterSet
    runs: list[Run] = field(default_factory=list)
    verdict: Verdict = Verdict.Inconclusive
    note: str = ""

    HEADER = ["source", "branch_pair", "sense", "outcome", "graph6", "nodes", "seconds"]

    def to_tsv(self, times: bool = True) -> str:
        head = self.HEADER if times else self.HEADER[:-1]
        lines = ["\t".join(head)]
        lines += ["\t".join(r.fields(times)) for r in self.runs]
        tail = ["verdict", str(self.verdict), str(self.params)]
        if self.note:
            tail.append(self.note)
        lines.append("\t".join(tail))
        return "\n".join(lines) + "\n"


def branch_pairs(m: IlpModel) -> list[tuple[int, int]]:
    """Orbit representatives of the pairs that root propagation does not force to be non-edges."""
    prop = _Propagator(m, branching_order(m))
    try:
        st = prop.initial()
    except _Conflict:
        return []
    cands = [(u, w) for u, w in m.x_pairs() if not st.zero[u] >> w & 1]
    skeleton = Graph.from_edges(m.v, sorted(m.fixed_edges))
    coloring = [list(range(m.s)), list(range(m.s, m.v))]
    return pair_orbits(skeleton, cands, coloring)


def _sources(p: ParameterSet, cp, design_files, opts: CampaignOptions):
    if design_files:
        out = []
        for f in design_files:
            d = read_design(f, cp.s)
            out.append((Path(f).name, fixed_edges_from_design(d, cp)))
        return out
    if cp.e_c == 2 and cp.v - cp.s == cp.s * (cp.s - 1) // 2 * cp.mu_c:
        tag = "partition+groups" if opts.group_adjacency else "partition"
        return [(tag, partition_fixing(cp, opts.group_adjacency))]
    raise MissingDesigns(f"{p}: partition fixing does not apply (e'={cp.e_c}); "
                         "supply design files for the coclique")


def plan_models(p: ParameterSet, design_files=(), opts: CampaignOptions | None = None):
    """The (source, model) list a campaign runs, plus whether the branch is active."""
    opts = opts or CampaignOptions()
    if not is_admissible(p):
        raise DomainError(f"{p} is not admissible: {', '.join(check_all(p).ids())}")
    cp = complement_parameters(p)
    branch = not opts.assume_no_srg and cp.lambda_integral
    plan = []
    for name, fixed in _sources(p, cp, design_files, opts):
        base = build_model(cp, fixed, include_er_branch=False)
        if not branch:
            plan.append((name, base))
            continue
        for pq in branch_pairs(base):
            for sense in (BranchSense.MoreThanLambda, BranchSense.FewerThanLambda):
                plan.append((name, build_model(cp, fixed, pq, sense)))
    return plan, branch


def _solve_one(args):
    name, m, budget = args
    res = solve_feasibility(m, budget)
    g6 = encode_graph6(res.graph) if res.graph is not None else ""
    return Run(name, m.branch_pair, m.branch_sense, str(res.outcome), g6, res.stats.nodes,
               res.stats.wall_time)


def _model_filename(i: int, name: str, m: IlpModel, fmt: str) -> str:
    stem = Path(name).stem
    br = f"_b{m.branch_pair[0] + 1}-{m.branch_pair[1] + 1}{m.branch_sense}" if m.has_branch else ""
    return f"{i:04d}_{stem}{br}.{fmt}"


def run_campaign(p: ParameterSet, design_files=(), opts: CampaignOptions | None = None,
                 progress=None) -> CampaignReport:
    opts = opts or CampaignOptions()
    plan, branch = plan_models(p, design_files, opts)
    report = CampaignReport(p)
    cp = complement_parameters(p)
    if not cp.lambda_integral:
        report.note = f"lambda'={cp.lambda_c} not integral: edge-regularity branch dropped"
    elif opts.assume_no_srg:
        report.note = "assumed: no strongly regular graph with these parameters"
    if opts.export_only is not None:
        out = Path(opts.export_only)
        out.mkdir(parents=True, exist_ok=True)
        for i, (name, m) in enumerate(plan):
            t0 = time.monotonic()
            fn = _model_filename(i, name, m, opts.export_format)
            (out / fn).write_text(export_model(m, opts.export_format))
            report.runs.append(Run(name, m.branch_pair, m.branch_sense, "Exported", "", 0,
                                   time.monotonic() - t0))
            if progress:
                progress(f"exported {fn}")
        report.verdict = Verdict.Inconclusive
        return report
    jobs = [(name, m, opts.budget) for name, m in plan]
    if opts.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(opts.workers) as ex:
            runs = list(ex.map(_solve_one, jobs))
    else:
        runs = []
        for job in jobs:
            runs.append(_solve_one(job))
            if progress:
                r = runs[-1]
                progress(f"{r.source} {'/'.join(r.fields(False)[1:3])}: {r.outcome} ({r.wall_time:.1f}s)")
    report.runs = runs
    report.verdict = _verdict(p, runs)
    return report


def _verdict(p: ParameterSet, runs: list[Run]) -> Verdict:
    for r in runs:
        if r.outcome == "Feasible":
            from ..graph import decode_graph6
            h = complement(decode_graph6(r.graph6))
            try:
                v = classify(h)
            except DomainError:
                continue
            if v.tag is Tag.StrictlyNeumaier and v.parameters == p.astuple():
                return Verdict.FoundGraph
    if runs and all(r.outcome == "Infeasible" for r in runs):
        return Verdict.Nonexistent
    return Verdict.Inconclusive
