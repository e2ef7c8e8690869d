"""LP and MPS text for an :class:`IlpModel`, with the ``y`` variables explicit.

Variables are ``x_u_w`` and ``y_t_u_w`` with 1-based vertex labels and
``u < w``.  Row names carry the family as a prefix so that the counts can be
recovered from the text alone (see :func:`lp_family_counts`).
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .model import BranchSense, IlpModel

# row-name prefix -> family key of IlpModel.family_counts
ROW_FAMILIES = {
    "deg": "degree",
    "ya": "y_link", "yb": "y_link", "yc": "y_link",
    "cel": "co_edge", "ceh": "co_edge",
    "ccp": "coclique_pairs",
    "ccd": "coclique_degree",
    "fix": "fixed",
    "brx": "branch", "brw": "branch",
}


def xname(u: int, w: int) -> str:
    if u > w:
        u, w = w, u
    return f"x_{u + 1}_{w + 1}"


def yname(t: int, u: int, w: int) -> str:
    if u > w:
        u, w = w, u
    return f"y_{t + 1}_{u + 1}_{w + 1}"


@dataclass(frozen=True)
class Row:
    name: str
    terms: tuple[tuple[int, str], ...]
    sense: str  # one of "=", ">=", "<="
    rhs: int


def variables(m: IlpModel) -> Iterator[str]:
    for u, w in m.x_pairs():
        yield xname(u, w)
    for t, u, w in m.y_triples():
        yield yname(t, u, w)


def rows(m: IlpModel) -> Iterator[Row]:
    v, s, mu = m.v, m.s, m.mu_c
    for u in range(v):
        yield Row(f"deg_{u + 1}", tuple((1, xname(u, w)) for w in range(v) if w != u), "=", m.k_c)
    for t, u, w in m.y_triples():
        tag = f"{t + 1}_{u + 1}_{w + 1}"
        y, xtu, xtw = yname(t, u, w), xname(t, u), xname(t, w)
        yield Row(f"ya_{tag}", ((1, y), (-1, xtu), (-1, xtw)), ">=", -1)
        yield Row(f"yb_{tag}", ((1, y), (-1, xtu)), "<=", 0)
        yield Row(f"yc_{tag}", ((1, y), (-1, xtw)), "<=", 0)
    for u, w in m.x_pairs():
        ys = tuple((1, yname(t, u, w)) for t in range(v) if t not in (u, w))
        tag = f"{u + 1}_{w + 1}"
        yield Row(f"cel_{tag}", ys + ((mu, xname(u, w)),), ">=", mu)
        yield Row(f"ceh_{tag}", ys + ((-(v - mu), xname(u, w)),), "<=", mu)
    for u, w in combinations(range(s), 2):
        yield Row(f"ccp_{u + 1}_{w + 1}", ((1, xname(u, w)),), "=", 0)
    for u in range(s, v):
        yield Row(f"ccd_{u + 1}", tuple((1, xname(u, w)) for w in range(s)), "=", m.e_c)
    for u, w in sorted(m.fixed_edges):
        yield Row(f"fix_{u + 1}_{w + 1}", ((1, xname(u, w)),), "=", 1)
    if m.has_branch:
        p, q = m.branch_pair
        yield Row("brx", ((1, xname(p, q)),), "=", 1)
        ys = tuple((1, yname(t, p, q)) for t in range(v) if t not in (p, q))
        sense = ">=" if m.branch_sense is BranchSense.MoreThanLambda else "<="
        yield Row("brw", ys, sense, m.branch_bound)


def _linear(terms, width: int = 12) -> list[str]:
    parts = []
    for i, (c, name) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)} "
        if i == 0:
            parts.append(f"{'-' if c < 0 else ''}{mag}{name}")
        else:
            parts.append(f"{sign} {mag}{name}")
    return [" ".join(parts[i:i + width]) for i in range(0, len(parts), width)]


def _header(m: IlpModel) -> str:
    br = f" branch={m.branch_pair[0] + 1},{m.branch_pair[1] + 1}:{m.branch_sense}" if m.has_branch else ""
    return (f"v={m.v} k'={m.k_c} lambda'={m.lambda_c} mu'={m.mu_c} e'={m.e_c} s={m.s} "
            f"fixed={len(m.fixed_edges)}{br}")


def to_lp(m: IlpModel) -> str:
    out = [f"\\ {_header(m)}", "Minimize", " obj: 0 x_1_2", "Subject To"]
    for r in rows(m):
        lines = _linear(r.terms)
        lines[0] = f" {r.name}: {lines[0]}"
        for i in range(1, len(lines)):
            lines[i] = f"   {lines[i]}"
        lines[-1] += f" {r.sense} {r.rhs}"
        out.extend(lines)
    out.append("Bounds")
    names = list(variables(m))
    out.extend(f" 0 <= {n} <= 1" for n in names)
    out.append("Binaries")
    out.extend(" " + " ".join(names[i:i + 10]) for i in range(0, len(names), 10))
    out.append("End")
    return "\n".join(out) + "\n"


def to_mps(m: IlpModel, name: str = "NEUMAIER") -> str:
    """Column-aligned MPS.  Names longer than eight characters need a reader
    that splits on whitespace, which every mainstream solver does."""
    all_rows = list(rows(m))
    sense_code = {"=": "E", ">=": "G", "<=": "L"}
    out = [f"* {_header(m)}", f"NAME          {name}", "ROWS", " N  OBJ"]
    out.extend(f" {sense_code[r.sense]}  {r.name}" for r in all_rows)
    cols: dict[str, list[tuple[str, int]]] = {n: [] for n in variables(m)}
    for r in all_rows:
        for c, var in r.terms:
            cols[var].append((r.name, c))
    out.append("COLUMNS")
    out.append("    MARKER                 'MARKER'                 'INTORG'")
    first = True
    for var, entries in cols.items():
        if first:
            out.append(f"    {var:<12}  {'OBJ':<12}  {0:>12}")
            first = False
        for rname, c in entries:
            out.append(f"    {var:<12}  {rname:<16}  {c:>12}")
    out.append("    MARKER                 'MARKER'                 'INTEND'")
    out.append("RHS")
    out.extend(f"    {'RHS':<12}  {r.name:<16}  {r.rhs:>12}" for r in all_rows if r.rhs != 0)
    out.append("BOUNDS")
    out.extend(f" BV BND       {var}" for var in cols)
    out.append("ENDATA")
    return "\n".join(out) + "\n"


def export_model(m: IlpModel, fmt: str = "lp") -> str:
    fmt = fmt.lower()
    if fmt == "lp":
        return to_lp(m)
    if fmt == "mps":
        return to_mps(m)
    raise ValueError(f"unknown export format {fmt!r}; use lp or mps")


_ROW_RE = re.compile(r"^\s*([A-Za-z]+)_?[0-9_]*:")


def lp_family_counts(text: str) -> dict[str, int]:
    """Count constraint rows per family in LP text written by :func:`to_lp`."""
    counts: Counter = Counter()
    section = None
    for line in text.splitlines():
        stripped = line.strip()
        low = stripped.lower()
        if low in ("subject to", "bounds", "binaries", "end", "minimize"):
            section = low
            continue
        if section != "subject to":
            continue
        mt = _ROW_RE.match(line)
        if mt and mt.group(1) in ROW_FAMILIES:
            counts[ROW_FAMILIES[mt.group(1)]] += 1
    return {fam: counts.get(fam, 0) for fam in dict.fromkeys(ROW_FAMILIES.values())}


def lp_variable_count(text: str) -> int:
    section = None
    n = 0
    for line in text.splitlines():
        low = line.strip().lower()
        if low in ("subject to", "bounds", "binaries", "end", "minimize"):
            section = low
            continue
        if section == "bounds" and low:
            n += 1
    return n
