"""Parameter arithmetic for (strictly) Neumaier graphs.

All checks use exact integer arithmetic.  Each checker evaluates every one of
its conditions, so a :class:`ConditionReport` lists all failures at once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import DomainError


@dataclass(frozen=True, order=True)
class ParameterSet:
    v: int
    k: int
    lam: int
    e: int
    s: int

    @classmethod
    def parse(cls, text: str) -> "ParameterSet":
        """Parse ``"16,9,4,2,4"`` (also accepts ``;`` and spaces as separators)."""
        parts = text.replace(";", ",").replace(" ", ",").split(",")
        nums = [int(p) for p in parts if p]
        if len(nums) != 5:
            raise DomainError(f"expected five integers v,k,lambda,e,s; got {text!r}")
        return cls(*nums)

    def astuple(self) -> tuple[int, int, int, int, int]:
        return (self.v, self.k, self.lam, self.e, self.s)

    def __str__(self):
        return f"({self.v},{self.k},{self.lam};{self.e},{self.s})"


@dataclass(frozen=True)
class ConditionReport:
    failures: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed

    def ids(self) -> list[str]:
        return [cid for cid, _ in self.failures]

    def __add__(self, other: "ConditionReport") -> "ConditionReport":
        return ConditionReport(self.failures + other.failures)


def _report(checks: list[tuple[str, bool, str]]) -> ConditionReport:
    return ConditionReport(tuple((cid, desc) for cid, ok, desc in checks if not ok))


def check_basic_bounds(p: ParameterSet) -> ConditionReport:
    v, k, lam, e, s = p.astuple()
    return _report([
        ("basic-k", 1 <= k < v - 1, f"need 1 <= k < v-1, got k={k}, v={v}"),
        ("basic-s", s >= 2, f"need s >= 2, got s={s}"),
        ("basic-e", 1 <= e <= s - 1, f"need 1 <= e <= s-1, got e={e}, s={s}"),
        ("basic-lambda", s - 2 <= lam < k, f"need s-2 <= lambda < k, got lambda={lam}"),
    ])


def _require_basic(p: ParameterSet) -> None:
    rep = check_basic_bounds(p)
    if not rep.passed:
        raise DomainError(f"{p} violates basic bounds: " + "; ".join(d for _, d in rep.failures))


def check_erg_conditions(v: int, k: int, lam: int) -> ConditionReport:
    """Necessary conditions for an edge-regular graph with parameters (v, k, lambda)."""
    if not (v > k >= 1 and 0 <= lam < k):
        raise DomainError(f"need v > k >= 1 and 0 <= lambda < k, got ({v},{k},{lam})")
    mu_floor = v - 2 * k + lam
    return _report([
        ("erg-i", mu_floor >= 0, f"v-2k+lambda = {mu_floor} < 0"),
        ("erg-ii", lam * k % 2 == 0, f"lambda*k = {lam * k} is odd"),
        ("erg-iii", v * k * lam % 6 == 0, f"v*k*lambda = {v * k * lam} not divisible by 6"),
        ("erg-iv", (v - k - 1) * (v - k - 2) - k * mu_floor >= 0,
         f"(v-k-1)(v-k-2)-k(v-2k+lambda) = {(v - k - 1) * (v - k - 2) - k * mu_floor} < 0"),
    ])


def check_neumaier_conditions(p: ParameterSet) -> ConditionReport:
    _require_basic(p)
    v, k, lam, e, s = p.astuple()
    lhs2, rhs2 = s * (k - s + 1), (v - s) * e
    lhs3, rhs3 = s * (s - 1) * (lam - s + 2), (v - s) * e * (e - 1)
    return _report([
        ("neumaier-i", k - s + e - lam - 1 >= 0, f"k-s+e-lambda-1 = {k - s + e - lam - 1} < 0"),
        ("neumaier-ii", lhs2 == rhs2, f"s(k-s+1) = {lhs2} != (v-s)e = {rhs2}"),
        ("neumaier-iii", lhs3 == rhs3, f"s(s-1)(lambda-s+2) = {lhs3} != (v-s)e(e-1) = {rhs3}"),
    ])


def _exceptional_family(p: ParameterSet) -> int | None:
    """The integer l >= 3 with p = (6l+3, 4l+2, 3l; l+1, 2l+1), if any."""
    v, k, lam, e, s = p.astuple()
    if lam % 3:
        return None
    ell = lam // 3
    if ell >= 3 and (v, k, e, s) == (6 * ell + 3, 4 * ell + 2, ell + 1, 2 * ell + 1):
        return ell
    return None


def check_strict_conditions(p: ParameterSet) -> ConditionReport:
    _require_basic(p)
    v, k, lam, e, s = p.astuple()
    ell = _exceptional_family(p)
    quad = (v - k - 1) * (v - k - 2) - k * (v - 2 * k + lam)
    return _report([
        ("strict-i", s >= 4 and lam >= 2, f"need s >= 4 and lambda >= 2, got s={s}, lambda={lam}"),
        ("strict-ii", e <= k - 2, f"need e <= k-2, got e={e}, k={k}"),
        ("strict-iii", v not in (2 * k - lam, 2 * k - lam + 1), f"v = {v} lies in {{2k-lambda, 2k-lambda+1}}"),
        ("strict-iv", k - s + e - lam - 1 >= 1, f"k-s+e-lambda-1 = {k - s + e - lam - 1} < 1"),
        ("strict-v", quad > 0, f"(v-k-1)(v-k-2)-k(v-2k+lambda) = {quad} <= 0"),
        ("strict-vi", ell is None, f"matches (6l+3,4l+2,3l;l+1,2l+1) with l={ell}"),
    ])


def check_all(p: ParameterSet) -> ConditionReport:
    """Basic bounds plus every edge-regular, Neumaier and strict condition."""
    basic = check_basic_bounds(p)
    if not basic.passed:
        return basic
    return (check_erg_conditions(p.v, p.k, p.lam) + check_neumaier_conditions(p)
            + check_strict_conditions(p))


def is_admissible(p: ParameterSet) -> bool:
    return check_all(p).passed


def enumerate_admissible(v_max: int) -> list[ParameterSet]:
    if not 4 <= v_max <= 64:
        raise DomainError(f"v_max must lie in 4..64, got {v_max}")
    out = []
    for v in range(4, v_max + 1):
        for s in range(4, v):
            for e in range(1, s):
                # s(k-s+1) = (v-s)e determines k
                num = (v - s) * e
                if num % s:
                    continue
                k = num // s + s - 1
                if not k < v - 1:
                    continue
                for lam in range(max(s - 2, 0), k):
                    p = ParameterSet(v, k, lam, e, s)
                    if check_all(p).passed:
                        out.append(p)
    out.sort()
    return out


@dataclass(frozen=True)
class ComplementParameters:
    """Parameters of the complement of a strictly Neumaier graph.

    The complement is ``k_c``-regular, ``mu_c``-co-edge-regular and has an
    ``e_c``-regular coclique of size ``s``; it must not be ``lambda_c``-edge-regular.
    """

    v: int
    k_c: int
    mu_c: int
    e_c: int
    s: int
    lambda_c: Fraction
    source: ParameterSet | None = None

    @property
    def lambda_integral(self) -> bool:
        return self.lambda_c.denominator == 1


def complement_parameters(p: ParameterSet) -> ComplementParameters:
    _require_basic(p)
    v, k, lam, e, s = p.astuple()
    lam_c = Fraction(v - 2 - 2 * k) + Fraction(k * (k - lam - 1), v - k - 1)
    return ComplementParameters(v, v - k - 1, v - 2 * k + lam, s - e, s, lam_c, p)


def partition_fixing_applies(cp: ComplementParameters) -> bool:
    """True when coclique pairs' common neighbourhoods partition the exterior."""
    return cp.e_c == 2 and cp.v - cp.s == comb(cp.s, 2) * cp.mu_c
