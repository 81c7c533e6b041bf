"""Randomized differential testing of every structural invariant.

``check_instance`` runs the full battery on one functor and returns a list
of :class:`Finding`; ``run_checks`` drives it over seeded random instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

from .bounds import inductive_check, vanishing_bounds
from .complex import ChainMap, cohomology_dims, height, is_quasi_iso
from .diagram import Case, FibrantReplacement, ModuleDiagram, fibrant_replacement, higher_limits, limit_dim
from .errors import HigherLimError
from .exactla import GF, QQ, Field, compose
from .oracle import oracle_higher_limits, order_cochain
from .randgen import random_instance

INVARIANTS = (
    "oracle_agreement",
    "local_oracle_agreement",
    "h0_is_limit",
    "matching_epi",
    "comparison_quasi_iso",
    "objectwise_cohomology",
    "dd_zero",
    "factorisation",
    "projections_commute",
    "truncated_not_locally_fibrant",
    "bound_sup_B",
    "bound_length",
    "bound_tree",
    "sup_B_le_tree_bound",
    "height_le_label",
    "height_le_degree",
    "no_jump",
    "inductive_equivalence",
    "cutoff_bound",
    "locally_fibrant_acyclic",
)


@dataclass
class Finding:
    name: str
    ok: bool
    detail: str = ""


def _vanishes_above(h: list[int], bound) -> bool:
    return not any(x for k, x in enumerate(h) if k > bound)


def _certificates(R: FibrantReplacement) -> dict[str, str]:
    """Failures of the fibrancy and weak-equivalence certificates, keyed by invariant."""
    F = R.diagram
    bad: dict[str, str] = {}
    for p in F.poset.elements:
        C = R.rf.value[p]
        if not R.matching[p].is_degreewise_epi():
            bad.setdefault("matching_epi", p)
        if not is_quasi_iso(R.comparison[p]):
            bad.setdefault("comparison_quasi_iso", p)
        expect = [F.dims[p]] if F.dims[p] else []
        if cohomology_dims(C) != expect:
            bad.setdefault("objectwise_cohomology", p)
        try:
            C.check()
            R.limits[p].limit.check()
        except HigherLimError:
            bad.setdefault("dd_zero", p)
        if R.case[p] is not Case.TRIVIAL:
            if R.comparison[p].then(R.matching[p]) != R.eps[p]:
                bad.setdefault("factorisation", p)
        elif R.matching[p] != R.eps[p]:
            bad.setdefault("factorisation", p)
        if R.case[p] is Case.TRUNCATED and R.locally_fibrant[p]:
            bad.setdefault("truncated_not_locally_fibrant", p)
    L = R.global_limit()
    for (a, b), f in R.rf.restriction.items():
        if L.projection[b].then(f) != L.projection[a]:
            bad.setdefault("projections_commute", f"{a}<{b}")
    return bad


def no_jump_holds(R: FibrantReplacement) -> bool:
    hs = {p: R.height(p) for p in R.rf.poset.elements}
    m = R.height()
    if m == float("-inf"):
        return True
    for n in range(int(m) + 1):
        if n not in hs.values():
            return False
        if n > 0 and not any(height(L.limit) == n - 1 for L in R.limits.values()):
            return False
    return True


def check_instance(F: ModuleDiagram, tree_trials: int = 8, seed: int = 0,
                   only: Iterable[str] | None = None) -> list[Finding]:
    wanted = set(INVARIANTS if only is None else only)
    P = F.poset
    R = fibrant_replacement(F)
    out: list[Finding] = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        if name in wanted:
            out.append(Finding(name, bool(ok), detail))

    fib = higher_limits(F, replacement=R)
    ora = oracle_higher_limits(F)
    record("oracle_agreement", fib == ora, f"fibrant {fib} vs oracle {ora}")
    local_bad = [p for p in P.elements if higher_limits(F, at=p, replacement=R) != oracle_higher_limits(F, at=p)]
    record("local_oracle_agreement", not local_bad, f"disagree below {local_bad}")
    record("h0_is_limit", (fib[0] if fib else 0) == limit_dim(F), f"H^0 vs dim lim = {limit_dim(F)}")

    cert = _certificates(R)
    try:
        order_cochain(F).check()
    except HigherLimError:
        cert.setdefault("dd_zero", "order complex")
    for name in ("matching_epi", "comparison_quasi_iso", "objectwise_cohomology", "dd_zero",
                 "factorisation", "projections_commute", "truncated_not_locally_fibrant"):
        record(name, name not in cert, f"fails at {cert.get(name)}")

    rep = vanishing_bounds(P, F, tree_trials=tree_trials, seed=seed, replacement=R)
    record("bound_sup_B", _vanishes_above(fib, rep.sup_B), f"H={fib}, sup B={rep.sup_B}")
    record("bound_length", _vanishes_above(fib, rep.max_degree), f"H={fib}, length={rep.max_degree}")
    record("bound_tree", _vanishes_above(fib, rep.tree_bound), f"H={fib}, 2#D+1={rep.tree_bound}")
    record("sup_B_le_tree_bound", rep.sup_B <= rep.tree_bound, f"{rep.sup_B} > {rep.tree_bound}")
    over_label = [p for p in P.elements if R.height(p) > rep.labels[p]]
    record("height_le_label", not over_label, f"h(RF(p)) > B(p) at {over_label}")
    over_deg = [p for p in P.elements if R.height(p) > P.degree[p]]
    record("height_le_degree", not over_deg, f"h(RF(p)) > d(p) at {over_deg}")
    record("no_jump", no_jump_holds(R), f"heights {[R.height(p) for p in P.elements]}")

    if "inductive_equivalence" in wanted:
        length = P.length or 0
        try:
            for n in range(1, length + 2):
                inductive_check(F, n, replacement=R)
            record("inductive_equivalence", True)
        except HigherLimError as exc:
            record("inductive_equivalence", False, str(exc))

    if "cutoff_bound" in wanted:
        record("cutoff_bound", *_check_cutoff(F, R))

    if "locally_fibrant_acyclic" in wanted:
        Q = [p for p in P.elements if R.locally_fibrant[p]]
        hq = oracle_higher_limits(F.restrict(Q)) if Q else []
        record("locally_fibrant_acyclic", not any(hq[1:]), f"H over locally fibrant part = {hq}")
    return out


def cutoff_hypothesis_n(F: ModuleDiagram, R: FibrantReplacement, m: int) -> int:
    """Least ``n`` with ``H^k(P_{<p}; F) = 0`` for all ``k >= n`` and all ``d(p) <= m``."""
    P = F.poset
    return max((len(higher_limits(F, at=p, replacement=R)) for p in P.elements if P.degree[p] <= m),
               default=0)


def _check_cutoff(F: ModuleDiagram, R: FibrantReplacement) -> tuple[bool, str]:
    P = F.poset
    length = P.length or 0
    for m in range(length + 1):
        n = cutoff_hypothesis_n(F, R, m)
        Rm = fibrant_replacement(F, cutoff=m)
        if not Rm.height() <= n + length - m:
            return False, f"cutoff m={m}, n={n}: height {Rm.height()} > {n + length - m}"
        if higher_limits(F, replacement=Rm) != higher_limits(F, replacement=R):
            return False, f"cutoff m={m} changes the higher limits"
    return True, ""


FIELDS = (QQ, GF(2), GF(5))


@dataclass
class CheckSummary:
    trials: int
    failures: dict[str, list[int]] = dc_field(default_factory=dict)
    errors: dict[int, str] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.errors

    def lines(self) -> list[str]:
        out = []
        for name in INVARIANTS:
            seeds = self.failures.get(name, [])
            status = "PASS" if not seeds else "FAIL"
            tail = f"  failing seeds: {seeds[:10]}" if seeds else ""
            out.append(f"{status} {name} ({self.trials - len(seeds)}/{self.trials}){tail}")
        for s, msg in self.errors.items():
            out.append(f"ERROR seed {s}: {msg}")
        return out


def run_checks(trials: int = 100, seed: int = 0, max_elements: int = 8, max_dim: int = 3,
               fields: Iterable[Field] = FIELDS) -> CheckSummary:
    fields = list(fields)
    summary = CheckSummary(trials)
    for t in range(trials):
        s = seed + t
        F = random_instance(s, max_elements=max_elements, max_dim=max_dim, field=fields[t % len(fields)])
        try:
            findings = check_instance(F, seed=s)
        except HigherLimError as exc:
            summary.errors[s] = f"{type(exc).__name__}: {exc}"
            continue
        for f in findings:
            if not f.ok:
                summary.failures.setdefault(f.name, []).append(s)
    return summary
