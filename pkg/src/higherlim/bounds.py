"""Vanishing bounds for higher limits and the inductive criterion.

Every bound is a degree above which all higher limits vanish; none of them
claims sharpness.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .complex import MINUS_INF
from .diagram import FibrantReplacement, ModuleDiagram, fibrant_replacement, higher_limits
from .errors import EquivalenceViolated, InputError
from .oracle import oracle_higher_limits
from .poset import Poset, TreeDecomposition, labelling, maximal_tree


def _opt_int(h):
    return None if h == MINUS_INF else int(h)


@dataclass
class BoundsReport:
    sup_B: int
    max_degree: int
    tree_bound: int
    tree: TreeDecomposition
    labels: dict
    realized_height: int | float | None = None
    per_element_heights: dict = dc_field(default_factory=dict)

    @property
    def vanishing_degree(self) -> int | float:
        """Smallest of the bounds; ``H^k`` vanishes for every larger ``k``."""
        bounds = [self.sup_B, self.max_degree, self.tree_bound]
        if self.realized_height is not None:
            bounds.append(self.realized_height)
        return min(bounds)

    def to_dict(self) -> dict:
        return {
            "sup_B": self.sup_B,
            "max_degree": self.max_degree,
            "tree_bound": self.tree_bound,
            "degree_set": sorted(self.tree.degree_set),
            "removed_covers": [list(c) for c in self.tree.removed_covers],
            "labels": dict(self.labels),
            "realized_height": None if self.realized_height is None else _opt_int(self.realized_height),
            "per_element_heights": {p: _opt_int(h) for p, h in self.per_element_heights.items()},
        }


def vanishing_bounds(P: Poset, F: ModuleDiagram | None = None, tree_trials: int = 16,
                     seed: int = 0, replacement: FibrantReplacement | None = None) -> BoundsReport:
    lab = labelling(P)
    tree = maximal_tree(P, seed=seed, trials=tree_trials) if tree_trials else maximal_tree(P)
    report = BoundsReport(
        sup_B=lab.sup_label,
        max_degree=P.length if P.length is not None else 0,
        tree_bound=tree.bound,
        tree=tree,
        labels=lab.label,
    )
    if F is not None:
        if F.poset != P:
            raise InputError("the functor is defined on a different poset")
        R = replacement if replacement is not None else fibrant_replacement(F)
        report.per_element_heights = {p: R.height(p) for p in P.elements}
        report.realized_height = R.height()
    return report


@dataclass
class InductiveResult:
    n: int
    conditions: tuple[bool, bool, bool]
    holds: bool
    local_limits: dict
    height: int | float
    global_limits: list[int] | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "all_degrees_at_least_n_vanish_below_every_element": self.conditions[0],
            "degree_n_vanishes_below_every_element": self.conditions[1],
            "replacement_height_at_most_n": self.conditions[2],
            "holds": self.holds,
            "height": _opt_int(self.height),
            "local_limits": self.local_limits,
            "global_limits": self.global_limits,
        }


def inductive_check(F: ModuleDiagram, n: int, replacement: FibrantReplacement | None = None,
                    verify: bool = False) -> InductiveResult:
    """Evaluate the three equivalent conditions for ``n`` independently.

    (1) every ``H^k(P_{<p}; F)`` with ``k >= n`` vanishes, (2) every
    ``H^n(P_{<p}; F)`` vanishes, (3) the replacement has height ``<= n``.
    When they hold, ``H^k(P; F)`` must vanish for all ``k > n``.  With
    ``verify`` the local limits are recomputed by the order-complex route.
    """
    if n < 1:
        raise InputError("n must be a positive integer")
    R = replacement if replacement is not None else fibrant_replacement(F)
    local = {}
    for p in F.poset.elements:
        local[p] = higher_limits(F, at=p, replacement=R)
        if verify:
            other = oracle_higher_limits(F, at=p)
            if other != local[p]:
                raise EquivalenceViolated(f"backends disagree below {p!r}: {local[p]} vs {other}")
    c1 = all(not any(h[n:]) for h in local.values())
    c2 = all(len(h) <= n or h[n] == 0 for h in local.values())
    c3 = R.height() <= n
    if not (c1 == c2 == c3):
        raise EquivalenceViolated(f"conditions for n={n} disagree: {(c1, c2, c3)}")
    result = InductiveResult(n, (c1, c2, c3), c1, local, R.height())
    if c1:
        glob = higher_limits(F, replacement=R)
        result.global_limits = glob
        if any(glob[n + 1:]):
            raise EquivalenceViolated(f"H^k nonzero above n={n}: {glob}")
    return result
