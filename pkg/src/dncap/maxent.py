"""Maximum entropy rate: per-level optima, the maxentropic PMF, KL diagnostics.

For each depth l, the best entropy per average weight over distributions on
the depth-l support solves sum_x e^{-w(x) s} = 1, and the optimizer assigns
q(x) = e^{-w(x) R_l}.  The sequence of per-level optima is the maximum
entropy rate counterpart of the empirical capacity sequence, and the
information inequality turns any other distribution's shortfall into an
explicit KL gap.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable

from .errors import BudgetExceededError
from .estimates import EMPIRICAL, CapacityEstimate
from .solvers import bisect_decreasing
from .spectrum import TAIL_FRACTION, tail_window
from .systems import BranchSystem, Weight

LEVEL_BUDGET = 2 ** 22
_STALE_RATE_TOL = 1e-6

Path = tuple[str, ...]


def level_support(
    system: BranchSystem, level: int, budget: int = LEVEL_BUDGET
) -> dict[Weight, int]:
    """Exact {path weight: count} table for the depth-``level`` support.

    Walks the tree level by level while merging (node handle, weight) states,
    so supports far beyond explicit enumeration stay cheap.  ``budget`` caps
    the number of branch expansions, not the support cardinality.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    frontier: dict[tuple[Hashable, Weight], int] = {
        (system.root, Fraction(0)): 1
    }
    work = 0
    for _ in range(level):
        next_frontier: dict[tuple[Hashable, Weight], int] = {}
        for (handle, acc), count in frontier.items():
            branches = system.expand(handle)
            work += len(branches)
            if work > budget:
                raise BudgetExceededError(
                    f"level support walk exceeded budget of {budget} expansions"
                )
            for sym, child in branches:
                key = (child, acc + sym.weight)
                next_frontier[key] = next_frontier.get(key, 0) + count
        frontier = next_frontier
    buckets: dict[Weight, int] = {}
    for (_, weight), count in frontier.items():
        buckets[weight] = buckets.get(weight, 0) + count
    return buckets


def enumerate_level_paths(
    system: BranchSystem, level: int, budget: int = LEVEL_BUDGET
) -> list[tuple[Path, Weight]]:
    """All depth-``level`` paths as (label tuple, weight), small levels only."""
    if level < 1:
        raise ValueError("level must be >= 1")
    paths: list[tuple[Path, Weight]] = []
    stack: list[tuple[Hashable, Path, Weight]] = [(system.root, (), Fraction(0))]
    while stack:
        handle, labels, acc = stack.pop()
        if len(labels) == level:
            paths.append((labels, acc))
            if len(paths) > budget:
                raise BudgetExceededError(
                    f"explicit path enumeration exceeded budget of {budget}"
                )
            continue
        for sym, child in system.expand(handle):
            stack.append((child, labels + (sym.label,), acc + sym.weight))
    paths.sort(key=lambda item: item[0])
    return paths


@dataclass(frozen=True)
class LevelSolution:
    """Per-level maxent data: the optimal rate and its entropy bookkeeping.

    ``entropy == rate * avg_weight`` holds by construction of the maxent
    distribution (the equality case of the information inequality), and
    sum_x e^{-w(x) rate} stays within 1e-10 of one (the root certificate).
    """

    level: int
    rate: float
    avg_weight: float
    entropy: float
    support_size: int


def solve_level_rate(
    system: BranchSystem,
    level: int,
    budget: int = LEVEL_BUDGET,
) -> LevelSolution:
    """Best entropy per average weight at one depth.

    Solves sum over the depth-``level`` support of e^{-w(x) s} = 1 by
    bisection; the left side is strictly decreasing for positive weights, so
    the nonnegative root is unique and no greatest-root disambiguation is
    needed.  A singleton support short-circuits to rate 0.
    """
    buckets = level_support(system, level, budget)
    support_size = sum(buckets.values())
    terms = [(float(w), c) for w, c in buckets.items()]
    if support_size == 1:
        weight = terms[0][0]
        return LevelSolution(level, 0.0, weight, 0.0, 1)

    def partition(s: float) -> float:
        return sum(c * math.exp(-w * s) for w, c in terms)

    min_weight = min(w for w, _ in terms)
    hi = math.log(support_size) / min_weight
    result = bisect_decreasing(partition, 0.0, hi)
    rate = result.root
    avg_weight = sum(c * w * math.exp(-w * rate) for w, c in terms)
    entropy = sum(c * (w * rate) * math.exp(-w * rate) for w, c in terms)
    return LevelSolution(level, rate, avg_weight, entropy, support_size)


@dataclass(frozen=True)
class LevelPmf:
    """A distribution over the depth-``level`` support, with path weights."""

    level: int
    probs: dict[Path, float]
    weights: dict[Path, Weight]

    def total(self) -> float:
        return sum(self.probs.values())


def maxent_pmf(
    system: BranchSystem,
    level: int,
    rate: float,
    budget: int = LEVEL_BUDGET,
) -> LevelPmf:
    """The maxentropic distribution q(x) = e^{-w(x) rate} on the level support.

    ``rate`` must come from ``solve_level_rate`` for this system and level;
    if the probabilities miss 1 by more than 1e-6 the rate is stale and this
    raises instead of renormalizing.
    """
    paths = enumerate_level_paths(system, level, budget)
    probs = {labels: math.exp(-float(w) * rate) for labels, w in paths}
    weights = {labels: w for labels, w in paths}
    total = sum(probs.values())
    if abs(total - 1.0) > _STALE_RATE_TOL:
        raise ValueError(
            f"stale rate {rate}: maxent probabilities sum to {total}, not 1"
        )
    return LevelPmf(level=level, probs=probs, weights=weights)


def entropy_and_avg_weight(pmf: LevelPmf) -> tuple[float, float]:
    """Entropy in nats and average path weight of a level distribution."""
    total = 0.0
    for path, p in pmf.probs.items():
        if p < 0:
            raise ValueError(f"negative probability at {path}")
        total += p
    if abs(total - 1.0) > _STALE_RATE_TOL:
        raise ValueError(f"probabilities sum to {total}, not 1")
    entropy = -sum(p * math.log(p) for p in pmf.probs.values() if p > 0.0)
    avg_weight = sum(
        p * float(pmf.weights[path]) for path, p in pmf.probs.items()
    )
    return entropy, avg_weight


def maxent_rate_estimate(
    system: BranchSystem,
    l_max: int,
    tail_fraction: float = TAIL_FRACTION,
    budget: int = LEVEL_BUDGET,
) -> tuple[CapacityEstimate, tuple[LevelSolution, ...]]:
    """Maximum entropy rate proxy: trailing-window max of the per-level optima.

    Levels are solved from 1 to ``l_max``; if a level blows the enumeration
    budget the sequence computed so far is returned (callers can tell from
    its length).  The window aggregation mirrors the empirical capacity
    estimator so the two sides of the equality check are symmetric.
    """
    if l_max < 2:
        raise ValueError("l_max must be >= 2")
    levels: list[LevelSolution] = []
    for level in range(1, l_max + 1):
        try:
            levels.append(solve_level_rate(system, level, budget))
        except BudgetExceededError:
            break
    if not levels:
        raise BudgetExceededError("no level fit within the enumeration budget")
    window = tail_window(len(levels), tail_fraction)
    tail = [sol.rate for sol in levels[-window:]]
    estimate = CapacityEstimate(
        value=max(tail),
        method=EMPIRICAL,
        bracket=(min(tail), max(tail)),
        residual=0.0,
        iterations=len(levels),
    )
    return estimate, tuple(levels)


def kl_gap(
    pmf: LevelPmf,
    system: BranchSystem,
    level: int,
    budget: int = LEVEL_BUDGET,
) -> tuple[float, float]:
    """KL distance to the maxent optimum and the distribution's own rate.

    Returns (D(p || q), H(p)/L(p)); the rate never exceeds the level optimum
    and matches it exactly when the gap vanishes.
    """
    solution = solve_level_rate(system, level, budget)
    optimum = maxent_pmf(system, level, solution.rate, budget)
    for path, p in pmf.probs.items():
        if p > 0.0 and path not in optimum.probs:
            raise ValueError(f"probability mass outside the support: {path}")
    gap = sum(
        p * math.log(p / optimum.probs[path])
        for path, p in pmf.probs.items()
        if p > 0.0
    )
    entropy, avg_weight = entropy_and_avg_weight(pmf)
    return gap, entropy / avg_weight


def level_report_tsv(levels: tuple[LevelSolution, ...]) -> str:
    """Level table: l, support size, rate, avg weight, entropy, entropy ratio."""
    lines = ["# l\tsupport_size\tR_l\tL_l\tH_l\tH_l/L_l"]
    for sol in levels:
        ratio = sol.entropy / sol.avg_weight if sol.avg_weight else 0.0
        lines.append(
            f"{sol.level}\t{sol.support_size}\t{sol.rate:.17g}"
            f"\t{sol.avg_weight:.17g}\t{sol.entropy:.17g}\t{ratio:.17g}"
        )
    return "\n".join(lines) + "\n"
