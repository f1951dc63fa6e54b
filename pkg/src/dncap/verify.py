"""Equality harness: do the two capacity pipelines agree on a channel?

Runs the combinatorial side (a root solver when the structure allows one,
the abscissa estimate otherwise) against the maximum entropy rate side, and
reports their difference together with finite-sample stand-ins for the
"almost everywhere" / "infinitely often" behavior of the per-level rates
around the capacity: over the trailing window, every rate must stay below
C + eps and at least one must exceed C - eps.
"""

from dataclasses import dataclass

from .capacity import abscissa_estimate, characteristic_root, fsm_capacity
from .errors import BudgetExceededError
from .estimates import CapacityEstimate
from .maxent import LEVEL_BUDGET, LevelSolution, maxent_rate_estimate
from .spectrum import TAIL_FRACTION, empirical_capacity, tail_window, weight_spectrum
from .systems import FSM, MEMORYLESS, BranchSystem

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class VerifyReport:
    """Verdict plus both trajectories and the epsilon probes."""

    system: str
    c_comb: CapacityEstimate
    c_prob: CapacityEstimate
    difference: float
    ae_pass: bool
    io_pass: bool
    verdict: str
    levels: tuple[LevelSolution, ...]
    growth: tuple[tuple[float, float], ...]

    def to_json_dict(self, system_echo=None) -> dict:
        return {
            "system": system_echo if system_echo is not None else self.system,
            "c_comb": self.c_comb.to_json_dict(),
            "c_prob": self.c_prob.to_json_dict(),
            "difference": self.difference,
            "epsilon_probes": {"ae_pass": self.ae_pass, "io_pass": self.io_pass},
            "verdict": self.verdict,
        }


def _combinatorial_side(
    system: BranchSystem, spectrum, tail_fraction: float
) -> CapacityEstimate:
    # Exact method first: roots for memoryless and FSM structure, truncated
    # series only for bare generators.
    if system.kind == MEMORYLESS:
        return characteristic_root(system.alphabet)
    if system.kind == FSM and system.fsm is not None:
        return fsm_capacity(system.fsm)
    estimate, _ = abscissa_estimate(spectrum, tail_fraction=tail_fraction)
    return estimate


def verify_equality(
    system: BranchSystem,
    w_max,
    l_max: int,
    tol: float,
    tail_fraction: float = TAIL_FRACTION,
    budget: int = LEVEL_BUDGET,
) -> VerifyReport:
    """Compare the combinatorial and maximum-entropy capacity estimates.

    The verdict is PASS when the two sides agree within ``tol``, FAIL when
    they do not, and INCONCLUSIVE when the level enumeration blew its budget
    before reaching ``l_max`` (partial trajectories are still attached).
    The epsilon probes reuse ``tol`` as eps.
    """
    spectrum = weight_spectrum(system, w_max)
    _, growth = empirical_capacity(spectrum, tail_fraction)
    c_comb = _combinatorial_side(system, spectrum, tail_fraction)
    try:
        c_prob, levels = maxent_rate_estimate(system, l_max, tail_fraction, budget)
    except BudgetExceededError:
        c_prob, levels = None, ()
    truncated = len(levels) < l_max
    if c_prob is None:
        raise BudgetExceededError(
            "level-rate estimation produced no levels within budget"
        )
    difference = abs(c_comb.value - c_prob.value)
    window = tail_window(len(levels), tail_fraction)
    tail = [sol.rate for sol in levels[-window:]]
    ae_pass = all(rate < c_comb.value + tol for rate in tail)
    io_pass = any(rate > c_comb.value - tol for rate in tail)
    if truncated:
        verdict = INCONCLUSIVE
    elif difference <= tol:
        verdict = PASS
    else:
        verdict = FAIL
    return VerifyReport(
        system=system.describe(),
        c_comb=c_comb,
        c_prob=c_prob,
        difference=difference,
        ae_pass=ae_pass,
        io_pass=io_pass,
        verdict=verdict,
        levels=levels,
        growth=growth,
    )
