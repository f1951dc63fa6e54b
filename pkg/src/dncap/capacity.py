"""Analytic capacity: generating functions, characteristic roots, spectral radii.

The generating function of a channel is the Dirichlet-type series
Phi(s) = sum_k N(w_k) exp(-w_k s).  Its abscissa of convergence equals the
combinatorial capacity whenever the distinct weights densify at most
polynomially,
which gives three computable routes to the same number: a characteristic
equation for memoryless alphabets, a spectral-radius condition for FSMs, and
a truncated-series estimate with convergence probes for everything else.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EstimatorError, InvalidSystemError
from .estimates import (
    ABSCISSA,
    CHARACTERISTIC_ROOT,
    SPECTRAL_RADIUS,
    CapacityEstimate,
)
from .solvers import bisect_decreasing, spectral_radius_nonneg
from .spectrum import (
    DENSITY_POLY_CAP,
    TAIL_FRACTION,
    WeightSpectrum,
    density_check,
    empirical_capacity,
    tail_window,
)
from .systems import Symbol, WeightedFsm

DIVERGENCE_THRESHOLD = 1e6
PROBE_DELTA = 0.1
_EXP_OVERFLOW = 700.0
_RATIO_SLACK = 1e-12


def _term(count: int, weight: float, s) -> complex | float:
    """One series term N e^{-w s}, safe against huge counts and overflow."""
    sigma = s.real if isinstance(s, complex) else float(s)
    exponent = math.log(count) - weight * sigma
    magnitude = math.inf if exponent > _EXP_OVERFLOW else math.exp(exponent)
    if isinstance(s, complex):
        return magnitude * cmath.exp(complex(0.0, -weight * s.imag))
    return magnitude


def gf_eval(spectrum: WeightSpectrum, s, w_truncate=None):
    """Partial sum of the generating function over weights <= w_truncate.

    ``s`` may be real or complex; the result is complex exactly when ``s``
    is.  Asking for a truncation beyond the spectrum's coverage is an error
    rather than a silently short sum.
    """
    if w_truncate is None:
        w_truncate = spectrum.w_max
    if w_truncate > spectrum.w_max:
        raise ValueError(
            f"truncation {w_truncate} exceeds spectrum coverage {spectrum.w_max}"
        )
    total = 0j if isinstance(s, complex) else 0.0
    for weight, count in spectrum.entries:
        if weight > w_truncate:
            break
        total += _term(count, float(weight), s)
    return total


def characteristic_root(alphabet: Sequence[Symbol]) -> CapacityEstimate:
    """Capacity of a memoryless alphabet: the root of sum_i e^{-w_i s} = 1.

    The left side is strictly decreasing in s, so the unique nonnegative
    solution is found by bisection from the bracket [0, ln|A| / min w].  A
    singleton alphabet has the exact root 0.
    """
    alphabet = tuple(alphabet)
    if not alphabet:
        raise InvalidSystemError("alphabet must be nonempty")
    weights = [float(sym.weight) for sym in alphabet]
    if len(alphabet) == 1:
        return CapacityEstimate(0.0, CHARACTERISTIC_ROOT, (0.0, 0.0), 0.0, 0)

    def target(s: float) -> float:
        return sum(math.exp(-w * s) for w in weights)

    hi = math.log(len(weights)) / min(weights)
    result = bisect_decreasing(target, 0.0, hi)
    return CapacityEstimate(
        value=result.root,
        method=CHARACTERISTIC_ROOT,
        bracket=(result.lo, result.hi),
        residual=result.residual,
        iterations=result.iterations,
    )


def transition_matrix(fsm: WeightedFsm, s: float) -> np.ndarray:
    """M(s) with M[i, j] = sum over i->j transitions of e^{-w s}."""
    matrix = np.zeros((fsm.num_states, fsm.num_states))
    for src, sym, dst in fsm.transitions:
        matrix[src, dst] += math.exp(-float(sym.weight) * s)
    return matrix


def _has_reachable_cycle(fsm: WeightedFsm) -> bool:
    # Finite states with out-degree >= 1 always loop eventually; kept as a
    # guard for duck-typed inputs that bypassed construction checks.
    state = fsm.start
    seen = set()
    while state not in seen:
        seen.add(state)
        outs = fsm.outgoing.get(state, ())
        if not outs:
            return False
        state = outs[0][1]
    return True


def fsm_capacity(fsm: WeightedFsm) -> CapacityEstimate:
    """Capacity of a regular channel: the s with spectral radius rho(M(s)) = 1.

    rho(M(s)) is strictly decreasing in s because every transition weight is
    positive, so an outer bisection over s wraps an inner shifted power
    iteration.  The initial upper bound ln(max out-degree)/min weight + 1 is
    doubled by the bisection until rho drops below one.
    """
    if not _has_reachable_cycle(fsm):
        raise InvalidSystemError(
            "no cycle reachable from start; capacity is undefined"
        )

    def radius(s: float) -> float:
        rho, _, _ = spectral_radius_nonneg(transition_matrix(fsm, s))
        return rho

    out_degree = max(len(outs) for outs in fsm.outgoing.values())
    min_weight = min(float(sym.weight) for _, sym, _ in fsm.transitions)
    hi = math.log(max(out_degree, 2)) / min_weight + 1.0
    result = bisect_decreasing(radius, 0.0, hi)
    return CapacityEstimate(
        value=result.root,
        method=SPECTRAL_RADIUS,
        bracket=(result.lo, result.hi),
        residual=result.residual,
        iterations=result.iterations,
    )


@dataclass(frozen=True)
class ConvergenceProbe:
    """Partial-sum behavior of the generating function around an estimate.

    Above the estimate (s = value + delta) the partial sums must settle:
    increments shrink over the trailing window and the total stays finite.
    Below (s = value - delta) they must blow up: either the total clears the
    divergence threshold or the increments keep growing.  Finite truncations
    cannot reach a literal infinity, hence the two-pronged divergence test.
    """

    delta: float
    s_above: float
    s_below: float
    partial_above: tuple[float, ...]
    partial_below: tuple[float, ...]
    converges_above: bool
    diverges_below: bool

    @property
    def consistent(self) -> bool:
        return self.converges_above and self.diverges_below


def _partial_sums(spectrum: WeightSpectrum, s: float) -> list[float]:
    sums = []
    total = 0.0
    for weight, count in spectrum.entries:
        total += _term(count, float(weight), s)
        sums.append(total)
    return sums


def _probe(
    spectrum: WeightSpectrum,
    value: float,
    delta: float,
    threshold: float,
    tail_fraction: float,
) -> ConvergenceProbe:
    s_above = value + delta
    s_below = value - delta
    terms_above = [_term(c, float(w), s_above) for w, c in spectrum.entries]
    terms_below = [_term(c, float(w), s_below) for w, c in spectrum.entries]
    sums_above = _partial_sums(spectrum, s_above)
    sums_below = _partial_sums(spectrum, s_below)
    window = max(2, tail_window(len(spectrum), tail_fraction))
    tail_above = terms_above[-window:]
    tail_below = terms_below[-window:]
    shrinking = all(
        nxt <= cur * (1.0 + _RATIO_SLACK)
        for cur, nxt in zip(tail_above, tail_above[1:])
    )
    converges_above = shrinking and sums_above[-1] < threshold
    growing = all(
        nxt >= cur * (1.0 - _RATIO_SLACK)
        for cur, nxt in zip(tail_below, tail_below[1:])
    ) and tail_below[-1] > tail_below[0]
    diverges_below = sums_below[-1] >= threshold or growing
    return ConvergenceProbe(
        delta=delta,
        s_above=s_above,
        s_below=s_below,
        partial_above=tuple(sums_above),
        partial_below=tuple(sums_below),
        converges_above=converges_above,
        diverges_below=diverges_below,
    )


def abscissa_estimate(
    spectrum: WeightSpectrum,
    delta: float = PROBE_DELTA,
    divergence_threshold: float = DIVERGENCE_THRESHOLD,
    tail_fraction: float = TAIL_FRACTION,
    poly_cap: float = DENSITY_POLY_CAP,
) -> tuple[CapacityEstimate, ConvergenceProbe]:
    """Estimate the abscissa of convergence from a truncated spectrum.

    The point estimate is the empirical trailing-window capacity; the series
    is then probed at value +/- delta and a contradiction (settling below the
    estimate, or blowing up above it) raises ``EstimatorError`` instead of
    being silently corrected.
    """
    report = density_check(spectrum, poly_cap=poly_cap)
    if not report.passes:
        raise EstimatorError(
            "weight sequence densifies faster than polynomially; the "
            "count-based abscissa estimate is meaningless here "
            f"(fitted exponent {report.fitted_K:.3g} exceeds cap {poly_cap})"
        )
    empirical, _ = empirical_capacity(spectrum, tail_fraction)
    probe = _probe(
        spectrum, empirical.value, delta, divergence_threshold, tail_fraction
    )
    if not probe.consistent:
        raise EstimatorError(
            "convergence probe contradicts the abscissa estimate "
            f"{empirical.value:.6g}: converges_above={probe.converges_above}, "
            f"diverges_below={probe.diverges_below}"
        )
    estimate = CapacityEstimate(
        value=empirical.value,
        method=ABSCISSA,
        bracket=empirical.bracket,
        residual=empirical.residual,
        iterations=empirical.iterations,
    )
    return estimate, probe
