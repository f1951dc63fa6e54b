"""Exact enumeration: weight spectra, density checks, empirical capacity.

The weight spectrum of a channel lists every distinct accepted-string weight
w_1 < w_2 < ... up to a truncation bound together with the exact count N(w_k)
of accepted strings of that weight.  Counts are arbitrary-precision integers
and weights exact rationals, so bucket identity is never a float question.
"""

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidSystemError
from .estimates import EMPIRICAL, CapacityEstimate
from .systems import BranchSystem, is_exact, parse_weight

DENSITY_POLY_CAP = 8.0
TAIL_FRACTION = 0.25


@dataclass(frozen=True)
class WeightSpectrum:
    """Ordered (weight, count) pairs for all accepted strings up to w_max."""

    entries: tuple[tuple[Fraction, int], ...]
    w_max: Fraction

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "w_max", parse_weight(self.w_max))
        if not is_exact(self.w_max) or self.w_max <= 0:
            raise ValueError("w_max must be a positive exact rational")
        previous = None
        for weight, count in self.entries:
            if not is_exact(weight):
                raise ValueError(f"inexact weight in spectrum: {weight!r}")
            if count < 1:
                raise ValueError("zero-count weights must be omitted")
            if previous is not None and weight <= previous:
                raise ValueError("weights must be strictly increasing")
            previous = weight

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for w, _ in self.entries)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.entries)


def weight_spectrum(system: BranchSystem, w_max) -> WeightSpectrum:
    """Count accepted strings by exact weight, up to and including w_max.

    Walks the tree breadth-first while merging frontier states that share a
    (node handle, accumulated weight) pair, which turns the exponential path
    walk into a transfer-matrix style recurrence for FSMs and a balanced walk
    for generators.  Distinct root paths carry distinct label tuples, so path
    counts and string counts coincide.
    """
    w_max = parse_weight(w_max)
    if not is_exact(w_max):
        raise InvalidSystemError("w_max must be an exact rational")
    if w_max <= 0:
        raise InvalidSystemError("w_max must be positive")
    buckets: dict[Fraction, int] = {}
    frontier: dict[tuple, int] = {(system.root, Fraction(0)): 1}
    while frontier:
        next_frontier: dict[tuple, int] = {}
        for (handle, acc), count in frontier.items():
            for sym, child in system.expand(handle):
                if not is_exact(sym.weight):
                    raise InvalidSystemError(
                        f"symbol {sym.label!r} has an inexact weight; "
                        "spectrum enumeration needs exact rationals"
                    )
                new_weight = acc + sym.weight
                if new_weight > w_max:
                    continue
                buckets[new_weight] = buckets.get(new_weight, 0) + count
                key = (child, new_weight)
                next_frontier[key] = next_frontier.get(key, 0) + count
        frontier = next_frontier
    entries = tuple(sorted(buckets.items()))
    return WeightSpectrum(entries=entries, w_max=w_max)


@dataclass(frozen=True)
class DensityReport:
    """Polynomial-density evidence for a spectrum's weight sequence.

    ``k_of_n[i]`` is the number of distinct weights below ``n_range[i]``.
    ``passes`` means the counts stayed under fitted_L * n**fitted_K at every
    sampled n (given-constants mode), or that the fitted exponent stayed
    under the polynomial cap (auto-fit mode).
    """

    n_range: tuple[int, ...]
    k_of_n: tuple[int, ...]
    fitted_L: float
    fitted_K: float
    passes: bool


def density_check(
    spectrum: WeightSpectrum,
    L: float | None = None,
    K: float | None = None,
    poly_cap: float = DENSITY_POLY_CAP,
) -> DensityReport:
    """Check that the number of distinct weights below n grows polynomially.

    With L and K given, verifies k_of_n(n) <= L * n**K pointwise over the
    integer checkpoints n = 1..floor(w_max).  With both omitted, fits K as
    the largest slope of ln k_of_n against ln n over consecutive checkpoints
    and L as the largest residual k_of_n(n) / n**K; the check passes when the
    fitted exponent is at most ``poly_cap``.  The fit is a finite-sample
    heuristic: it flags exponential growth masquerading as density, it does
    not certify the existential constants.
    """
    if not spectrum.entries:
        raise ValueError("density check needs a nonempty spectrum")
    if (L is None) != (K is None):
        raise ValueError("give both L and K, or neither")
    weights = spectrum.weights
    n_range = tuple(range(1, math.floor(spectrum.w_max) + 1)) or (1,)
    k_of_n = tuple(bisect_left(weights, Fraction(n)) for n in n_range)
    if L is not None:
        passes = all(k <= L * n ** K for n, k in zip(n_range, k_of_n))
        return DensityReport(n_range, k_of_n, float(L), float(K), passes)

    points = [(n, k) for n, k in zip(n_range, k_of_n) if k >= 1]
    slopes = [
        (math.log(k2) - math.log(k1)) / (math.log(n2) - math.log(n1))
        for (n1, k1), (n2, k2) in zip(points, points[1:])
    ]
    fitted_k = max(slopes, default=0.0)
    fitted_k = max(fitted_k, 0.0)
    fitted_l = max((k / n ** fitted_k for n, k in points), default=0.0)
    return DensityReport(n_range, k_of_n, fitted_l, fitted_k, fitted_k <= poly_cap)


def growth_sequence(spectrum: WeightSpectrum) -> tuple[tuple[float, float], ...]:
    """The per-weight growth exponents c_k = ln N(w_k) / w_k."""
    return tuple(
        (float(w), math.log(c) / float(w)) for w, c in spectrum.entries
    )


def tail_window(length: int, tail_fraction: float) -> int:
    if not 0 < tail_fraction <= 1:
        raise ValueError("tail_fraction must be in (0, 1]")
    return max(1, math.ceil(tail_fraction * length))


def empirical_capacity(
    spectrum: WeightSpectrum, tail_fraction: float = TAIL_FRACTION
) -> tuple[CapacityEstimate, tuple[tuple[float, float], ...]]:
    """Capacity from raw counts: the limsup proxy max of trailing c_k values.

    Returns the estimate together with the full (w_k, c_k) sequence.  The
    trailing-window max is the least biased finite-sample stand-in for a
    limsup that is approached from below; it is exact for sequences that are
    eventually monotone.
    """
    if len(spectrum) < 2:
        raise ValueError("empirical capacity needs a spectrum with >= 2 entries")
    sequence = growth_sequence(spectrum)
    window = tail_window(len(sequence), tail_fraction)
    tail = [c for _, c in sequence[-window:]]
    estimate = CapacityEstimate(
        value=max(tail),
        method=EMPIRICAL,
        bracket=(min(tail), max(tail)),
        residual=0.0,
        iterations=len(sequence),
    )
    return estimate, sequence


def spectrum_tsv(spectrum: WeightSpectrum) -> str:
    """Spectrum as TSV rows: weight "p/q", exact count, c_k at 17 digits."""
    lines = ["# weight\tcount\tc_k"]
    for weight, count in spectrum.entries:
        c_k = math.log(count) / float(weight)
        lines.append(
            f"{weight.numerator}/{weight.denominator}\t{count}\t{c_k:.17g}"
        )
    return "\n".join(lines) + "\n"
