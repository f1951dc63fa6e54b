"""Independent oracles used to freeze expected values.

Everything here counts or solves by a route different from the library code
under test: explicit string enumeration instead of merged frontiers, integer
matrix powers instead of weighted walks, and closed forms where they exist.
"""

import math
from fractions import Fraction
from itertools import product


def naive_string_spectrum(system, w_max) -> dict:
    """Brute-force {weight: count} by enumerating every label tuple."""
    w_max = Fraction(w_max)
    counts: dict = {}
    seen = set()

    def rec(handle, labels, acc):
        for sym, child in system.expand(handle):
            weight = acc + sym.weight
            if weight > w_max:
                continue
            extended = labels + (sym.label,)
            assert extended not in seen, f"duplicate label tuple {extended}"
            seen.add(extended)
            counts[weight] = counts.get(weight, 0) + 1
            rec(child, extended, weight)

    rec(system.root, (), Fraction(0))
    return counts


def unit_fsm_counts(fsm, n_max: int) -> list:
    """Exact path counts per length via integer transfer-matrix powers."""
    size = fsm.num_states
    matrix = [[0] * size for _ in range(size)]
    for src, _, dst in fsm.transitions:
        matrix[src][dst] += 1
    vec = [0] * size
    vec[fsm.start] = 1
    totals = []
    for _ in range(n_max):
        vec = [sum(vec[i] * matrix[i][j] for i in range(size)) for j in range(size)]
        totals.append(sum(vec))
    return totals


def dyck_prefix_count(n: int) -> int:
    """Brute-force count of +-1 strings whose prefixes stay nonnegative."""
    count = 0
    for word in product((1, -1), repeat=n):
        balance = 0
        for step in word:
            balance += step
            if balance < 0:
                break
        else:
            count += 1
    return count


def rll_word_ok(word: str, d: int, k: int) -> bool:
    """Zero-run discipline with the sequence start treated as following a 1."""
    run = 0
    for ch in word:
        if ch == "0":
            run += 1
            if run > k:
                return False
        else:
            if run < d:
                return False
            run = 0
    return True


def bisect_root(f, lo: float, hi: float, iters: int = 200) -> float:
    """Plain bisection for a decreasing f with f(lo) > 0 > f(hi)."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0
LN_GOLDEN = math.log(GOLDEN_RATIO)
