import math
from fractions import Fraction

import pytest

import dncap as d


def mem_equal():
    return d.make_memoryless(d.symbols({"0": 1, "1": 1}), name="mem{0:1,1:1}")


def mem_unequal():
    return d.make_memoryless(d.symbols({"0": 1, "1": 2}), name="mem{0:1,1:2}")


def mem_rational():
    return d.make_memoryless(
        d.symbols({"0": "1/3", "1": "1/2"}), name="mem{0:1/3,1:1/2}"
    )


def golden_mean_system():
    return d.fsm_to_branch_system(d.make_golden_mean(), name="golden_mean")


def rll_system(dd, kk):
    return d.fsm_to_branch_system(d.make_rll(dd, kk), name=f"rll({dd},{kk})")


def dyck():
    return d.make_dyck_prefix()


# every builtin, for oracle-equivalence and density sweeps
BUILTIN_FACTORIES = {
    "mem_equal": mem_equal,
    "mem_unequal": mem_unequal,
    "mem_rational": mem_rational,
    "golden_mean": golden_mean_system,
    "rll_1_3": lambda: rll_system(1, 3),
    "rll_1_2": lambda: rll_system(1, 2),
    "rll_0_1": lambda: rll_system(0, 1),
    "dyck": dyck,
}

# regular builtins with a root-based capacity, for the desk-scale gap checks
ROOT_BASED_FACTORIES = {
    "mem_equal": mem_equal,
    "mem_unequal": mem_unequal,
    "golden_mean": golden_mean_system,
    "rll_1_3": lambda: rll_system(1, 3),
}


def too_dense_spectrum(ratio=1.5, n_cover=31, w_max=40) -> d.WeightSpectrum:
    """Synthetic spectrum with ceil(ratio**n) distinct weights below n.

    All counts are 1, so the growth-rate estimator sees nothing, while the
    weight sequence densifies exponentially.  Entries are materialized up to
    n_cover; the nominal w_max may extend beyond coverage (undercounting
    past n_cover only makes density bounds easier to satisfy).
    """
    entries = []
    cumulative = 0
    for n in range(1, n_cover + 1):
        target = math.ceil(ratio ** n)
        fresh = target - cumulative
        denominator = fresh + 1
        for j in range(1, fresh + 1):
            entries.append((Fraction(n - 1) + Fraction(j, denominator), 1))
        cumulative = target
    return d.WeightSpectrum(entries=tuple(entries), w_max=Fraction(w_max))


@pytest.fixture
def tmp_spec(tmp_path):
    """Write a spec document to a temp file and return its path."""
    import json

    def write(doc, name="system.json"):
        path = tmp_path / name
        path.write_text(
            doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8"
        )
        return str(path)

    return write
