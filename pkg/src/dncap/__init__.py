"""Capacity of constrained channels with weighted symbols.

Models discrete noiseless channels as branch systems (trees of weighted,
labeled branches), enumerates their weight spectra exactly, computes the
combinatorial capacity by characteristic roots, spectral radii, or abscissa
estimates, computes the maximum entropy rate from per-level optima, builds
maxentropic Markov sources for regular channels, and cross-checks that the
two capacity notions coincide.
"""

from .capacity import (
    ConvergenceProbe,
    abscissa_estimate,
    characteristic_root,
    fsm_capacity,
    gf_eval,
    transition_matrix,
)
from .errors import (
    BudgetExceededError,
    EstimatorError,
    InvalidSystemError,
    SpecFileError,
)
from .estimates import CapacityEstimate
from .maxent import (
    LevelPmf,
    LevelSolution,
    entropy_and_avg_weight,
    enumerate_level_paths,
    kl_gap,
    level_report_tsv,
    level_support,
    maxent_pmf,
    maxent_rate_estimate,
    solve_level_rate,
)
from .sampler import (
    MaxentChain,
    SamplePath,
    SampleSet,
    empirical_entropy_rate,
    maxent_chain,
    sample_level_paths,
    sample_paths,
    samples_tsv,
)
from .solvers import bisect_decreasing, power_iteration, spectral_radius_nonneg
from .specfile import load_system, parse_system
from .spectrum import (
    DensityReport,
    WeightSpectrum,
    density_check,
    empirical_capacity,
    growth_sequence,
    spectrum_tsv,
    weight_spectrum,
)
from .systems import (
    BranchSystem,
    Symbol,
    WeightedFsm,
    check_label_uniqueness,
    fsm_to_branch_system,
    make_dyck_prefix,
    make_golden_mean,
    make_memoryless,
    make_rll,
    memoryless_fsm,
    parse_weight,
    symbols,
)
from .verify import VerifyReport, verify_equality

__version__ = "0.1.0"

__all__ = [
    "BranchSystem",
    "BudgetExceededError",
    "CapacityEstimate",
    "ConvergenceProbe",
    "DensityReport",
    "EstimatorError",
    "InvalidSystemError",
    "LevelPmf",
    "LevelSolution",
    "MaxentChain",
    "SamplePath",
    "SampleSet",
    "SpecFileError",
    "Symbol",
    "VerifyReport",
    "WeightSpectrum",
    "WeightedFsm",
    "abscissa_estimate",
    "bisect_decreasing",
    "characteristic_root",
    "check_label_uniqueness",
    "density_check",
    "empirical_capacity",
    "empirical_entropy_rate",
    "entropy_and_avg_weight",
    "enumerate_level_paths",
    "fsm_capacity",
    "fsm_to_branch_system",
    "gf_eval",
    "growth_sequence",
    "kl_gap",
    "level_report_tsv",
    "level_support",
    "load_system",
    "make_dyck_prefix",
    "make_golden_mean",
    "make_memoryless",
    "make_rll",
    "maxent_chain",
    "maxent_pmf",
    "maxent_rate_estimate",
    "memoryless_fsm",
    "parse_system",
    "parse_weight",
    "power_iteration",
    "sample_level_paths",
    "sample_paths",
    "samples_tsv",
    "solve_level_rate",
    "spectral_radius_nonneg",
    "spectrum_tsv",
    "symbols",
    "transition_matrix",
    "verify_equality",
    "weight_spectrum",
]
