"""Command-line front end: enumerate, capacity, maxent, sample, verify.

Exit codes are a stable contract: 0 success (or verify PASS), 1 parse or
validation failure, 2 verify FAIL, 3 verify INCONCLUSIVE.  All numeric
output is locale-independent with 17 significant digits.
"""

import argparse
import json
import sys

from .capacity import abscissa_estimate, characteristic_root, fsm_capacity
from .errors import (
    BudgetExceededError,
    EstimatorError,
    InvalidSystemError,
    SpecFileError,
)
from .maxent import level_report_tsv, maxent_rate_estimate
from .sampler import maxent_chain, sample_level_paths, sample_paths, samples_tsv
from .specfile import load_system
from .spectrum import density_check, empirical_capacity, spectrum_tsv, weight_spectrum
from .systems import FSM, GENERATOR, MEMORYLESS, memoryless_fsm
from .verify import FAIL, INCONCLUSIVE, PASS, verify_equality


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the CLI reserves 2 for
    # verify FAIL, so route usage problems through the normal error path.
    def error(self, message):
        raise _UsageError(message)


def _write_out(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_enumerate(args) -> int:
    system, _ = load_system(args.spec)
    spectrum = weight_spectrum(system, args.wmax)
    _write_out(spectrum_tsv(spectrum), args.out)
    estimate, _ = empirical_capacity(spectrum)
    report = density_check(spectrum)
    print(f"# empirical capacity: {estimate.value:.17g} nats/weight")
    print(
        "# density: fitted_K={:.17g} fitted_L={:.17g} passes={}".format(
            report.fitted_K, report.fitted_L, report.passes
        )
    )
    return 0


def _cmd_capacity(args) -> int:
    system, _ = load_system(args.spec)
    method = args.method
    if method == "auto":
        method = {MEMORYLESS: "root", FSM: "spectral", GENERATOR: "abscissa"}[
            system.kind
        ]
    if method == "root":
        if system.kind != MEMORYLESS:
            raise InvalidSystemError("root method requires a memoryless system")
        estimate = characteristic_root(system.alphabet)
    elif method == "spectral":
        if system.fsm is None:
            if system.kind == MEMORYLESS:
                estimate = fsm_capacity(memoryless_fsm(system.alphabet))
            else:
                raise InvalidSystemError(
                    "spectral method requires an FSM-backed system"
                )
        else:
            estimate = fsm_capacity(system.fsm)
    else:
        spectrum = weight_spectrum(system, args.wmax)
        estimate, _ = abscissa_estimate(spectrum)
    print(json.dumps(estimate.to_json_dict()))
    return 0


def _cmd_maxent(args) -> int:
    system, _ = load_system(args.spec)
    estimate, levels = maxent_rate_estimate(system, args.lmax)
    _write_out(level_report_tsv(levels), args.out)
    doc = estimate.to_json_dict()
    doc["estimator"] = "maxent_level_rates"
    doc["levels_computed"] = len(levels)
    print("# " + json.dumps(doc))
    return 0


def _cmd_sample(args) -> int:
    system, _ = load_system(args.spec)
    if system.kind == GENERATOR:
        samples = sample_level_paths(system, args.steps, args.count, args.seed)
    else:
        fsm = system.fsm if system.fsm is not None else memoryless_fsm(system.alphabet)
        chain = maxent_chain(fsm, fsm_capacity(fsm))
        samples = sample_paths(chain, args.count, args.steps, args.seed)
    _write_out(samples_tsv(samples), args.out)
    return 0


def _cmd_verify(args) -> int:
    system, echo = load_system(args.spec)
    report = verify_equality(system, args.wmax, args.lmax, args.tol)
    print(json.dumps(report.to_json_dict(system_echo=echo)))
    return {PASS: 0, FAIL: 2, INCONCLUSIVE: 3}[report.verdict]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dncap",
        description="capacity and maxentropic sources for constrained channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="weight spectrum TSV plus summary")
    p.add_argument("spec", help="system spec JSON file")
    p.add_argument("--wmax", required=True, help="weight bound (rational)")
    p.add_argument("--out", default=None, help="TSV output path (default stdout)")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("capacity", help="capacity estimate as JSON")
    p.add_argument("spec")
    p.add_argument(
        "--method",
        choices=("auto", "root", "spectral", "abscissa"),
        default="auto",
    )
    p.add_argument("--wmax", default="40", help="spectrum bound for abscissa")
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("maxent", help="per-level rate table plus estimate")
    p.add_argument("spec")
    p.add_argument("--lmax", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_maxent)

    p = sub.add_parser("sample", help="draw maxentropic sample paths")
    p.add_argument("spec")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("verify", help="capacity equality verdict as JSON")
    p.add_argument("spec")
    p.add_argument("--wmax", default="40")
    p.add_argument("--lmax", type=int, default=40)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SpecFileError, InvalidSystemError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BudgetExceededError, EstimatorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
