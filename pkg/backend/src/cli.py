"""
Command-line surface of the shuffle engine.

    python -m src.main spectrum --n 3 --b 1/2
    python -m src.main lr --lambda 4,3,2 --mu 3,2,1 --nu 2,1 --method both
    python -m src.main fixpoints --n 200 --b 0.5 --c 0 --samples 100000

Exit status: 0 success, 1 verification failure, 2 invalid input, 3 resource
guard exceeded.
"""
import argparse
import math
import sys
from contextlib import nullcontext
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from loguru import logger
from pydantic import ValidationError

from src.constants import (
    CSV_DELIMITER,
    DEFAULT_EPSILON,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    LOG_FILE,
    LOG_LEVEL,
    SPECTRUM_CSV_DELIMITER,
    TOOL_VERSION,
)
from src.exceptions import VerificationError, exit_code_for
from src.factory.lr import get_counters
from src.models.enums import Command, LRMethod, OutputFormat
from src.models.schemas import FixpointSummary, LRResult, RunConfig
from src.reports import emit, resolve_output, rows_of
from src.shuffle import auxiliary, bounds, chain, limits, spectrum


@dataclass
class Outcome:
    rows: list[dict]
    extra: dict = field(default_factory=dict)
    failure: Optional[str] = None
    delimiter: str = CSV_DELIMITER


def _int_list(text: str) -> list[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=DEFAULT_THREADS, help="Worker threads (default: all cores)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Monte Carlo seed")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)
    common.add_argument("--output", "-o", help="Output file (default: stdout)")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    common.add_argument("--progress", action="store_true", help="Show progress bars on stderr")

    deck = argparse.ArgumentParser(add_help=False)
    deck.add_argument("--n", type=int, help="Half-deck size of a balanced deck")
    deck.add_argument("--na", dest="n_a", type=int, help="Size of A")
    deck.add_argument("--nb", dest="n_b", type=int, help="Size of B")
    deck.add_argument("--b", default="1", help='Bias as "p/q" or a decimal literal')

    parser = argparse.ArgumentParser(
        prog="brt-shuffle",
        description="Exact and empirical analysis of the biased random transposition shuffle",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser(Command.SPECTRUM.value, parents=[common, deck], help="Full spectrum with multiplicities")

    verify = sub.add_parser(Command.VERIFY_SPECTRUM.value, parents=[common, deck], help="Compare with the numeric oracle")
    verify.add_argument("--tol", type=float, default=1e-9)

    tv = sub.add_parser(Command.TV.value, parents=[common, deck], help="Exact TV and l2 bound at one t")
    tv.add_argument("--t", type=int, required=True)

    curve = sub.add_parser(Command.MIX_CURVE.value, parents=[common, deck], help="Exact TV and l2 bound per t")
    curve.add_argument("--t-min", dest="t_min", type=int, default=0)
    curve.add_argument("--t-max", dest="t_max", type=int, required=True)

    l2 = sub.add_parser(Command.L2BOUND.value, parents=[common, deck], help="l2 bound and zone sums")
    l2.add_argument("--t", type=float, help="Real time; defaults to (N/2b)(log N - c)")
    l2.add_argument("--c", type=float, default=0.0)
    l2.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)

    lr = sub.add_parser(Command.LR.value, parents=[common], help="One Littlewood-Richardson coefficient")
    lr.add_argument("--lambda", dest="lam", required=True)
    lr.add_argument("--mu", required=True)
    lr.add_argument("--nu", required=True)
    lr.add_argument("--method", choices=[m.value for m in LRMethod], default=LRMethod.BOTH.value)

    fix = sub.add_parser(Command.FIXPOINTS.value, parents=[common, deck], help="Monte Carlo law of the fixed points")
    fix.add_argument("--c", type=float, default=0.0)
    fix.add_argument("--t", type=int, help="Number of shuffles; defaults to round((N/2b)(log N - c))")
    fix.add_argument("--samples", type=int, default=100_000)

    moments = sub.add_parser(Command.MOMENTS.value, parents=[common, deck], help="Exact fixed-point moments vs limit")
    moments.add_argument("--c", type=float, default=0.0)
    moments.add_argument("--ps", type=_int_list, default=[1, 2, 3])
    moments.add_argument("--ns", type=_int_list, help="Half-deck sizes to tabulate, e.g. 50,100,200")

    zones = sub.add_parser(Command.ZONES.value, parents=[common, deck], help="Zone constants, sequences and maxima")
    zones.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    return parser


def configure_logging(verbose: bool) -> None:
    logger.remove()
    level = "DEBUG" if verbose else LOG_LEVEL
    logger.add(sys.stderr, level=level)
    if LOG_FILE:
        logger.add(LOG_FILE, level=level)


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------

def _spectrum(config: RunConfig) -> Outcome:
    entries = spectrum.full_spectrum(config.params(), threads=config.threads)
    return Outcome(rows_of(entries), delimiter=SPECTRUM_CSV_DELIMITER)


def _verify_spectrum(config: RunConfig) -> Outcome:
    p = config.params()
    entries = spectrum.full_spectrum(p, threads=config.threads)
    exact = sorted(
        (float(e.eig) for e in entries for _ in range(e.mult)),
        reverse=True,
    )
    numeric = chain.numeric_spectrum_oracle(p)
    total = spectrum.total_multiplicity(entries)
    expected = math.factorial(p.N)
    if len(exact) != len(numeric):
        error = math.inf
    else:
        error = float(np.max(np.abs(np.array(exact) - np.array(numeric)))) if exact else 0.0
    ok = total == expected and error <= config.tol
    extra = {"total_multiplicity": total, "expected": expected, "max_error": error, "status": "ok" if ok else "mismatch"}
    failure = None if ok else f"Spectrum of {p} differs from the oracle: max error {error}, multiplicity {total}/{expected}"
    return Outcome([], extra, failure)


def _tv(config: RunConfig) -> Outcome:
    t = int(config.t)
    return Outcome(rows_of(chain.mixing_curve(config.params(), t, t_min=t)))


def _mix_curve(config: RunConfig) -> Outcome:
    rows = chain.mixing_curve(config.params(), config.t_max, t_min=config.t_min, progress=config.progress)
    return Outcome(rows_of(rows))


def _l2bound(config: RunConfig) -> Outcome:
    p = config.params()
    t = config.t if config.t is not None else p.shuffles_at(config.c)
    sums = bounds.zone_sums(t, p, config.epsilon, threads=config.threads)
    rows = [{"zone": label.value, "sum": value} for label, value in sums.items()]
    extra = {
        "t": t,
        "t_mix": p.t_mix,
        "l2_bound": bounds.l2_upper_bound(t, p, config.threads),
        "total_error": bounds.total_error(t, p, config.threads),
        "yellow_sum_bound": bounds.yellow_sum_bound(t, p),
    }
    return Outcome(rows, extra)


def _lr(config: RunConfig) -> Outcome:
    lam, mu, nu = config.partitions()
    results = [
        LRResult(method=counter.get_information()["name"], coefficient=counter.count(lam, mu, nu))
        for counter in get_counters(config.method.value, workers=config.threads)
    ]
    values = {r.coefficient for r in results}
    failure = None if len(values) <= 1 else f"LR methods disagree on {lam} / {mu} / {nu}: {results}"
    return Outcome([r.model_dump() for r in results], failure=failure)


def _fixpoints(config: RunConfig) -> Outcome:
    p = config.params()
    shuffles = int(config.t) if config.t is not None else p.shuffles_at_rounded(config.c)
    counts = chain.sample_fixed_points(
        p, shuffles, config.samples, seed=config.seed, threads=config.threads, progress=config.progress
    )
    histogram = chain.fixed_point_histogram(counts, p.N)
    empirical = histogram / histogram.sum()
    rate = limits.limit_rate(config.c, p.b)
    law = limits.poisson_pmf_vector(rate)
    size = max(len(empirical), len(law))
    empirical_padded = np.pad(empirical, (0, size - len(empirical)))
    law_padded = np.pad(law, (0, size - len(law)))
    rows = [
        {"k": k, "count": int(histogram[k]) if k < len(histogram) else 0, "empirical_p": empirical_padded[k], "poisson_p": law_padded[k]}
        for k in range(size)
    ]
    summary = FixpointSummary(
        n_cards=p.N,
        shuffles=shuffles,
        shuffles_real=p.shuffles_at(config.c),
        samples=config.samples,
        rate=rate,
        tv_empirical=limits.tv_discrete(empirical, law),
        conjecture=limits.conjectured_profile(config.c),
        hellinger_lower_bound=limits.hellinger_lower_bound(config.c),
    )
    return Outcome(rows, summary.model_dump())


def _moments(config: RunConfig) -> Outcome:
    sizes = config.ns if config.ns else [None]
    rows = []
    for n in sizes:
        rows.extend(rows_of(limits.moment_table(config.params(n), config.ps, config.c)))
    return Outcome(rows)


def _flatten(prefix: str, value) -> list[tuple[str, object]]:
    if isinstance(value, dict):
        out = []
        for key, inner in value.items():
            out.extend(_flatten(f"{prefix}.{key}" if prefix else str(key), inner))
        return out
    if isinstance(value, list):
        return [(prefix, ";".join(f"{v:.17g}" if isinstance(v, float) else str(v) for v in value))]
    return [(prefix, value)]


def _zones(config: RunConfig) -> Outcome:
    b = float(config.bias)
    report = auxiliary.zones_report(b, config.epsilon)
    if config.has_deck:
        p = config.params()
        report["zone_sizes"] = {label.value: len(lams) for label, lams in bounds.split_by_zone(p, config.epsilon).items()}
        report["q_r_slack"] = bounds.q_r_slack(p, config.epsilon)
        report["lambda_ij_slack"] = bounds.lambda_ij_slack(p)
        report["blue_floor_slack"] = bounds.blue_floor_slack(p, config.epsilon)
    if config.format == OutputFormat.JSON:
        return Outcome([], report)
    return Outcome([], dict(_flatten("", report)))


HANDLERS: dict[Command, Callable[[RunConfig], Outcome]] = {
    Command.SPECTRUM: _spectrum,
    Command.VERIFY_SPECTRUM: _verify_spectrum,
    Command.TV: _tv,
    Command.MIX_CURVE: _mix_curve,
    Command.L2BOUND: _l2bound,
    Command.LR: _lr,
    Command.FIXPOINTS: _fixpoints,
    Command.MOMENTS: _moments,
    Command.ZONES: _zones,
}


def run(config: RunConfig) -> int:
    """Execute one command, write its artifact and return the exit status."""
    try:
        outcome = HANDLERS[config.command](config)
        target = resolve_output(config.output)
        with open(target, "w", newline="") if target else nullcontext(sys.stdout) as stream:
            emit(stream, config, outcome.rows, outcome.extra, outcome.delimiter)
        if outcome.failure:
            raise VerificationError(outcome.failure)
        return 0
    except Exception as e:
        logger.error(f"{config.command.value} failed: {e}")
        return exit_code_for(e)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(args).items() if v is not None}
    return RunConfig(**values)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = config_from_args(args)
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        return exit_code_for(e)
    logger.debug(f"Running {config.command.value} with {config.echo()}")
    return run(config)
