"""
Subcommand handlers.

Each handler takes the validated RunSpec of the invocation and returns the
records to emit together with their schema.
"""
import argparse
import logging
from typing import Callable, Sequence

from app.core.exceptions import UsageError, WrongModeError
from app.models.table import TableKind, TableMode
from app.schemas.base import RecordSchema
from app.schemas.record_schemas import (
    CheckResult,
    CountRow,
    MaxMixingRow,
    MixingRow,
    PathRow,
    PermutationRow,
    ScalingRow,
    SequenceRow,
    TvRow
)
from app.schemas.run_schemas import ExperimentConfig, RunSpec
from app.services import (
    blocks_service,
    lastfall_service,
    mixing_service,
    pipeline_service,
    verification_service
)


logger = logging.getLogger(__name__)

Result = tuple[Sequence[RecordSchema], type[RecordSchema]]
Handler = Callable[[RunSpec], Result]


def run_spec(args: argparse.Namespace) -> RunSpec:
    """Snapshot the parsed flags as a RunSpec."""
    reserved = {"command", "seed", "output_format", "output", "threads", "log_level"}
    return RunSpec(
        command=args.command,
        parameters={key: value for key, value in vars(args).items() if key not in reserved},
        seed=args.seed,
        output_format=args.output_format,
        output=args.output,
        threads=args.threads
    )


def _check_area(n: int, area: int) -> None:
    if area > n * n // 4:
        raise UsageError(f"--area {area} exceeds the maximum {n * n // 4} for width {n}", flag="--area")


def count(spec: RunSpec) -> Result:
    """Triangle rows n,d,count for every width up to --n."""
    p = spec.parameters
    kind = TableKind.WEIGHTED if p["weighted"] else TableKind.UNWEIGHTED
    table = lastfall_service.build_table(p["n"], kind, TableMode(p["mode"]))
    rows = [
        CountRow(n=n, d=d, count=value)
        for n in range(p["n"] + 1)
        for d, value in enumerate(lastfall_service.row(table, n))
    ]
    return rows, CountRow


def sample_dp(spec: RunSpec) -> Result:
    """Backtrace draws; permutations go through the weighted table."""
    p = spec.parameters
    if p["mode"] == TableMode.ROLLING.value:
        raise WrongModeError(TableMode.FULL.value, TableMode.ROLLING.value)
    as_permutations = p["emit"] == "permutation"
    kind = TableKind.WEIGHTED if p["weighted"] or as_permutations else TableKind.UNWEIGHTED
    table = lastfall_service.build_table(p["n"], kind, TableMode.FULL)
    if as_permutations:
        perms = pipeline_service.sample_permutations(table, p["n"], p["area"], p["count"], spec.seed, spec.threads)
        return [PermutationRow(permutation=str(pi)) for pi in perms], PermutationRow
    paths = pipeline_service.sample_paths(table, p["n"], p["area"], p["count"], spec.seed, spec.threads)
    return [PathRow(path=str(path)) for path in paths], PathRow


def sample_seq(spec: RunSpec) -> Result:
    """Uniform draws among the paths (or permutations) of one sequence."""
    p = spec.parameters
    a = blocks_service.parse_sequence(p["sequence"])
    if p["emit"] == "permutation":
        perms = pipeline_service.draw_many(
            lambda rng: pipeline_service.sample_permutation_for_sequence(a, rng),
            p["count"], spec.seed, spec.threads
        )
        return [PermutationRow(permutation=str(pi)) for pi in perms], PermutationRow
    paths = pipeline_service.sample_sequence_paths(a, p["count"], spec.seed, spec.threads)
    return [PathRow(path=str(path)) for path in paths], PathRow


def enumerate_sequences(spec: RunSpec) -> Result:
    """S(n, A) rows followed by the ΣP and D(n, A) footer rows."""
    n, area = spec.parameters["n"], spec.parameters["area"]
    _check_area(n, area)
    rows: list[SequenceRow] = []
    total = 0
    for a in blocks_service.enumerate_sequences(n, area):
        m, perm = blocks_service.path_count(a), blocks_service.perm_weight(a)
        total += m * perm
        rows.append(SequenceRow(sequence=blocks_service.format_sequence(a), m=m, perm=perm, P=m * perm))
    table = lastfall_service.build_table(n, TableKind.WEIGHTED, TableMode.ROLLING)
    rows.append(SequenceRow(sequence="sum", P=total))
    rows.append(SequenceRow(sequence="D", P=lastfall_service.marginal(table, n, area)))
    return rows, SequenceRow


def mcmc(spec: RunSpec) -> Result:
    """Estimated TV distance every --tv-every steps."""
    p = spec.parameters
    _check_area(p["n"], p["area"])
    cfg = ExperimentConfig(
        n=p["n"],
        area=p["area"],
        steps=p["steps"],
        runs=p["runs"],
        seed=spec.seed,
        tv_every=p["tv_every"]
    )
    return mixing_service.tv_curve(cfg, spec.threads), TvRow


def mixing_sweep(spec: RunSpec) -> Result:
    """Mixing times at the slowest area of each default width, or the per-width maximum."""
    p = spec.parameters
    options = dict(
        seed=spec.seed,
        tv_every=p["tv_every"],
        workers=spec.threads,
        max_steps=p["max_steps"],
        exact=p["exact"]
    )
    if p["all_areas"]:
        widths = tuple(
            n for n in mixing_service.ALL_AREAS_WIDTHS
            if p["max_n"] is None or n <= p["max_n"]
        )
        rows = mixing_service.max_mixing_times(
            widths,
            runs=p["runs"] or mixing_service.ALL_AREAS_RUNS,
            **options
        )
        return rows, MaxMixingRow
    points = tuple(
        point for point in mixing_service.DEFAULT_SWEEP
        if p["max_n"] is None or point.n <= p["max_n"]
    )
    return mixing_service.mixing_sweep(points, runs=p["runs"], **options), MixingRow


def verify(spec: RunSpec) -> Result:
    """Cross-checks, or the runtime scaling report with --scaling."""
    p = spec.parameters
    if p["scaling"]:
        rows, _ = verification_service.scaling_report(p["widths"])
        return rows, ScalingRow
    results = verification_service.run_checks(p["max_n"], spec.seed, row_sum_max_n=p["row_sum_max_n"])
    return results, CheckResult


COMMANDS: dict[str, Handler] = {
    "count": count,
    "sample-dp": sample_dp,
    "sample-seq": sample_seq,
    "enumerate": enumerate_sequences,
    "mcmc": mcmc,
    "mixing-sweep": mixing_sweep,
    "verify": verify,
}


def failed_checks(records: Sequence[RecordSchema]) -> list[str]:
    """Names of failed CheckResult records."""
    return [r.name for r in records if isinstance(r, CheckResult) and not r.passed]
