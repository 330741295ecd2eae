"""
Argument parser for the motzkin command.
"""
import argparse
from typing import NoReturn

from app.core.config import settings
from app.core.exceptions import UsageError
from app.models.table import TableMode


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def non_negative(text: str) -> int:
    """Parse an integer >= 0."""
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def positive(text: str) -> int:
    """Parse an integer >= 1."""
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def int_list(text: str) -> list[int]:
    """Parse "20,40,60"."""
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=non_negative, default=settings.default_seed, help="base seed")
    common.add_argument("--format", dest="output_format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", default=None, help="output file (stdout if omitted)")
    common.add_argument("--threads", type=positive, default=settings.workers, help="parallel workers")
    common.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    return common


def build_parser() -> CliParser:
    """
    Build the parser with one subcommand per run type.

    Returns:
        Configured parser
    """
    parser = CliParser(
        prog="motzkin",
        description="Count and sample permutations by total displacement via weighted Motzkin paths."
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)
    common = _common()

    count = sub.add_parser("count", parents=[common], help="count triangle M(n, A) or D(n, d)")
    count.add_argument("--n", type=non_negative, required=True)
    count.add_argument("--weighted", action="store_true", help="count permutations (D) instead of paths (M)")
    count.add_argument("--mode", choices=[mode.value for mode in TableMode], default=TableMode.ROLLING.value)

    sample_dp = sub.add_parser("sample-dp", parents=[common], help="sample by retracing the table")
    sample_dp.add_argument("--n", type=non_negative, required=True)
    sample_dp.add_argument("--area", type=non_negative, required=True, help="area A (d for permutations)")
    sample_dp.add_argument("--count", type=positive, default=1)
    sample_dp.add_argument("--emit", choices=["path", "permutation"], default="path")
    sample_dp.add_argument("--weighted", action="store_true", help="draw paths proportionally to their weight")
    sample_dp.add_argument("--mode", choices=[mode.value for mode in TableMode], default=None)

    sample_seq = sub.add_parser("sample-seq", parents=[common], help="sample paths of a building sequence")
    sample_seq.add_argument("--sequence", required=True, help='e.g. "1;1,1;2,2"')
    sample_seq.add_argument("--count", type=positive, default=1)
    sample_seq.add_argument("--emit", choices=["path", "permutation"], default="path")

    enumerate_ = sub.add_parser("enumerate", parents=[common], help="list S(n, A) with m, perm and P")
    enumerate_.add_argument("--n", type=non_negative, required=True)
    enumerate_.add_argument("--area", type=non_negative, required=True)

    mcmc = sub.add_parser("mcmc", parents=[common], help="TV distance curve of the chain")
    mcmc.add_argument("--n", type=non_negative, required=True)
    mcmc.add_argument("--area", type=non_negative, required=True)
    mcmc.add_argument("--steps", type=non_negative, required=True)
    mcmc.add_argument("--runs", type=positive, required=True)
    mcmc.add_argument("--tv-every", type=positive, default=settings.tv_every)

    sweep = sub.add_parser("mixing-sweep", parents=[common], help="mixing times at the slowest areas")
    sweep.add_argument("--max-n", type=non_negative, default=None, help="skip rows wider than this")
    sweep.add_argument("--runs", type=positive, default=None, help="override chains per row")
    sweep.add_argument("--tv-every", type=positive, default=settings.tv_every)
    sweep.add_argument("--max-steps", type=non_negative, default=None, help="override MIXING_MAX_STEPS")
    sweep.add_argument("--all-areas", action="store_true", help="maximum over every area of widths 4..12")
    sweep.add_argument("--exact", action="store_true", help="use the exact kernel instead of sampled chains")

    verify = sub.add_parser("verify", parents=[common], help="run the cross-check suite")
    verify.add_argument("--max-n", type=non_negative, default=settings.brute_force_max_n)
    verify.add_argument(
        "--row-sum-max-n", type=non_negative, default=settings.row_sum_max_n, help="bound of the n! row-sum check"
    )
    verify.add_argument("--scaling", action="store_true", help="time table builds and fit the exponent")
    verify.add_argument("--widths", type=int_list, default=None, help="widths for --scaling")

    return parser
