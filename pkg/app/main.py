"""
Command-line entry point.
"""
import logging
import sys
import uuid
from typing import Optional, Sequence

from app.cli.commands import COMMANDS, failed_checks, run_spec
from app.cli.output import emit
from app.cli.parser import build_parser
from app.core.config import settings
from app.core.exceptions import EXIT_OK, EXIT_USAGE, AppException, VerificationError
from app.core.logging import setup_logging


logger = logging.getLogger("app")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and emit its records.

    Args:
        argv: Arguments without the program name (sys.argv[1:] if None)

    Returns:
        Exit status

    Raises:
        AppException: On any domain or usage error
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    spec = run_spec(args)
    logger.debug("Running %s with %s (seed=%d)", spec.command, spec.parameters, spec.seed)

    records, record_type = COMMANDS[spec.command](spec)
    emit(records, record_type, spec.output_format, spec.output)

    failed = failed_checks(records)
    if failed:
        raise VerificationError(failed)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI and translate exceptions into exit codes.

    Application errors print "ERROR_CODE: message" to stderr and exit with
    their own code; anything else is logged with an error id and exits 1.

    Args:
        argv: Arguments without the program name

    Returns:
        Exit status
    """
    try:
        return run(argv)

    except AppException as exc:
        print(f"{exc.error_code}: {exc.message}", file=sys.stderr)
        return exc.exit_code

    except Exception as exc:
        error_id = str(uuid.uuid4())
        logger.exception("[%s] Unexpected error: %s", error_id, exc)
        if settings.debug:
            print(f"INTERNAL_ERROR: {exc} (error id {error_id})", file=sys.stderr)
        else:
            print(f"INTERNAL_ERROR: an internal error occurred (error id {error_id})", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
