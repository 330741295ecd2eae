"""
CSV and JSON emission of record schemas.
"""
import csv
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from app.core.config import settings
from app.schemas.base import RecordSchema


logger = logging.getLogger(__name__)


def resolve_output(output: Optional[str]) -> Optional[Path]:
    """
    Resolve --output against settings.output_dir.

    Args:
        output: Path given on the command line

    Returns:
        Absolute or cwd-relative path, or None for stdout
    """
    if output is None or output == "-":
        return None
    path = Path(output)
    if not path.is_absolute() and settings.output_dir is not None:
        path = settings.output_dir / path
    return path


def write_csv(records: Sequence[RecordSchema], stream: TextIO, record_type: type[RecordSchema]) -> None:
    """Header row, then one row per record; LF line endings."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(record_type.header())
    for record in records:
        writer.writerow(record.cells())


def write_json(records: Sequence[RecordSchema], stream: TextIO) -> None:
    """JSON array mirroring the CSV rows."""
    json.dump([record.model_dump(mode="json") for record in records], stream, indent=2)
    stream.write("\n")


def emit(
    records: Sequence[RecordSchema],
    record_type: type[RecordSchema],
    output_format: str = "csv",
    output: Optional[str] = None
) -> None:
    """
    Write records to --output or stdout.

    Args:
        records: Rows to write
        record_type: Schema of the rows (fixes the CSV header)
        output_format: "csv" or "json"
        output: Output path
    """
    path = resolve_output(output)
    if path is None:
        _write(records, record_type, output_format, sys.stdout)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as stream:
        _write(records, record_type, output_format, stream)
    logger.info("Wrote %d record(s) to %s", len(records), path)


def _write(
    records: Sequence[RecordSchema],
    record_type: type[RecordSchema],
    output_format: str,
    stream: TextIO
) -> None:
    if output_format == "json":
        write_json(records, stream)
    else:
        write_csv(records, stream, record_type)
