"""
CSV and JSON emitters.

Every artifact opens with the run header (tool version, config echo, seed).
CSV headers are '#' comment lines; JSON puts the header under "header" and
the rows under "rows". CSV floats are written with FLOAT_DIGITS significant
digits, JSON floats in their shortest round-trip form; both parse to the same
double and identical runs give identical bytes.
"""
import csv
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional, TextIO

import numpy as np
from loguru import logger

from src.constants import CSV_DELIMITER, FLOAT_DIGITS, OUTPUT_DIR
from src.models.enums import OutputFormat
from src.models.schemas import RunConfig, RunHeader


def format_float(x: float) -> str:
    return f"{x:.{FLOAT_DIGITS}g}"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def _jsonable(value: Any) -> Any:
    """
    Finite floats stay JSON numbers in their shortest round-trip form, which
    parses back to the same double as the FLOAT_DIGITS text of the CSV cell.
    Non-finite floats become strings.
    """
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    if isinstance(value, Fraction):
        return str(value)
    if hasattr(value, "value"):
        return value.value
    return value


def header_lines(config: RunConfig) -> list[str]:
    header = RunHeader.for_run(config)
    return [
        f"# tool_version={header.tool_version}",
        f"# config={header.config}",
        f"# seed={header.seed}",
    ]


def write_csv(
    stream: TextIO,
    config: RunConfig,
    rows: list[dict],
    extra: Optional[list[list[Any]]] = None,
    delimiter: str = CSV_DELIMITER,
) -> None:
    """Header, one column line, the rows, then any trailing labeled rows."""
    for line in header_lines(config):
        stream.write(line + "\n")
    writer = csv.writer(stream, delimiter=delimiter, lineterminator="\n")
    if rows:
        columns = list(rows[0])
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in columns])
    for record in extra or []:
        writer.writerow([_cell(v) for v in record])


def write_json(stream: TextIO, config: RunConfig, payload: dict) -> None:
    header = RunHeader.for_run(config)
    document = {
        "header": {
            "tool_version": header.tool_version,
            "config": json.loads(header.config),
            "seed": header.seed,
        },
        **_jsonable(payload),
    }
    json.dump(document, stream, sort_keys=True, indent=2)
    stream.write("\n")


def emit(
    stream: TextIO,
    config: RunConfig,
    rows: list[dict],
    extra: Optional[dict] = None,
    delimiter: str = CSV_DELIMITER,
) -> None:
    """
    Write rows (plus optional scalar extras) in the configured format. In CSV
    the extras follow the table as `key<delimiter>value` rows.
    """
    if config.format == OutputFormat.JSON:
        payload = {"rows": rows}
        if extra:
            payload.update(extra)
        write_json(stream, config, payload)
        return
    write_csv(stream, config, rows, [[k, v] for k, v in (extra or {}).items()], delimiter)


def resolve_output(path: Optional[str]) -> Optional[Path]:
    """Relative paths land under BRT_OUTPUT_DIR."""
    if path is None:
        return None
    target = Path(path)
    if not target.is_absolute():
        target = Path(OUTPUT_DIR) / target
    target.parent.mkdir(parents=True, exist_ok=True)
    logger.info(f"Writing output to {target}")
    return target


def rows_of(records: Iterable[Any]) -> list[dict]:
    return [r.to_row() for r in records]
