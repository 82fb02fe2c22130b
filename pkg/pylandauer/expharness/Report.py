"""
pylandauer.expharness.Report
============================

Writing and reading sweep reports.

Columns follow the field order of `ReportRow`; rows have passed the Landauer
identity checks when they were built.
"""

# Libs
import logging
from pathlib import Path
from typing import Iterable

# pylandauer
from pylandauer.io import ReportFile
from pylandauer.msc.Errors import ReportIOError, ValidationError
from pylandauer.expharness.Sweep import REPORT_COLUMNS, ReportRow


__all__ = ['emit_report', 'read_report']


def emit_report(rows: Iterable[ReportRow], fmt: str | None,
                path: Path | str) -> Path:
    """
    Writes sweep rows as CSV or JSON.

    Parameters
    ----------
    rows : Iterable[ReportRow]
        Rows in output order; an empty iterable gives a header-only file.
    fmt : str or None
        'csv' or 'json'; inferred from the suffix of `path` if None.
    path : Path or str
        Target file.

    Returns
    -------
    Path
        The written file.

    Raises
    ------
    ReportIOError
        If the file cannot be written or the format is unknown.
    """
    records = [row.as_record() for row in rows]

    path = ReportFile.write(path, REPORT_COLUMNS, records, fmt)
    logging.info(f'Wrote {len(records)} rows to {path}')
    return path


def read_report(path: Path | str, fmt: str | None = None) -> list[ReportRow]:
    """
    Reads a report written by `emit_report`.

    Raises
    ------
    ReportIOError
        If the file cannot be read or its columns do not match.
    """
    columns, records = ReportFile.read(path, fmt)
    if columns != REPORT_COLUMNS:
        raise ReportIOError(f'Unexpected report columns {columns}', path)
    try:
        return [ReportRow.from_record(r) for r in records]
    except (KeyError, TypeError, ValueError, ValidationError) as e:
        raise ReportIOError(f'Malformed report row: {e}', path) from e
