"""
pylandauer.io.ReportFile
========================

Writing and reading of tabular result files (sweep reports, characteristic
function traces and heat distributions).

Tables are given as a list of column names plus one record (dictionary) per
row. Two formats are supported:

- CSV, written with pandas; floats carry 12 significant digits.
- JSON, an object `{"columns": [...], "rows": [{...}, ...]}` with floats
  rounded to 12 significant digits.

Both formats keep the column order, and an empty record list produces a
header-only file. OS-level failures are raised as `ReportIOError` with the
file path.

"""

# Libs
import json
import math
from pathlib import Path
from typing import Any

import pandas as pd

# pylandauer
from pylandauer.msc.Errors import ReportIOError


FLOAT_FORMAT = '%.12g'
FORMATS = ('csv', 'json')


def _round_float(value: Any) -> Any:
    if isinstance(value, float) and math.isfinite(value):
        return float(FLOAT_FORMAT % value)
    return value


class ReportFile:
    """
    A utility class for writing and reading result tables as CSV or JSON.
    """

    @staticmethod
    def infer_format(path: Path | str, fmt: str | None = None) -> str:
        """
        Returns the table format, taken from `fmt` or the file suffix.

        Parameters
        ----------
        path : Path or str
            Target file.
        fmt : str or None, optional
            Explicit format, 'csv' or 'json'.

        Returns
        -------
        str
            'csv' or 'json'.

        Raises
        ------
        ReportIOError
            If the format is not supported.
        """
        fmt = (fmt or Path(path).suffix.lstrip('.') or 'csv').lower()
        if fmt not in FORMATS:
            raise ReportIOError(f'Unsupported report format "{fmt}"', path)
        return fmt

    @staticmethod
    def write(path: Path | str, columns: list[str],
              records: list[dict[str, Any]], fmt: str | None = None) -> Path:
        """
        Writes a table, replacing any existing file.

        Parameters
        ----------
        path : Path or str
            Target file.
        columns : list[str]
            Column names in output order.
        records : list[dict[str, Any]]
            One dictionary per row.
        fmt : str or None, optional
            'csv' or 'json'; inferred from the suffix if omitted.

        Returns
        -------
        Path
            The written file.
        """
        path = Path(path)
        fmt = ReportFile.infer_format(path, fmt)

        try:
            if fmt == 'csv':
                frame = pd.DataFrame.from_records(records, columns=columns)
                frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
            else:
                rows = [{c: _round_float(r.get(c)) for c in columns}
                        for r in records]
                with open(path, 'w', encoding='utf-8') as file:
                    json.dump({'columns': columns, 'rows': rows}, file,
                              indent=2)
        except OSError as e:
            raise ReportIOError(f'Could not write table: {e}', path) from e

        return path

    @staticmethod
    def read(path: Path | str, fmt: str | None = None) \
            -> tuple[list[str], list[dict[str, Any]]]:
        """
        Reads a table written by `write`.

        Missing values come back as None.

        Parameters
        ----------
        path : Path or str
            Source file.
        fmt : str or None, optional
            'csv' or 'json'; inferred from the suffix if omitted.

        Returns
        -------
        tuple[list[str], list[dict[str, Any]]]
            Column names and one dictionary per row.
        """
        path = Path(path)
        fmt = ReportFile.infer_format(path, fmt)

        try:
            if fmt == 'csv':
                frame = pd.read_csv(path, keep_default_na=True)
                columns = [str(c) for c in frame.columns]
                frame = frame.astype(object).where(frame.notna(), None)
                records = frame.to_dict(orient='records')
            else:
                with open(path, encoding='utf-8') as file:
                    content = json.load(file)
                columns = list(content['columns'])
                records = list(content['rows'])
        except (OSError, KeyError, ValueError) as e:
            raise ReportIOError(f'Could not read table: {e}', path) from e

        return columns, records
