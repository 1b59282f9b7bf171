"""Reading interval series and writing reports and tables.

Input series are delimited text, one observation per line, either a bare
value or an ``index,value`` pair. Commas or whitespace separate fields and
lines starting with ``#`` are skipped.

Floats are written with ``repr``, which round-trips exactly and does not
depend on locale, so identical inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import io as _stdio
import json
import math
import os
import re
import tempfile
from pathlib import Path

import numpy as np

from .model import (
    ConfidenceInterval,
    CoverageRow,
    CoverageTable,
    EndpointsTable,
    EstimationReport,
    IndexWindow,
    LocationDistribution,
    TimeSeries,
    TrendSequence,
    ValidationError,
)

__all__ = [
    "SeriesParseError",
    "NonContiguousIndex",
    "load_series",
    "write_series",
    "write_report",
    "read_report",
    "write_distribution",
    "write_coverage_table",
    "read_table",
]

_SPLIT = re.compile(r"[,\s]+")


class SeriesParseError(ValidationError):
    def __init__(self, path, line: int, message: str):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class NonContiguousIndex(ValidationError):
    pass


def _fmt(x: float) -> str:
    return repr(float(x))


def _atomic_write(destination, text: str) -> None:
    """Write ``text`` so that ``destination`` is either complete or untouched."""
    destination = Path(destination)
    fd, tmp = tempfile.mkstemp(dir=destination.parent or ".", prefix=f".{destination.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, destination)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(destination, text: str) -> None:
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        _atomic_write(destination, text)


def _csv_text(header, rows) -> str:
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def load_series(path, format: str = "auto") -> TimeSeries:
    """Parse a series file.

    Parameters
    ----------
    path : str or Path
        Text file to read.
    format : {"auto", "single", "two"}
        ``single`` is one value per line on window ``1..n``; ``two`` is
        ``index,value`` with contiguous ascending indices. ``auto`` decides
        from the first data line.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"series file not found: {path}")
    if format not in ("auto", "single", "two"):
        raise ValueError(f"unknown series format {format!r}")

    indices, values = [], []
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f for f in _SPLIT.split(line) if f]
            if format == "auto":
                format = "two" if len(fields) == 2 else "single"
            expected = 2 if format == "two" else 1
            if len(fields) != expected:
                raise SeriesParseError(path, lineno, f"expected {expected} field(s), got {len(fields)}")
            try:
                value = float(fields[-1])
                if format == "two":
                    index = float(fields[0])
                    if index != int(index):
                        raise ValueError
                    indices.append(int(index))
            except ValueError:
                # only a header may sit above the first observation
                if not values and not indices:
                    continue
                raise SeriesParseError(path, lineno, f"non-numeric field in {line!r}") from None
            if not math.isfinite(value):
                raise SeriesParseError(path, lineno, f"non-finite value {fields[-1]!r}")
            values.append(value)

    if len(values) < 2:
        raise ValidationError(f"{path}: need at least 2 observations, found {len(values)}")
    if format == "two":
        idx = np.asarray(indices)
        steps = np.diff(idx)
        if np.any(steps != 1):
            k = int(np.flatnonzero(steps != 1)[0])
            raise NonContiguousIndex(f"{path}: index jumps from {idx[k]} to {idx[k + 1]}")
        return TimeSeries(IndexWindow(int(idx[0]), int(idx[-1])), values)
    return TimeSeries.from_values(values)


def write_series(series: TimeSeries, destination, two_column: bool = True) -> None:
    if two_column:
        text = _csv_text(["index", "value"], ((int(t), _fmt(y)) for t, y in zip(series.indices, series.values)))
    else:
        text = "".join(_fmt(y) + "\n" for y in series.values)
    _emit(destination, text)


def _report_dict(report: EstimationReport) -> dict:
    return {
        "tau_hat": report.tau_hat,
        "rate_hat": report.rate_hat,
        "bandwidth": report.bandwidth,
        "interval": {
            "left": report.interval.left,
            "right": report.interval.right,
            "level": report.interval.level,
        },
        "distribution": [
            {"index": int(t), "trend": float(T), "mass": float(m)}
            for t, T, m in zip(report.window.indices, report.trend_hat.levels, report.distribution.mass)
        ],
    }


def _log_field(m: float) -> str:
    return _fmt(math.log(m)) if m > 0 else ""


def write_report(report: EstimationReport, format: str, destination) -> None:
    """Serialize a report as JSON or plot-ready CSV.

    The CSV has columns ``index, trend_hat, mass, log_mass``. ``log_mass`` is
    left empty where the mass is exactly zero.
    """
    if format == "json":
        text = json.dumps(_report_dict(report), indent=2) + "\n"
    elif format == "csv":
        rows = (
            (int(t), _fmt(T), _fmt(m), _log_field(m))
            for t, T, m in zip(report.window.indices, report.trend_hat.levels, report.distribution.mass)
        )
        text = _csv_text(["index", "trend_hat", "mass", "log_mass"], rows)
    else:
        raise ValueError(f"unknown report format {format!r}")
    _emit(destination, text)


def read_report(source) -> EstimationReport:
    """Rebuild an :class:`EstimationReport` from its JSON form."""
    if hasattr(source, "read"):
        data = json.load(source)
    else:
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    rows = data["distribution"]
    indices = [r["index"] for r in rows]
    window = IndexWindow(indices[0], indices[-1])
    if indices != list(range(window.start, window.end + 1)):
        raise NonContiguousIndex("report distribution indices are not contiguous")
    iv = data["interval"]
    return EstimationReport(
        tau_hat=data["tau_hat"],
        rate_hat=data["rate_hat"],
        trend_hat=TrendSequence(window, [r["trend"] for r in rows]),
        distribution=LocationDistribution(window, [r["mass"] for r in rows]),
        interval=ConfidenceInterval(iv["left"], iv["right"], iv["level"]),
        bandwidth=data["bandwidth"],
    )


def write_distribution(dist: LocationDistribution, trend: TrendSequence, destination) -> None:
    """CSV of ``index, trend, mass, log_mass`` for an exact distribution."""
    rows = (
        (int(t), _fmt(T), _fmt(m), _log_field(m))
        for t, T, m in zip(dist.indices, trend.levels, dist.mass)
    )
    _emit(destination, _csv_text(["index", "trend", "mass", "log_mass"], rows))


def write_coverage_table(table, format: str, destination) -> None:
    """Write a :class:`CoverageTable` or :class:`EndpointsTable`, ascending in ``h``."""
    if isinstance(table, CoverageTable):
        header = ["h", "coverage_rate", "mean_interval_length"]
        rows = [(h, _fmt(r.coverage_rate), _fmt(r.mean_interval_length)) for h, r in table]
        records = [
            {"h": h, "coverage_rate": r.coverage_rate, "mean_interval_length": r.mean_interval_length}
            for h, r in table
        ]
    elif isinstance(table, EndpointsTable):
        header = ["h", "left_end", "right_end"]
        rows = [(h, left, right) for h, (left, right) in table]
        records = [{"h": h, "left_end": left, "right_end": right} for h, (left, right) in table]
    else:
        raise TypeError(f"cannot serialize {type(table).__name__}")

    if format == "csv":
        text = _csv_text(header, rows)
    elif format == "json":
        text = json.dumps({"columns": header, "rows": records}, indent=2) + "\n"
    else:
        raise ValueError(f"unknown table format {format!r}")
    _emit(destination, text)


def read_table(path):
    """Read back a table written by :func:`write_coverage_table`.

    The format is taken from the file suffix (``.json``, anything else is
    CSV); the table type from the column names.
    """
    path = Path(path)
    if path.suffix == ".json":
        data = json.loads(path.read_text(encoding="utf-8"))
        header, records = data["columns"], data["rows"]
    else:
        with path.open(encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            header, records = reader.fieldnames, list(reader)
    if "coverage_rate" in header:
        return CoverageTable({
            int(r["h"]): CoverageRow(float(r["coverage_rate"]), float(r["mean_interval_length"]))
            for r in records
        })
    if "left_end" in header:
        return EndpointsTable({int(r["h"]): (int(r["left_end"]), int(r["right_end"])) for r in records})
    raise ValidationError(f"{path}: unrecognized table columns {header}")
