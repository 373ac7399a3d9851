"""Plot-ready tables with deterministic CSV/JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .protocol import format_float


@dataclass
class Table:
    """Rows of numbers under fixed column names, plus the config that made them.

    Missing cells are ``None`` (empty in CSV, ``null`` in JSON).
    """

    name: str
    columns: tuple
    rows: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"{self.name}: expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(tuple(values))

    def column(self, name):
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def where(self, **match):
        idx = {k: self.columns.index(k) for k in match}
        return [r for r in self.rows if all(r[i] == match[k] for k, i in idx.items())]

    def provenance(self) -> str:
        return json.dumps({"experiment": self.name, **self.config}, sort_keys=True, default=_jsonable)

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        buf.write("# " + self.provenance() + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])
        return _emit(buf.getvalue(), path)

    def to_json(self, path=None) -> str:
        doc = {
            "experiment": self.name,
            "config": json.loads(self.provenance()),
            "columns": list(self.columns),
            "rows": [[_json_cell(v) for v in row] for row in self.rows],
        }
        return _emit(json.dumps(doc, indent=1, sort_keys=True) + "\n", path)

    def write(self, path=None, fmt="csv") -> str:
        if fmt == "csv":
            return self.to_csv(path)
        if fmt == "json":
            return self.to_json(path)
        raise ValueError(f"unknown format {fmt!r}")


def _emit(text, path):
    if path is not None:
        Path(path).write_text(text)
    return text


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (bool,)):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    return format_float(v)


def _json_cell(v):
    if v is None or isinstance(v, (str, bool, int)):
        return v
    x = float(format_float(v))
    return None if math.isnan(x) or math.isinf(x) else x


def _jsonable(v):
    if hasattr(v, "tolist"):
        return v.tolist()
    return str(v)


def read_csv(path) -> Table:
    """Inverse of :meth:`Table.to_csv` (numbers come back as floats)."""
    with open(path, newline="") as fh:
        lines = fh.read().splitlines()
    config = {}
    if lines and lines[0].startswith("#"):
        config = json.loads(lines[0][1:].strip())
        lines = lines[1:]
    reader = csv.reader(lines)
    columns = tuple(next(reader))
    rows = [tuple(float(c) if c not in ("",) else None for c in r) for r in reader if r]
    name = config.pop("experiment", "table")
    return Table(name, columns, rows, config)
