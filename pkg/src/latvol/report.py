"""Deterministic table emission: CSV (RFC-4180 style) and JSON.

Formatting rules, applied identically in both formats: exact rationals
print as "a/b" (always with the slash, even for whole values), floats
with 15 significant digits, booleans as true/false.  Identical tables
serialize to identical bytes.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError


@dataclass
class Table:
    schema: str
    columns: tuple
    rows: list
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.columns = tuple(str(c) for c in self.columns)
        self.rows = [tuple(r) for r in self.rows]
        for r in self.rows:
            if len(r) != len(self.columns):
                raise PreconditionError("row width does not match the header")


def format_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".15g")
    if isinstance(v, str):
        return v
    raise PreconditionError(f"cannot format a {type(v).__name__} cell")


def to_csv(table):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return json.dumps(format_cell(v))
    if isinstance(v, (int, float)):
        return format_cell(v)
    if isinstance(v, str):
        return json.dumps(v)
    raise PreconditionError(f"cannot format a {type(v).__name__} cell")


def to_json(table):
    params = ", ".join(
        f"{json.dumps(k)}: {_json_value(v)}" for k, v in sorted(table.params.items())
    )
    columns = ", ".join(json.dumps(c) for c in table.columns)
    rows = ", ".join(
        "[" + ", ".join(_json_value(v) for v in row) + "]" for row in table.rows
    )
    return (
        f'{{"schema": {json.dumps(table.schema)}, "params": {{{params}}}, '
        f'"columns": [{columns}], "rows": [{rows}]}}\n'
    )


def render(table, fmt):
    if fmt == "csv":
        return to_csv(table)
    if fmt == "json":
        return to_json(table)
    raise PreconditionError(f"unknown format {fmt!r}")


def parse_csv(text):
    """(header, rows) of string cells; inverse of to_csv up to typing."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise PreconditionError("empty CSV document")
    return rows[0], rows[1:]
