"""Deterministic CSV emission and parsing (17 significant digits)."""

from __future__ import annotations

import csv

from .sequences import ComplexSequence


def format_value(x) -> str:
    """17 significant digits: enough to round-trip any float64 exactly."""
    return format(float(x), ".17g")


def write_rows(fh, header, rows) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [cell if isinstance(cell, str) else format_value(cell) for cell in row]
        )


def read_rows(fh):
    reader = csv.reader(fh)
    rows = list(reader)
    if not rows:
        raise ValueError("empty CSV")
    return rows[0], rows[1:]


def sequence_rows(seq: ComplexSequence, start: int = 0):
    for n in range(start, len(seq)):
        yield (str(n), seq[n].real, seq[n].imag)


def write_sequence(fh, seq: ComplexSequence, start: int = 0) -> None:
    write_rows(fh, ("n", "re", "im"), sequence_rows(seq, start))


def read_sequence(fh, kind: str = "moments") -> ComplexSequence:
    """Inverse of ``write_sequence``; cumulant files start at order 1."""
    header, rows = read_rows(fh)
    if header != ["n", "re", "im"]:
        raise ValueError(f"unexpected sequence CSV header {header!r}")
    values = {}
    for n_str, re_str, im_str in rows:
        values[int(n_str)] = complex(float(re_str), float(im_str))
    if not values:
        raise ValueError("sequence CSV has no rows")
    start = min(values)
    if start not in (0, 1) or sorted(values) != list(range(start, max(values) + 1)):
        raise ValueError("sequence CSV orders must be contiguous from 0 or 1")
    ordered = [values[n] for n in sorted(values)]
    if start == 1:
        ordered = [0j] + ordered
    return ComplexSequence(tuple(ordered), kind)
