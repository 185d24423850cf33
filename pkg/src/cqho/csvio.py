"""Deterministic CSV output: fixed formatting, atomic writes, no locale."""

from __future__ import annotations

import csv
import os
from pathlib import Path

__all__ = ["format_value", "write_csv", "dump_matrix"]


def format_value(value) -> str:
    """Locale-free scalar formatting: floats at 10 significant digits."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def write_csv(path: str | Path, fieldnames, rows, header_comment: str | None = None) -> Path:
    """Write rows atomically; a failed write leaves no partial file behind.

    rows are sequences aligned with fieldnames; every scalar goes through
    :func:`format_value`, so identical inputs give byte-identical files.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    try:
        with open(tmp, "w", newline="") as fh:
            if header_comment:
                fh.write(header_comment.rstrip("\n") + "\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(list(fieldnames))
            for row in rows:
                writer.writerow([format_value(v) for v in row])
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    return path


def dump_matrix(op, path: str | Path, header_comment: str | None = None) -> Path:
    """Debug dump of a dense complex operator: one row per nonzero entry."""
    import numpy as np

    op = np.asarray(op)
    rows = [
        (int(i), int(j), float(op[i, j].real), float(op[i, j].imag))
        for i in range(op.shape[0])
        for j in range(op.shape[1])
        if op[i, j] != 0
    ]
    comment = header_comment or f"# matrix dim={op.shape[0]}"
    return write_csv(path, ("i", "j", "re", "im"), rows, comment)


def write_state(state, path: str | Path, header_comment: str | None = None) -> Path:
    """Serialize a number-basis state as (n, Re c_n, Im c_n) rows."""
    rows = [
        (n, float(c.real), float(c.imag))
        for n, c in enumerate(state.coefficients)
    ]
    comment = header_comment or f"# state dim={state.dim} tail_mass={format_value(state.tail_mass)}"
    return write_csv(path, ("n", "re_c", "im_c"), rows, comment)
