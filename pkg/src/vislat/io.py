"""CSV/JSON serialization of point lists, Bragg maps and reports."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np

from .diffraction import BraggAmplitude
from .errors import UsageError


def write_atomic(path: str | os.PathLike, data: bytes | str) -> None:
    """Write to a temp file beside ``path`` and rename it into place."""
    path = Path(path)
    if isinstance(data, str):
        data = data.encode("utf-8")
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def points_to_csv(points, dimension: int) -> str:
    pts = np.asarray(points, dtype=np.int64).reshape(-1, dimension)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"m{i + 1}" for i in range(dimension)])
    w.writerows(pts.tolist())
    return buf.getvalue()


def read_points_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise UsageError("empty CSV")
    header, body = rows[0], rows[1:]
    if not header or any(h != f"m{i + 1}" for i, h in enumerate(header)):
        raise UsageError(f"unexpected header {header}")
    return np.array([[int(v) for v in row] for row in body], dtype=np.int64).reshape(-1, len(header))


def _real(v: float) -> str:
    return f"{v:.15g}"


def bragg_to_csv(amplitudes: Sequence[BraggAmplitude]) -> str:
    if not amplitudes:
        return ""
    n = amplitudes[0].k.dimension
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = []
    for i in range(n):
        header += [f"p{i + 1}", f"q{i + 1}"]
    w.writerow(header + ["a", "H"])
    for b in amplitudes:
        row = []
        for p, q in zip(b.k.numerators, b.k.denominators):
            row += [p, q]
        w.writerow(row + [b.a, _real(b.value)])
    return buf.getvalue()


def bragg_to_records(amplitudes: Sequence[BraggAmplitude]) -> list[dict]:
    return [
        {
            "p": list(b.k.numerators),
            "q": list(b.k.denominators),
            "a": b.a,
            "H": float(_real(b.value)),
            "method": b.method,
        }
        for b in amplitudes
    ]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
