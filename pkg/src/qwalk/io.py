"""CSV and JSON writers with round-trip float formatting."""

from __future__ import annotations

import io
import json
from pathlib import Path

import numpy as np

from .analysis import Distribution

__all__ = ["fmt", "distribution_csv", "dumps", "write_text"]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def distribution_csv(dist: Distribution) -> str:
    """
    ``x,probability`` in 1-D, ``x,y,probability`` on the lattice, and
    ``column,probability`` for glued-trees columns.
    """
    buf = io.StringIO()
    if dist.kind == "column":
        buf.write("column,probability\n")
        for c, p in zip(dist.labels, dist.probs):
            buf.write(f"{int(c)},{fmt(p)}\n")
    elif dist.labels is not None and dist.labels.ndim == 2:
        buf.write("x,y,probability\n")
        for (x, y), p in zip(dist.labels, dist.probs):
            buf.write(f"{int(x)},{int(y)},{fmt(p)}\n")
    else:
        labels = dist.labels if dist.labels is not None else np.arange(len(dist))
        buf.write("x,probability\n")
        for x, p in sorted(zip(labels.tolist(), dist.probs.tolist())):
            buf.write(f"{int(x)},{fmt(p)}\n")
    return buf.getvalue()


def _default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n"


def write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path
