"""Byte-stable text output and flag parsing for the CLI.

JSON objects keep insertion order and print floats with 17 significant
digits, so identical inputs always serialize to identical bytes; CSV rows
use the same float format and a bare newline regardless of platform.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import FbhMetricError

__all__ = ["format_float", "json_dumps", "parse_complex", "write_csv"]


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise FbhMetricError(f"refusing to serialize non-finite value {x!r}")
    return f"{x:.17g}"


def _encode(obj, pieces: list[str]) -> None:
    if isinstance(obj, np.generic):
        obj = obj.item()
    if obj is None:
        pieces.append("null")
    elif isinstance(obj, bool):
        pieces.append("true" if obj else "false")
    elif isinstance(obj, int):
        pieces.append(str(obj))
    elif isinstance(obj, float):
        pieces.append(format_float(obj))
    elif isinstance(obj, str):
        pieces.append(json.dumps(obj))
    elif isinstance(obj, dict):
        pieces.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                pieces.append(", ")
            pieces.append(json.dumps(str(key)))
            pieces.append(": ")
            _encode(value, pieces)
        pieces.append("}")
    elif isinstance(obj, (list, tuple)):
        pieces.append("[")
        for i, value in enumerate(obj):
            if i:
                pieces.append(", ")
            _encode(value, pieces)
        pieces.append("]")
    else:
        raise FbhMetricError(f"cannot serialize {type(obj).__name__}")


def json_dumps(obj) -> str:
    """Deterministic JSON with fixed key order and 17-significant-digit floats."""
    pieces: list[str] = []
    _encode(obj, pieces)
    return "".join(pieces)


def parse_complex(text: str) -> complex:
    """Parse 're[+-im]i' flags, e.g. '1+0i', '0.5-2i', '-1.5i' or plain '2'."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    try:
        value = complex(cleaned)
    except ValueError as exc:
        raise FbhMetricError(f"cannot parse complex number from {text!r}") from exc
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise FbhMetricError(f"complex flag {text!r} must be finite")
    return value


def write_csv(path, header, rows) -> None:
    """One header row then data rows; floats at full precision, '\n' endings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_float(float(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")
