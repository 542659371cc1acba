"""Delimited and JSON output with round-trip-safe number formatting."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, TextIO

import numpy as np


def fmt(x) -> str:
    """17 significant digits; NaN is written as ``NaN``."""
    x = float(x)
    if math.isnan(x):
        return "NaN"
    return format(x, ".17g")


def write_csv(stream: TextIO, header: Iterable[str], rows: Iterable[Iterable], footer: Iterable[str] = ()) -> None:
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(v if isinstance(v, str) else fmt(v) for v in row) + "\n")
    for line in footer:
        stream.write(f"# {line}\n")


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, Fraction):
        return json.dumps(f"{obj.numerator}/{obj.denominator}")
    if isinstance(obj, (float, np.floating)):
        return "null" if not math.isfinite(obj) else fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(obj[k], indent, level + 1)}" for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON with alphabetical keys and 17-digit floats; non-finite floats become null."""
    return _encode(obj, indent, 0) + "\n"
