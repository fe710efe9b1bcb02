"""Serialisation helpers: every float goes out with 17 significant digits."""

import json
import math

import numpy as np


def fmt(x):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite value {x!r}")
    return format(x, ".17g")


def _encode(obj):
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_json(obj):
    return _encode(obj) + "\n"


def csv_line(fields):
    """One RFC-4180 record; floats get 17 significant digits."""
    out = []
    for v in fields:
        if isinstance(v, (float, np.floating)):
            out.append(fmt(v))
        elif v is None:
            out.append("")
        else:
            out.append(str(v))
    return ",".join(out) + "\n"
