"""Input validation helpers shared by estimators and free functions."""
from __future__ import annotations

import math

import numpy as np

KINDS = ("ei", "ni", "fd")


def check_probability(p, name: str = "p") -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


def check_kind(kind) -> str:
    k = str(kind).lower()
    if k.startswith("mc"):
        k = k[2:]
    if k not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    return k


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise TypeError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_graph(g):
    from .graph import Graph

    if not isinstance(g, Graph):
        raise TypeError(f"expected a Graph, got {type(g).__name__}")
    return g


def check_degrees(d, n: int) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    if d.shape != (n,):
        raise ValueError(f"degree vector must have shape ({n},), got {d.shape}")
    if not np.all(np.isfinite(d)):
        raise ValueError("degree vector has non-finite entries")
    if np.any(d < 0) or np.any(d > max(n - 1, 0)):
        raise ValueError("target degrees must lie in [0, n-1]")
    return d
