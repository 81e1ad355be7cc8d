"""Exact integer helpers for radius thresholds.

Distances are integers but cover radii may be irrational (n**(i/k)).
Ball membership d <= rho only ever depends on floor(rho), and
floor(n**(i/k)) is the integer kth root of n**i, so every threshold used
by a construction can be computed exactly without floating point.
"""
from __future__ import annotations

import math
from fractions import Fraction

#: Distance sentinel for unreachable pairs. Small enough that
#: INF + any edge weight still fits in int64.
INF = 1 << 62


def iroot(x: int, k: int) -> int:
    """Largest r >= 0 with r**k <= x (x >= 0, k >= 1)."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if k == 1 or x < 2:
        return x
    if k == 2:
        return math.isqrt(x)
    r = int(round(x ** (1.0 / k)))
    while r > 0 and r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def radius_floor(rho) -> int:
    """Largest integer d with d <= rho; exact for int, float, Fraction."""
    if isinstance(rho, int):
        return rho
    return math.floor(Fraction(rho))


def scale_cap(n: int, i: int, k: int) -> int:
    """floor(n**(i/k)) computed exactly."""
    return iroot(n**i, k)


def ceil_root(n: int, k: int) -> int:
    """ceil(n**(1/k)) computed exactly."""
    r = iroot(n, k)
    return r if r**k == n else r + 1
