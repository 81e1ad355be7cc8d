"""Deterministic seed derivation.

Every random draw in the package flows from one user-supplied seed through
named sub-streams, so independent stages (level sampling, partition draws,
query pair selection, ...) stay reproducible and order-independent.
"""
from __future__ import annotations

import hashlib
import random


def derive_seed(seed: int, *parts) -> int:
    """Stable 64-bit sub-seed for the stream named by `parts`."""
    text = "|".join([str(seed), *(str(p) for p in parts)])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def stream(seed: int, *parts) -> random.Random:
    return random.Random(derive_seed(seed, *parts))
