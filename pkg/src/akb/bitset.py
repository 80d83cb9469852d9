"""Helpers for Python ints used as bitsets."""

from __future__ import annotations

import numpy as np


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    if mask < 1 << 64:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out
    raw = np.frombuffer(mask.to_bytes((mask.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()


def popcount(mask: int) -> int:
    return bin(mask).count("1")
