"""Pure-Python numeric kernels.

fuzznest._speedups is the compiled mirror of this module; _backend picks
one at import time. Both compute with the same operations in the same
order (2.0**v is the C pow(2, v) either way), so results agree bit for
bit and the choice is invisible apart from speed.

The level map u_k(t) is k applications of v -> 2^v - 1 for k > 0, |k|
applications of v -> log2(v + 1) for k < 0. Consecutive levels satisfy
u_{k+1} = 2^(u_k) - 1 for every integer k, which lets series and scans
advance incrementally instead of recomputing each level from scratch.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import IndexCapExceededError


def level_value(t: float, k: int) -> float:
    """u_k(t). 0 and 1 are fixed points of both maps and stay exact."""
    if t == 0.0 or t == 1.0:
        return t
    v = t
    if k > 0:
        for _ in range(k):
            v = 2.0 ** v - 1.0
    else:
        for _ in range(-k):
            v = math.log2(v + 1.0)
    return v


def series_value(m_star: int, bits: Sequence[int], t: float) -> float:
    """Sum of u_k(t) over the 1-bits; bits[i] is the bit at m_star + i."""
    if t == 0.0:
        return 0.0
    if t == 1.0:
        return float(sum(bits))
    total = 0.0
    v = level_value(t, m_star)
    for i, bit in enumerate(bits):
        if i:
            v = 2.0 ** v - 1.0
        if bit:
            total += v
    return total


def series_root(m_star: int, bits: Sequence[int], tol_root: float) -> float:
    """Unique t with series_value = 1, by bisection on [0, 1].

    The series is strictly increasing with value 0 at t=0 and #bits at
    t=1. A single-bit sequence is the identity series, root exactly 1.
    """
    if sum(bits) <= 1:
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol_root:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if series_value(m_star, bits, mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _initial_index(w: float, max_index: int) -> tuple[int, float]:
    # least k != 0 with u_k(w) + w - 1 <= 0; the left side decreases in k
    s0 = w - 1.0
    v = math.log2(w + 1.0)
    if v + s0 <= 0.0:
        k = -1
        while True:
            nxt = math.log2(v + 1.0)
            if nxt + s0 > 0.0:
                return k, v
            k -= 1
            v = nxt
            if -k > max_index:
                raise IndexCapExceededError(
                    f"initial index search passed -{max_index}"
                )
    k = 1
    v = 2.0 ** w - 1.0
    while v + s0 > 0.0:
        k += 1
        v = 2.0 ** v - 1.0
        if k > max_index:
            raise IndexCapExceededError(
                f"initial index search passed {max_index}"
            )
    return k, v


def greedy_encode(
    w: float, tol_residual: float, max_terms: int, max_index: int
) -> tuple[int, list[int], bool, float]:
    """Greedy bit selection for w in (0, 1].

    Keeps a residual s = (partial series at w) - 1, which starts at
    w - 1 for the mandatory bit at index 0 and gains u_k(w) per chosen
    bit. Each next index is the least k above the previous one (never 0)
    that keeps s <= 0. Stops when |s| <= tol_residual, or flags
    truncation at max_terms bits.

    Returns (m_star, bits, truncated, residual).
    """
    s = w - 1.0
    terms = 1
    chosen: list[int] = []
    truncated = False
    k = 0
    v = 0.0
    while abs(s) > tol_residual:
        if terms >= max_terms:
            truncated = True
            break
        if not chosen:
            k, v = _initial_index(w, max_index)
        else:
            while True:
                k += 1
                if k > max_index:
                    raise IndexCapExceededError(
                        f"index search passed {max_index}"
                    )
                v = 2.0 ** v - 1.0
                if k != 0 and s + v <= 0.0:
                    break
        chosen.append(k)
        s += v
        terms += 1
    m_star = min(chosen[0], 0) if chosen else 0
    last = max(chosen[-1], 0) if chosen else 0
    bits = [0] * (last - m_star + 1)
    bits[-m_star] = 1
    for c in chosen:
        bits[c - m_star] = 1
    return m_star, bits, truncated, s
