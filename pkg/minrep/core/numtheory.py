"""Exact integer helpers: iterated logarithms, the a^a index, primality."""

from __future__ import annotations

import math


def ceil_log(n: int, base: int) -> int:
    """Smallest e with base**e >= n (n >= 1)."""
    if n < 1:
        raise ValueError(f"ceil_log needs n >= 1, got {n}")
    e = 0
    p = 1
    while p < n:
        p *= base
        e += 1
    return e


def logstar3(n: int) -> int:
    """Iterated logarithm base 3.

    0 for n <= 1, otherwise 1 + logstar3(log3 n). Equivalently the smallest j
    with tower(j) >= n, where tower(0) = 1 and tower(j+1) = 3**tower(j).
    Towers are integers, so rounding log3 n up keeps the recursion exact.
    """

    count = 0
    x = int(n)
    while x > 1:
        x = ceil_log(x, 3)
        count += 1
    return count


def is_tower3(n: int) -> bool:
    t = 1
    while t < n:
        if t >= n.bit_length():
            # 3**t > 2**t > n, so the next tower already overshoots.
            return False
        t = 3**t
    return t == n


def logstar3_floor(n: int) -> int:
    """Largest b with tower(b) <= n; differs from logstar3 off the towers."""
    if n < 1:
        raise ValueError(f"logstar3_floor needs n >= 1, got {n}")
    j = logstar3(n)
    return j if is_tower3(n) else j - 1


def obs_a(n: int) -> int:
    """Smallest natural a with a**a >= n."""
    if n < 1:
        raise ValueError(f"obs_a needs n >= 1, got {n}")
    a = 1
    while a**a < n:
        a += 1
    return a


def is_prime(n: int) -> bool:
    """Deterministic trial division up to isqrt(n)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True
