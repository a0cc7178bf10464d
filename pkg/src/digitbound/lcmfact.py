"""Exact n! and lcm(1, ..., n) via balanced product trees."""

from __future__ import annotations

import math
from typing import Sequence

from .numtheory import PRIMES

LEAF_RUN = 64


def product_tree(values: Sequence[int]) -> int:
    """Product of ``values`` by balanced pairwise combination."""
    n = len(values)
    if n <= LEAF_RUN:
        r = 1
        for v in values:
            r *= v
        return r
    mid = n // 2
    return product_tree(values[:mid]) * product_tree(values[mid:])


def range_product(lo: int, hi: int) -> int:
    """lo * (lo+1) * ... * (hi-1); empty range gives 1."""
    if hi - lo <= LEAF_RUN:
        r = 1
        for i in range(lo, hi):
            r *= i
        return r
    mid = (lo + hi) // 2
    return range_product(lo, mid) * range_product(mid, hi)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial needs n >= 0, got {n}")
    return range_product(2, n + 1)


def floor_log(p: int, n: int) -> int:
    """Largest e with p**e <= n, by exact repeated multiplication."""
    if p < 2 or n < 1:
        raise ValueError("need p >= 2 and n >= 1")
    e, q = 0, p
    while q <= n:
        q *= p
        e += 1
    return e


def lcm_upto(n: int) -> int:
    """lcm(1, ..., n) as the product of p**floor_log(p, n) over primes p <= n."""
    if n < 1:
        raise ValueError(f"lcm_upto needs n >= 1, got {n}")
    powers = []
    for p in PRIMES.upto(n):
        q = p
        while q * p <= n:
            q *= p
        powers.append(q)
    return product_tree(powers)


def lcm_upto_oracle(n: int) -> int:
    """Definitional fold lcm(a, b) = a*b // gcd(a, b) over 1..n."""
    if n < 1:
        raise ValueError(f"lcm_upto_oracle needs n >= 1, got {n}")
    acc = 1
    for k in range(2, n + 1):
        acc = acc * k // math.gcd(acc, k)
    return acc
