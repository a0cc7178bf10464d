"""Primes, factorization, totient, Moebius, 3-smooth numbers, and a
brute-force oracle for the largest totient preimage of [1, x]."""

from __future__ import annotations

import bisect
import heapq
import math
import threading
from typing import NamedTuple

import numpy as np


class PrimePower(NamedTuple):
    prime: int
    exponent: int


Factorization = list[PrimePower]


def primes_upto(N: int) -> list[int]:
    """All primes <= N, increasing (sieve of Eratosthenes)."""
    if N < 2:
        return []
    sieve = np.ones(N + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(N) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve).tolist()


class _PrimeStore:
    """Grow-only prime table shared by all callers.

    Readers see either the old or the new list object, both correct for
    their own limit, so results never depend on timing.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._limit = 1
        self._primes: list[int] = []

    def upto(self, N: int) -> list[int]:
        limit, primes = self._limit, self._primes
        if N > limit:
            with self._lock:
                if N > self._limit:
                    new_limit = max(N, 2 * self._limit, 1 << 16)
                    self._primes = primes_upto(new_limit)
                    self._limit = new_limit
                limit, primes = self._limit, self._primes
        if N == limit:
            return primes
        return primes[:bisect.bisect_right(primes, N)]

    def first(self, count: int) -> list[int]:
        """The first ``count`` primes."""
        n = max(count, 6)
        # p_k < k (ln k + ln ln k) for k >= 6
        bound = int(n * (math.log(n) + math.log(math.log(n)))) + 1
        return self.upto(bound)[:count]


PRIMES = _PrimeStore()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in PRIMES.upto(math.isqrt(n)):
        if n % p == 0:
            return n == p
    return True


def factorize(m: int) -> Factorization:
    """Trial division by sieved primes; meant for m up to about 10**12."""
    if m < 1:
        raise ValueError(f"factorize needs m >= 1, got {m}")
    factors: Factorization = []
    for p in PRIMES.upto(math.isqrt(m)):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append(PrimePower(p, e))
    if m > 1:
        factors.append(PrimePower(m, 1))
    return factors


def totient(m: int) -> int:
    if m < 1:
        raise ValueError(f"totient needs m >= 1, got {m}")
    result = m
    for p, _ in factorize(m):
        result -= result // p
    return result


def mobius(d: int) -> int:
    if d < 1:
        raise ValueError(f"mobius needs d >= 1, got {d}")
    sign = 1
    for _, e in factorize(d):
        if e > 1:
            return 0
        sign = -sign
    return sign


def divisors(m: int) -> list[int]:
    """Positive divisors of m, increasing."""
    divs = [1]
    for p, e in factorize(m):
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(divs)


def smooth_3_upto(limit: int) -> list[int]:
    """Numbers 2**a * 3**b <= limit in increasing order.

    >>> smooth_3_upto(12)
    [1, 2, 3, 4, 6, 8, 9, 12]
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    return list(iter_smooth_3(limit))


def iter_smooth_3(limit: int | None = None):
    """Lazy increasing stream of 3-smooth numbers (heap merge)."""
    heap = [1]
    seen = {1}
    while heap:
        v = heapq.heappop(heap)
        if limit is not None and v > limit:
            return
        yield v
        for f in (2, 3):
            w = v * f
            if w not in seen:
                seen.add(w)
                heapq.heappush(heap, w)


_BLOCK = 1 << 20


def _totient_block(lo: int, hi: int, primes: list[int]) -> np.ndarray:
    """phi(lo..hi-1) by a segmented sieve; ``primes`` must cover sqrt(hi - 1)."""
    phi = np.arange(lo, hi, dtype=np.int64)
    rest = phi.copy()
    for p in primes:
        start = -lo % p
        if start >= hi - lo:
            continue
        phi[start::p] -= phi[start::p] // p
        q = p
        while q < hi:
            s = -lo % q
            rest[s::q] //= p
            q *= p
    big = rest > 1
    phi[big] -= phi[big] // rest[big]
    return phi


def max_totient_preimage_oracle(x: int) -> int:
    """Exact max{m : phi(m) <= x} by exhaustive scan of m <= max(x*x, 6).

    The scan limit is safe because phi(m) >= sqrt(m) once m >= 7. Blocks
    are sieved from the top down and the scan stops at the first hit.
    """
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    limit = max(x * x, 6)
    primes = PRIMES.upto(math.isqrt(limit))
    hi = limit + 1
    while hi > 1:
        lo = max(1, hi - _BLOCK)
        hits = np.flatnonzero(_totient_block(lo, hi, primes) <= x)
        if len(hits):
            return lo + int(hits[-1])
        hi = lo
    raise AssertionError("phi(1) = 1 <= x always hits")
