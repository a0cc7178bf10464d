"""Cyclotomic polynomials with exact integer coefficients, their values at
integers, and the prime-power coprimality structure between values."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from .numtheory import divisors, factorize, mobius

Poly = list[int]  # ascending degree


@dataclass(frozen=True)
class CyclotomicPoly:
    index: int
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, a: int) -> int:
        return poly_eval(self.coefficients, a)


@dataclass(frozen=True)
class CoprimalityResult:
    gcd: int
    ratio_is_prime_power: bool


class RemainderError(ArithmeticError):
    """Polynomial division that had to be exact left a remainder."""


def poly_mul(f: Poly, g: Poly) -> Poly:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def poly_divmod_monic(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Long division of ``f`` by monic ``g``."""
    if g[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(f)
    dg = len(g) - 1
    if len(rem) - 1 < dg:
        return [0], rem
    quot = [0] * (len(rem) - dg)
    low = [(k, c) for k, c in enumerate(g[:-1]) if c]
    for i in range(len(quot) - 1, -1, -1):
        c = rem[i + dg]
        quot[i] = c
        if c:
            for k, gk in low:
                rem[i + k] -= c * gk
        rem[i + dg] = 0
    rem = rem[:dg] or [0]
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return quot, rem


def poly_eval(coeffs, a: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * a + c
    return acc


_cache: dict[int, tuple[int, ...]] = {1: (-1, 1)}
_cache_lock = threading.Lock()


def cyclotomic_poly(n: int) -> CyclotomicPoly:
    """Phi_n by exact division of x**n - 1 by Phi_d for every proper divisor d.

    Results are memoized; any nonzero remainder raises :class:`RemainderError`.
    Practical up to a few thousand; the cost is quadratic in ``n``.
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {n}")
    coeffs = _cache.get(n)
    if coeffs is None:
        num: Poly = [-1] + [0] * (n - 1) + [1]
        for d in divisors(n)[:-1]:
            num, rem = poly_divmod_monic(num, list(cyclotomic_poly(d).coefficients))
            if rem != [0]:
                raise RemainderError(f"x^{n} - 1 not divisible by Phi_{d}")
        coeffs = tuple(num)
        with _cache_lock:
            _cache.setdefault(n, coeffs)
    return CyclotomicPoly(n, coeffs)


def value_by_polynomial(n: int, a: int) -> int:
    return poly_eval(cyclotomic_poly(n).coefficients, a)


def value_by_mobius(n: int, a: int) -> int:
    """prod_{d | n} (a**d - 1) ** mu(n/d), via one exact division. Needs a >= 2."""
    if a < 2:
        raise ValueError("Moebius product needs a >= 2 (a**d - 1 vanishes at a = 1)")
    num = den = 1
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            num *= a ** d - 1
        elif mu == -1:
            den *= a ** d - 1
    q, r = divmod(num, den)
    if r:
        raise RemainderError(f"Moebius product for Phi_{n}({a}) is not integral")
    return q


# above this many divisors the polynomial route is used instead
MOBIUS_MAX_DIVISORS = 64


def cyclotomic_value(n: int, a: int, *, signed: bool = False) -> int:
    """Phi_n(a) for a >= 2.

    ``signed=True`` also admits a in {0, 1} (and negative a), where Phi_1(a)
    can be zero or negative; those go through polynomial evaluation.
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {n}")
    if a < 2:
        if not signed:
            raise ValueError(f"a must be >= 2 (got {a}); pass signed=True for small a")
        return value_by_polynomial(n, a)
    if len(divisors(n)) <= MOBIUS_MAX_DIVISORS:
        return value_by_mobius(n, a)
    return value_by_polynomial(n, a)


def is_prime_power_ratio(m: int, n: int) -> bool:
    """True iff m/n == p**k for a prime p and an integer k (k may be negative or 0)."""
    g = math.gcd(m, n)
    num, den = m // g, n // g
    if num == 1 and den == 1:
        return True
    if num != 1 and den != 1:
        return False
    return len(factorize(num * den)) == 1


def coprimality_check(m: int, n: int, a: int) -> CoprimalityResult:
    if m < 1 or n < 1 or a < 1:
        raise ValueError("m, n, a must all be >= 1")
    if m == n:
        raise ValueError("m and n must differ")
    g = math.gcd(cyclotomic_value(m, a, signed=True), cyclotomic_value(n, a, signed=True))
    return CoprimalityResult(g, is_prime_power_ratio(m, n))

