"""Large integers m = 2**t * Q with phi(m) <= x.

Two constructions share the same prime block p_1 ... p_s (the longest run
of initial primes with (p_1 - 1)...(p_s - 1) <= sqrt(x)) and differ only in
the multiplier that fills the rest of the budget: a power of two, or a
3-smooth number. All budget decisions are exact integer comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Union

from .numtheory import PRIMES, factorize, max_totient_preimage_oracle, totient

Mode = Literal["pow2", "smooth"]
Budget = Union[int, Fraction, str]

# exp(Euler-Mascheroni)
E_GAMMA = 1.78107241799020


def as_budget(x: Budget) -> Fraction:
    """Exact rational from an int, Fraction, or decimal/fraction string."""
    if isinstance(x, float):
        raise TypeError("budgets are exact; pass a decimal string or Fraction, not a float")
    return Fraction(x)


@dataclass
class Witness:
    x: Fraction
    mode: str
    s: int
    t: int
    odd_part_primes: list[int]
    m: int
    phi_m: int
    multiplier: int
    trace: list[str] = field(default_factory=list)

    @property
    def odd_part(self) -> int:
        return math.prod(self.odd_part_primes)

    def to_dict(self) -> dict:
        return {
            "x": str(self.x),
            "x_float": float(self.x),
            "mode": self.mode,
            "s": self.s,
            "t": self.t,
            "odd_part_primes": list(self.odd_part_primes),
            "Q": self.odd_part,
            "m": self.m,
            "phi_m": self.phi_m,
            "multiplier": self.multiplier,
            "trace": list(self.trace),
        }


def _phi_from_exponents(exps: dict[int, int]) -> int:
    phi = 1
    for p, e in exps.items():
        if e:
            phi *= (p - 1) * p ** (e - 1)
    return phi


def _prime_block(x: Fraction) -> tuple[list[int], int]:
    """Longest initial prime run with (prod (p - 1))**2 <= x; returns (primes, prod)."""
    primes: list[int] = []
    prod = 1
    pool: list[int] = []
    while True:
        if len(primes) == len(pool):
            pool = PRIMES.first(2 * len(pool) + 8)
        nxt = prod * (pool[len(primes)] - 1)
        if nxt * nxt * x.denominator > x.numerator:
            return primes, prod
        primes.append(pool[len(primes)])
        prod = nxt


def _largest_pow2_upto(limit: int) -> int:
    return 1 << (limit.bit_length() - 1)


def _largest_smooth3_upto(limit: int) -> int:
    best, p3 = 0, 1
    while p3 <= limit:
        best = max(best, p3 * _largest_pow2_upto(limit // p3))
        p3 *= 3
    return best


def _check_budget(x: Fraction) -> None:
    if x < 1:
        raise ValueError(f"budget x must be >= 1, got {x}")


def _construct(x: Budget, mode: Mode) -> Witness:
    x = as_budget(x)
    _check_budget(x)
    primes, prod = _prime_block(x)
    s = len(primes)
    trace = [f"s = {s}: primes {primes}, prod(p - 1) = {prod}, prod^2 = {prod * prod} <= x = {x}"]
    room = math.floor(x / prod)
    if mode == "pow2":
        a = _largest_pow2_upto(room)
        trace.append(f"a_t = {a}: largest power of 2 with a_t * {prod} <= x")
    elif mode == "smooth":
        a = _largest_smooth3_upto(room)
        trace.append(f"a_t = {a}: largest 3-smooth number with a_t * {prod} <= x")
    else:
        raise ValueError(f"unknown mode {mode!r}")

    exps = {p: 1 for p in primes}
    rest = a
    for p in (2, 3):
        while rest % p == 0:
            exps[p] = exps.get(p, 0) + 1
            rest //= p
    m = a * math.prod(primes)
    phi_m = _phi_from_exponents(exps)
    if s < 2:
        trace.append(f"degenerate budget (s = {s}): phi({m}) = {phi_m} checked directly")
        if phi_m > x:
            m, phi_m, exps = _fallback(x, mode)
            trace.append(f"fallback to m = {m}")
    if phi_m > x:
        raise AssertionError(f"construction broke the budget: phi({m}) = {phi_m} > {x}")

    t = exps.get(2, 0)
    # with multiplicity, so m == 2**t * prod(odd_primes) in both modes
    odd_primes = [p for p in sorted(exps) if p != 2 for _ in range(exps[p])]
    if mode == "pow2" and len(set(odd_primes)) != len(odd_primes):
        raise AssertionError("pow2 witness must have a squarefree odd part")
    trace.append(f"m = {m} = 2^{t} * {math.prod(odd_primes)}, phi(m) = {phi_m} <= x")
    return Witness(x, mode, s, t, odd_primes, m, phi_m, a, trace)


def _fallback(x: Fraction, mode: Mode) -> tuple[int, int, dict[int, int]]:
    # m in {1, 2} always fits (phi = 1 <= x); smooth mode may also try 2*3-smooth values
    best = (2, 1, {2: 1})
    if mode == "smooth":
        for a in range(1, math.floor(x) + 1):
            e2 = (a & -a).bit_length() - 1
            r = a >> e2
            e3 = 0
            while r % 3 == 0:
                r //= 3
                e3 += 1
            if r != 1:
                continue
            exps = {2: e2 + 1, 3: e3}
            phi = _phi_from_exponents(exps)
            if phi <= x and 2 * a > best[0]:
                best = (2 * a, phi, exps)
    return best


def construct_witness_pow2(x: Budget) -> Witness:
    """Witness with power-of-two multiplier; m = 2**t * (3 * 5 * ... * p_s).

    >>> construct_witness_pow2(100).m
    240
    """
    return _construct(x, "pow2")


def construct_witness_smooth(x: Budget) -> Witness:
    """Witness whose multiplier is the largest admissible 3-smooth number."""
    return _construct(x, "smooth")


def construct_witness(x: Budget, mode: Mode = "pow2") -> Witness:
    return _construct(x, mode)


def best_effort_witness(x: int) -> Witness:
    """True maximum via the exhaustive oracle. Comparison tables only, x <= 200."""
    if not 1 <= x <= 200:
        raise ValueError("exhaustive mode is limited to 1 <= x <= 200")
    m = max_totient_preimage_oracle(x)
    t = (m & -m).bit_length() - 1
    odd = [p for p, e in factorize(m >> t) for _ in range(e)]
    return Witness(Fraction(x), "exhaustive", 0, t, odd, m, totient(m), 1,
                   [f"oracle scan: max m with phi(m) <= {x} is {m}"])


def witness_ratio(x: Budget, mode: Mode) -> float:
    """m / (e**gamma * x * log log x) for the chosen construction; diagnostic only."""
    x = as_budget(x)
    if x < 16:
        raise ValueError("witness_ratio needs x >= 16")
    m = _construct(x, mode).m
    xf = float(x)
    return m / (E_GAMMA * xf * math.log(math.log(xf)))
