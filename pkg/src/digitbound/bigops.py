"""Big-integer kernels: radix conversion, digit sums, exact roots, divisibility.

Naturals are plain Python ints. The divide-and-conquer radix conversion
runs its divisions on ``gmpy2.mpz`` when gmpy2 is importable, because
CPython's own long division is quadratic; results are identical either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

try:  # optional accelerator for the big divisions
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover - exercised only without gmpy2
    gmpy2 = None
    _mpz = int

# 512 machine words; below this, chunked schoolbook division wins.
DC_THRESHOLD_BITS = 512 * 64


@dataclass(frozen=True)
class DigitVector:
    """Little-endian base-``base`` expansion; ``digits[i]`` multiplies ``base**i``."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        _check_base(self.base)
        if self.digits and self.digits[-1] == 0:
            raise ValueError("leading (most significant) digit must be nonzero")
        if any(not 0 <= d < self.base for d in self.digits):
            raise ValueError(f"digit out of range for base {self.base}")

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def value(self) -> int:
        return from_digits(self.digits, self.base)

    def digit_sum(self) -> int:
        return sum(self.digits)


def _check_base(b: int) -> None:
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")


def _check_natural(m: int) -> None:
    if m < 0:
        raise ValueError(f"expected a nonnegative integer, got {m}")


def _word_chunk(b: int) -> tuple[int, int]:
    """Largest power ``b**k`` below 2**60, returned as (b**k, k)."""
    k = 1
    chunk = b
    while chunk * b < 1 << 60:
        chunk *= b
        k += 1
    return chunk, k


def _schoolbook_into(m: int, b: int, out: list[int], width: int | None = None) -> None:
    # Word-sized chunks first, then split each chunk into k digits.
    chunk, k = _word_chunk(b)
    start = len(out)
    while m:
        m, r = divmod(m, chunk)
        if m:
            for _ in range(k):
                r, d = divmod(r, b)
                out.append(d)
        else:
            while r:
                r, d = divmod(r, b)
                out.append(d)
    if width is not None:
        out.extend([0] * (width - (len(out) - start)))


def _tower(m, b: int, leaf_digits: int) -> list:
    """Powers b**(leaf_digits * 2**i), enough that the last one squared exceeds m."""
    powers = [_mpz(b) ** leaf_digits]
    while powers[-1].bit_length() * 2 - 1 <= m.bit_length():
        powers.append(powers[-1] * powers[-1])
    return powers


def _leaf_digit_count(b: int) -> int:
    # digits per leaf so a padded leaf stays near the threshold
    _, k = _word_chunk(b)
    return max(k, (DC_THRESHOLD_BITS // 60) * k // 2)


def _dc_into(m, b: int, powers: Sequence, level: int, out: list[int], width: int) -> None:
    if level < 0 or m.bit_length() <= DC_THRESHOLD_BITS:
        _schoolbook_into(int(m), b, out, width)
        return
    hi, lo = divmod(m, powers[level])
    half = width // 2
    _dc_into(lo, b, powers, level - 1, out, half)
    _dc_into(hi, b, powers, level - 1, out, half)


def to_digits_schoolbook(m: int, b: int) -> DigitVector:
    """Quadratic reference conversion by repeated division."""
    _check_base(b)
    _check_natural(m)
    out: list[int] = []
    _schoolbook_into(m, b, out)
    return DigitVector(b, tuple(out))


def to_digits(m: int, b: int) -> DigitVector:
    """Base-``b`` digits of ``m``, little-endian.

    Large operands are split recursively at precomputed powers
    ``b**(L * 2**i)``; each half is converted independently and padded to
    its exact width, so the concatenation is the full expansion.

    >>> to_digits(120, 10).digits
    (0, 2, 1)
    """
    _check_base(b)
    _check_natural(m)
    if m.bit_length() <= DC_THRESHOLD_BITS:
        return to_digits_schoolbook(m, b)
    leaf = _leaf_digit_count(b)
    mm = _mpz(m)
    powers = _tower(mm, b, leaf)
    level = len(powers) - 1
    out: list[int] = []
    _dc_into(mm, b, powers, level, out, leaf << (level + 1))
    while out and out[-1] == 0:
        out.pop()
    return DigitVector(b, tuple(out))


def from_digits(digits: Sequence[int], b: int) -> int:
    """Inverse of :func:`to_digits` (balanced recombination)."""
    _check_base(b)
    if not digits:
        return 0
    # pair up neighbours: value of (lo, hi) at weight w is lo + hi * w
    vals = list(digits)
    weight = b
    while len(vals) > 1:
        if len(vals) % 2:
            vals.append(0)
        vals = [vals[i] + vals[i + 1] * weight for i in range(0, len(vals), 2)]
        weight *= weight
    return vals[0]


def _power_of_two_exponent(b: int) -> int:
    """k if b == 2**k, else 0."""
    return b.bit_length() - 1 if b & (b - 1) == 0 else 0


def _digit_sum_pow2(m: int, k: int) -> int:
    if k == 1:
        return m.bit_count()
    # read lcm(k, 8) bits at a time straight from the byte image
    window_bits = k * 8 // math.gcd(k, 8)
    nbytes = window_bits // 8
    mask = (1 << k) - 1
    raw = m.to_bytes(-(-m.bit_length() // (8 * nbytes)) * nbytes, "little")
    total = 0
    for i in range(0, len(raw), nbytes):
        w = int.from_bytes(raw[i:i + nbytes], "little")
        while w:
            total += w & mask
            w >>= k
    return total


def _schoolbook_sum(m: int, b: int) -> int:
    chunk, _ = _word_chunk(b)
    s = 0
    while m:
        m, r = divmod(m, chunk)
        while r:
            r, d = divmod(r, b)
            s += d
    return s


def _dc_sum(m, b: int, powers: Sequence, level: int) -> int:
    # zero padding contributes nothing, so halves need no width bookkeeping
    if level < 0 or m.bit_length() <= DC_THRESHOLD_BITS:
        return _schoolbook_sum(int(m), b)
    hi, lo = divmod(m, powers[level])
    return _dc_sum(lo, b, powers, level - 1) + _dc_sum(hi, b, powers, level - 1)


def digit_sum(m: int, b: int) -> int:
    """s_b(m), the sum of the base-``b`` digits of ``m`` (s_b(0) = 0).

    Power-of-two bases are summed from the binary image without building
    a digit vector.
    """
    _check_base(b)
    _check_natural(m)
    k = _power_of_two_exponent(b)
    if k:
        return _digit_sum_pow2(m, k)
    if m.bit_length() <= DC_THRESHOLD_BITS:
        return _schoolbook_sum(m, b)
    mm = _mpz(m)
    powers = _tower(mm, b, _leaf_digit_count(b))
    return _dc_sum(mm, b, powers, len(powers) - 1)


def integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)), exact.

    Starts from a power of two above the root and runs the monotone
    decreasing integer Newton step until it stops decreasing.
    """
    if k < 1:
        raise ValueError(f"root degree must be >= 1, got {k}")
    _check_natural(n)
    if k == 1 or n < 2:
        return n
    # 2**ceil(bits/k) >= true root
    r = 1 << -(-n.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def pow(a: int, e: int) -> int:  # noqa: A001 - mirrors the builtin on purpose
    """Exact ``a**e`` by left-to-right binary exponentiation; ``0**0 == 1``."""
    if e < 0:
        raise ValueError("negative exponent")
    result = 1
    for bit in bin(e)[2:]:
        result *= result
        if bit == "1":
            result *= a
    return result


def divides(a: int, c: int) -> bool:
    if a == 0:
        raise ValueError("0 divides nothing; divisor must be >= 1")
    return c % a == 0
