"""Timing harness: optimized kernels against their naive baselines.

Baselines poll a deadline so a slow one can be abandoned without killing
the process; optimized kernels always run to completion.
"""

from __future__ import annotations

import csv
import math
import random
import time
from dataclasses import dataclass
from typing import IO, Callable, Optional

from .bigops import to_digits
from .lcmfact import factorial, lcm_upto

KERNELS = ("factorial", "radix", "lcm")


class BaselineTimeout(Exception):
    pass


@dataclass
class BenchRow:
    kernel: str
    size: int
    optimized_s: float
    baseline_s: Optional[float]  # None when the baseline hit the timeout

    @property
    def speedup(self) -> Optional[float]:
        if self.baseline_s is None or self.optimized_s == 0:
            return None
        return self.baseline_s / self.optimized_s


def _expired(deadline: float) -> None:
    if time.perf_counter() > deadline:
        raise BaselineTimeout


def sequential_factorial(n: int, deadline: float = math.inf) -> int:
    r = 1
    for i in range(2, n + 1):
        r *= i
        if i & 1023 == 0:
            _expired(deadline)
    return r


def digit_at_a_time(m: int, b: int, deadline: float = math.inf) -> list[int]:
    out = []
    while m:
        m, d = divmod(m, b)
        out.append(d)
        if len(out) & 255 == 0:
            _expired(deadline)
    return out


def lcm_fold(n: int, deadline: float = math.inf) -> int:
    acc = 1
    for k in range(2, n + 1):
        acc = acc * k // math.gcd(acc, k)
        if k & 1023 == 0:
            _expired(deadline)
    return acc


def radix_operand(bits: int) -> int:
    """Deterministic ``bits``-bit test integer."""
    return random.Random(bits).getrandbits(bits) | (1 << (bits - 1))


def _pair(kernel: str, size: int) -> tuple[Callable[[], object], Callable[[float], object]]:
    if kernel == "factorial":
        return (lambda: factorial(size)), (lambda dl: sequential_factorial(size, dl))
    if kernel == "radix":
        m = radix_operand(size)
        return (lambda: to_digits(m, 10)), (lambda dl: digit_at_a_time(m, 10, dl))
    if kernel == "lcm":
        return (lambda: lcm_upto(size)), (lambda dl: lcm_fold(size, dl))
    raise ValueError(f"unknown kernel {kernel!r}; choose from {', '.join(KERNELS)}")


def run(kernel: str, size: int, timeout: float = 10.0) -> BenchRow:
    """Time one size. Radix sizes are operand bit lengths; the others are n."""
    if size < 1:
        raise ValueError("sizes must be >= 1")
    fast, slow = _pair(kernel, size)
    t0 = time.perf_counter()
    fast()
    opt = time.perf_counter() - t0
    t0 = time.perf_counter()
    try:
        slow(t0 + timeout)
        base: Optional[float] = time.perf_counter() - t0
    except BaselineTimeout:
        base = None
    return BenchRow(kernel, size, opt, base)


def write_csv(rows: list[BenchRow], fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["kernel", "size", "optimized_s", "baseline_s", "speedup"])
    for r in rows:
        sp = r.speedup
        w.writerow([r.kernel, r.size, f"{r.optimized_s:.6f}",
                    "" if r.baseline_s is None else f"{r.baseline_s:.6f}",
                    "" if sp is None else f"{sp:.2f}"])
