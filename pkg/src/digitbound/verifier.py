"""Certify s_b(n!), s_b(lcm(1..n)) >= m for concrete (n, b).

The witness m = 2**t * Q is built against the budget x <= log_{b+1}(n) / 8.
b**m - 1 is then split into products of cyclotomic values
Phi_{2**(t-j) d}(b), grouped by j and by the sign of mu(d). Each group is
pairwise coprime with every member <= n**(1/2**(j+2)), so the group divides
lcm(1..floor(n**(1/2**(j+2)))); squaring the product of those lcms stays
inside lcm(1..n). Every pass/fail decision below is an exact integer test.
"""

from __future__ import annotations

import csv
import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Optional

from .bigops import digit_sum, divides, integer_root
from .cyclotomic import cyclotomic_value
from .lcmfact import factorial, lcm_upto, range_product
from .numtheory import divisors, mobius, totient
from .witness import Budget, Witness, as_budget, construct_witness_pow2

MAX_FACTORIAL_N = 10**6
MAX_LCM_N = 10**7

# chain lcms above this range are certified from the bound links instead
MAX_CHAIN_LCM = 10**6

# x is approximated from below on this dyadic grid
BUDGET_DENOMINATOR = 1024


class BudgetError(ValueError):
    """n is too small for a budget x >= 1."""


class PreconditionError(ValueError):
    """The witness does not fit the budget of n."""


class ResourceGuardError(RuntimeError):
    """Refused to materialize a number beyond the configured guard."""


@dataclass
class Check:
    name: str
    statement: str
    passed: bool
    elapsed_ms: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        d = {"name": self.name, "statement": self.statement, "passed": self.passed}
        if timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


@dataclass
class VerificationReport:
    n: int
    b: int
    x: Fraction
    witness: Witness
    checks: list[Check] = field(default_factory=list)
    m_lower_bound: int = 0
    s_b_factorial: Optional[int] = None
    s_b_lcm: Optional[int] = None
    lcm_divisibility: str = "certified by chain"

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "n": self.n,
            "b": self.b,
            "x": str(self.x),
            "x_float": float(self.x),
            "witness": self.witness.to_dict(),
            "checks": [c.to_dict(timing) for c in self.checks],
            "m_lower_bound": self.m_lower_bound,
            "s_b_factorial": self.s_b_factorial,
            "s_b_lcm": self.s_b_lcm,
            "lcm_divisibility": self.lcm_divisibility,
            "overall": "pass" if self.overall else "fail",
        }


@dataclass
class ScanRow:
    n: int
    b: int
    s_b_factorial: int
    ratio_luca: float
    ratio_thm1: Optional[float]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "b": self.b,
            "s_b_factorial": self.s_b_factorial,
            "ratio_luca": self.ratio_luca,
            "ratio_thm1": self.ratio_thm1,
        }


class _Recorder:
    def __init__(self):
        self.checks: list[Check] = []

    def check(self, name: str, statement: str, fn) -> bool:
        t0 = time.perf_counter()
        ok = bool(fn())
        self.checks.append(Check(name, statement, ok, (time.perf_counter() - t0) * 1e3))
        return ok


def min_admissible_n(b: int) -> int:
    return (b + 1) ** 8


def _budget_fits(x: Fraction, n: int, b: int) -> bool:
    # x <= log_{b+1}(n) / 8  <=>  (b+1)**(8 p) <= n**q  for x = p/q
    return (b + 1) ** (8 * x.numerator) <= n ** x.denominator


def budget_x(n: int, b: int) -> Fraction:
    """Largest multiple of 1/1024 not exceeding log_{b+1}(n) / 8 (exactly verified)."""
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    floor_n = min_admissible_n(b)
    if n < floor_n:
        raise BudgetError(f"budget below 1: n = {n} < (b+1)^8; minimal admissible n for b = {b} is {floor_n}")
    q = BUDGET_DENOMINATOR
    p = math.floor(math.log(n) / (8 * math.log(b + 1)) * q) + 2
    while not _budget_fits(Fraction(p, q), n, b):
        p -= 1
    return Fraction(p, q)


def _pow2_shape(w: Witness) -> tuple[int, int]:
    q = math.prod(w.odd_part_primes)
    if w.m != (q << w.t) or len(set(w.odd_part_primes)) != len(w.odd_part_primes) or q % 2 == 0:
        raise ValueError("witness is not of the form 2^t * (odd squarefree)")
    return w.t, q


def verify_divisibility_chain(n: int, b: int, w: Witness, lcm_n: Optional[int] = None,
                              max_chain_lcm: int = MAX_CHAIN_LCM) -> list[Check]:
    """Check every link from b**w.m - 1 up to lcm(1..n).

    ``lcm_n``, when given, must be lcm(1..n); the final link is then tested
    numerically instead of being certified from the root inequality. Group
    lcms over ranges beyond ``max_chain_lcm`` are not materialized: a group
    whose members are each <= r and pairwise coprime divides lcm(1..r).
    """
    phi = totient(w.m)
    if (b + 1) ** (8 * phi) > n:
        raise PreconditionError(
            f"witness too large for n: (b+1)^(8 phi(m)) = {b + 1}^{8 * phi} > n = {n}")
    t, q = _pow2_shape(w)
    rec = _Recorder()
    by_sign = {1: [], -1: []}
    for d in divisors(q):
        by_sign[mobius(d)].append(d)

    roots = []
    lcms = []
    all_values = []
    for j in range(t + 1):
        k = 2 ** (j + 2)
        root = integer_root(n, k)
        lam = lcm_upto(root) if root <= max_chain_lcm else None
        roots.append(root)
        lcms.append(lam)
        for r in (1, -1):
            idx = [2 ** (t - j) * d for d in by_sign[r]]
            vals = [cyclotomic_value(i, b) for i in idx]
            all_values.extend(vals)
            tag = f"j={j},mu={r:+d}"
            rec.check(f"{tag}:bound", f"Phi_i({b})^{k} <= n for i in {idx}",
                      lambda: all(v ** k <= n for v in vals))
            rec.check(f"{tag}:coprime", f"values {vals} pairwise coprime",
                      lambda: all(math.gcd(u, v) == 1 for u, v in itertools.combinations(vals, 2)))
            if lam is not None:
                rec.check(f"{tag}:divides", f"prod {vals} | lcm(1..{root})",
                          lambda: divides(math.prod(vals), lam))
            else:
                rec.check(f"{tag}:divides", f"prod {vals} | lcm(1..{root}) (each <= {root}, coprime)",
                          lambda: all(v <= root for v in vals)
                          and all(math.gcd(u, v) == 1 for u, v in itertools.combinations(vals, 2)))

    target = b ** w.m - 1
    rec.check("product", f"prod of all Phi values == {b}^{w.m} - 1",
              lambda: math.prod(all_values) == target)
    square = math.prod(lcms) ** 2 if None not in lcms else None
    if square is not None:
        rec.check("squared-lcm", f"{b}^{w.m} - 1 | (prod_j lcm(1..r_j))^2 with r = {roots}",
                  lambda: divides(target, square))
    rec.check("root-product", f"(prod r_j)^2 <= n with r = {roots}",
              lambda: math.prod(roots) ** 2 <= n)
    if lcm_n is not None and square is not None:
        rec.check("lcm-chain:numeric", "(prod_j lcm(1..r_j))^2 | lcm(1..n)",
                  lambda: divides(square, lcm_n))
    return rec.checks


def verify_theorem(n: int, b: int, compute_factorial: bool = True, compute_lcm: bool = True,
                   override_x: Optional[Budget] = None, *,
                   max_factorial_n: int = MAX_FACTORIAL_N,
                   max_lcm_n: int = MAX_LCM_N) -> VerificationReport:
    """Run the whole certificate for (n, b) and collect a report."""
    if override_x is None:
        x = budget_x(n, b)
    else:
        x = as_budget(override_x)
        if x < 1:
            raise BudgetError(f"budget below 1: override x = {x}")
        if not _budget_fits(x, n, b):
            raise PreconditionError(f"override x = {x} exceeds log_{b + 1}(n)/8 for n = {n}")
    if compute_factorial and n > max_factorial_n:
        raise ResourceGuardError(f"n! refused: n = {n} > max_factorial_n = {max_factorial_n}")
    if compute_lcm and n > max_lcm_n:
        raise ResourceGuardError(f"lcm(1..n) refused: n = {n} > max_lcm_n = {max_lcm_n}")

    w = construct_witness_pow2(x)
    report = VerificationReport(n, b, x, w, m_lower_bound=w.m)
    rec = _Recorder()
    m = w.m
    target = b ** m - 1
    rec.check("witness", f"phi({m}) = {w.phi_m} <= x and (b+1)^(8 phi(m)) <= n",
              lambda: totient(m) == w.phi_m <= x and (b + 1) ** (8 * w.phi_m) <= n)

    lam = lcm_upto(n) if compute_lcm else None
    rec.checks.extend(verify_divisibility_chain(n, b, w, lam))
    if lam is not None:
        report.lcm_divisibility = "checked numerically"
        rec.check("lcm:divides", f"{b}^{m} - 1 | lcm(1..{n})", lambda: divides(target, lam))
        report.s_b_lcm = digit_sum(lam, b)
        rec.check("lcm:digit-sum", f"s_{b}(lcm(1..{n})) = {report.s_b_lcm} >= m = {m}",
                  lambda: report.s_b_lcm >= m)
    if compute_factorial:
        fact = factorial(n)
        if lam is not None:
            rec.check("lcm|factorial", f"lcm(1..{n}) | {n}!", lambda: divides(lam, fact))
        rec.check("factorial:divides", f"{b}^{m} - 1 | {n}!", lambda: divides(target, fact))
        report.s_b_factorial = digit_sum(fact, b)
        rec.check("factorial:digit-sum", f"s_{b}({n}!) = {report.s_b_factorial} >= m = {m}",
                  lambda: report.s_b_factorial >= m)
    report.checks = rec.checks
    return report


def _ratios(n: int, s: int) -> tuple[float, Optional[float]]:
    ln = math.log(n)
    luca = s / ln
    thm1 = s / (ln * math.log(math.log(ln))) if n >= 16 else None
    return luca, thm1


def scan_constants(n_values: Iterable[int], b: int) -> list[ScanRow]:
    """Exact s_b(n!) with the ratios s/log n and s/(log n log log log n).

    Increasing runs of n reuse the previous factorial.
    """
    rows = []
    prev_n, prev_f = 1, 1
    for n in n_values:
        if n < 2:
            raise ValueError(f"scan needs n >= 2, got {n}")
        if n >= prev_n:
            f = prev_f * range_product(prev_n + 1, n + 1)
        else:
            f = factorial(n)
        prev_n, prev_f = n, f
        s = digit_sum(f, b)
        rows.append(ScanRow(n, b, s, *_ratios(n, s)))
    return rows


def running_minima(rows: Iterable[ScanRow]) -> tuple[Optional[float], Optional[float]]:
    """Smallest ratio_luca and ratio_thm1 seen (empirical c_b and C_b candidates)."""
    luca = thm1 = None
    for r in rows:
        luca = r.ratio_luca if luca is None else min(luca, r.ratio_luca)
        if r.ratio_thm1 is not None:
            thm1 = r.ratio_thm1 if thm1 is None else min(thm1, r.ratio_thm1)
    return luca, thm1


SCAN_COLUMNS = ("n", "b", "s_b_factorial", "ratio_luca", "ratio_thm1")


def write_scan_csv(rows: Iterable[ScanRow], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SCAN_COLUMNS)
    for r in rows:
        writer.writerow([r.n, r.b, r.s_b_factorial, repr(r.ratio_luca),
                         "" if r.ratio_thm1 is None else repr(r.ratio_thm1)])
