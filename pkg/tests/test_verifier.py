import csv
import io
import math
import random

import pytest

from digitbound.bigops import digit_sum
from digitbound.lcmfact import lcm_upto_oracle
from digitbound.numtheory import totient
from digitbound.verifier import (
    BudgetError,
    PreconditionError,
    ResourceGuardError,
    budget_x,
    running_minima,
    scan_constants,
    verify_divisibility_chain,
    verify_theorem,
    write_scan_csv,
)
from digitbound.witness import construct_witness_pow2, construct_witness_smooth


@pytest.mark.parametrize("n, b, approx", [(10**4, 2, 1.047), (10**5, 2, 1.309)])
def test_budget_examples(n, b, approx):
    x = budget_x(n, b)
    true = math.log(n) / (8 * math.log(b + 1))
    assert x <= true and true - float(x) < 1 / 1024
    assert (b + 1) ** (8 * x.numerator) <= n ** x.denominator
    assert float(x) == pytest.approx(approx, abs=2e-3)


@pytest.mark.parametrize("b", [2, 3, 10])
def test_budget_exactly_one_at_threshold(b):
    assert budget_x((b + 1) ** 8, b) == 1


@pytest.mark.parametrize("n, b, floor_n", [(6560, 2, 6561), (10**4, 10, 214358881), (100, 2, 6561)])
def test_budget_below_one(n, b, floor_n):
    with pytest.raises(BudgetError, match=f"budget below 1.*{floor_n}"):
        budget_x(n, b)
    with pytest.raises(BudgetError):
        verify_theorem(n, b)


def test_chain_small_witness():
    w = construct_witness_pow2(budget_x(10**4, 2))
    assert w.m == 2
    checks = verify_divisibility_chain(10**4, 2, w)
    assert all(c.passed for c in checks)
    names = [c.name for c in checks]
    assert "product" in names and "root-product" in names


def test_chain_at_threshold():
    w = construct_witness_pow2(1)
    assert all(c.passed for c in verify_divisibility_chain(6561, 2, w))


def test_chain_precondition_failure():
    with pytest.raises(PreconditionError, match="witness too large for n"):
        verify_divisibility_chain(10**4, 2, construct_witness_pow2(100))


@pytest.mark.parametrize("x", [2, 10, 100, 1000])
def test_chain_precondition_is_exact(x):
    w = construct_witness_pow2(x)
    n = 3 ** (8 * totient(w.m))
    checks = verify_divisibility_chain(n, 2, w)
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]
    with pytest.raises(PreconditionError):
        verify_divisibility_chain(n - 1, 2, w)


def test_chain_other_bases():
    for b in (3, 10):
        w = construct_witness_pow2(10)
        n = (b + 1) ** (8 * w.phi_m)
        assert all(c.passed for c in verify_divisibility_chain(n, b, w))


def test_chain_rejects_non_pow2_shape():
    w = construct_witness_smooth(100)  # 360 = 2^3 * 3^2 * 5
    with pytest.raises(ValueError, match="odd squarefree"):
        verify_divisibility_chain(3 ** (8 * w.phi_m), 2, w)


def test_chain_detects_false_link():
    # a wrong lcm(1..n) must be caught by the numeric link
    w = construct_witness_pow2(budget_x(10**4, 2))
    checks = verify_divisibility_chain(10**4, 2, w, lcm_n=2**20)
    bad = [c.name for c in checks if not c.passed]
    assert bad == ["lcm-chain:numeric"]


@pytest.mark.parametrize("n", [6561, 10**4])
def test_theorem_small(n):
    r = verify_theorem(n, 2)
    assert r.overall
    assert r.witness.m == 2 and r.m_lower_bound == 2
    assert r.s_b_lcm >= 2 and r.s_b_factorial >= 2
    assert r.lcm_divisibility == "checked numerically"
    # independent recomputation of the certified conclusion
    assert lcm_upto_oracle(n) % (2**r.witness.m - 1) == 0
    assert r.s_b_factorial == bin(math.factorial(n)).count("1")


def test_theorem_without_big_numbers():
    r = verify_theorem(10**4, 2, compute_factorial=False, compute_lcm=False)
    assert r.overall
    assert r.s_b_factorial is None and r.s_b_lcm is None
    assert r.lcm_divisibility == "certified by chain"


def test_theorem_override_budget():
    r = verify_theorem(3**16, 2, False, False, override_x=2)
    assert r.overall and r.witness.m == 4
    with pytest.raises(PreconditionError):
        verify_theorem(3**16 - 1, 2, False, False, override_x=2)
    with pytest.raises(BudgetError):
        verify_theorem(10**4, 2, False, False, override_x="0.5")


def test_theorem_guards():
    with pytest.raises(ResourceGuardError):
        verify_theorem(10**4, 2, True, False, max_factorial_n=9999)
    with pytest.raises(ResourceGuardError):
        verify_theorem(10**4, 2, False, True, max_lcm_n=9999)


def test_report_determinism():
    a = verify_theorem(10**4, 2).to_dict(timing=False)
    b = verify_theorem(10**4, 2).to_dict(timing=False)
    assert a == b
    assert a["overall"] == "pass"


def test_sbbm1_property():
    rng = random.Random(13)
    for b in (2, 3, 10):
        for m in range(1, 13):
            base = b**m - 1
            for q in range(1, 1001):
                assert digit_sum(base * q, b) >= m
            for _ in range(100):
                assert digit_sum(base * (rng.getrandbits(256) | 1), b) >= m


def test_scan_examples():
    (row,) = scan_constants([10], 10)
    assert row.s_b_factorial == 27
    assert row.ratio_luca == pytest.approx(27 / math.log(10))
    assert row.ratio_luca == pytest.approx(11.726, abs=1e-3)
    assert row.ratio_thm1 is None
    (row,) = scan_constants([2], 2)
    assert row.s_b_factorial == 1 and row.ratio_luca == pytest.approx(1.4427, abs=1e-4)
    (row,) = scan_constants([16], 2)
    s = bin(20922789888000).count("1")
    assert row.s_b_factorial == s
    assert row.ratio_thm1 == pytest.approx(s / (math.log(16) * math.log(math.log(math.log(16)))))
    assert row.ratio_thm1 > 0


def test_scan_out_of_order_and_minima():
    rows = scan_constants([20, 5, 30], 3)
    for r in rows:
        assert r.s_b_factorial == digit_sum(math.factorial(r.n), 3)
    luca, thm1 = running_minima(rows)
    assert luca == min(r.ratio_luca for r in rows)
    assert thm1 == min(r.ratio_thm1 for r in rows if r.ratio_thm1 is not None)
    with pytest.raises(ValueError):
        scan_constants([1], 2)


def test_scan_csv_format():
    buf = io.StringIO()
    write_scan_csv(scan_constants([2, 16], 2), buf)
    text = buf.getvalue()
    assert "\r" not in text
    lines = list(csv.reader(io.StringIO(text)))
    assert lines[0] == ["n", "b", "s_b_factorial", "ratio_luca", "ratio_thm1"]
    assert lines[1][4] == "" and float(lines[2][4]) > 0
