import math

import pytest

from digitbound.bench import sequential_factorial
from digitbound.lcmfact import factorial, floor_log, lcm_upto, lcm_upto_oracle, product_tree
from digitbound.numtheory import primes_upto


@pytest.mark.parametrize("n, v", [(0, 1), (1, 1), (10, 3628800), (20, 2432902008176640000)])
def test_factorial_examples(n, v):
    assert factorial(n) == v


def test_factorial_tree_equals_sequential():
    for n in range(0, 2001):
        assert factorial(n) == sequential_factorial(n)


def test_factorial_large_matches_stdlib():
    assert factorial(30_000) == math.factorial(30_000)


def test_factorial_rejects_negative():
    with pytest.raises(ValueError):
        factorial(-1)


@pytest.mark.parametrize("n, v", [(1, 1), (2, 2), (6, 60), (10, 2520)])
def test_lcm_examples(n, v):
    assert lcm_upto(n) == v
    assert lcm_upto_oracle(n) == v


def test_lcm_formula_matches_fold():
    acc = 1
    for n in range(1, 2001):
        acc = math.lcm(acc, n)
        assert lcm_upto(n) == acc
    assert all(lcm_upto_oracle(n) == lcm_upto(n) for n in range(1, 2001, 37))


def test_lcm_monotone_divisibility():
    lam = [None] + [lcm_upto(n) for n in range(1, 301)]
    for n in range(1, 301):
        for m in range(1, n + 1):
            assert lam[n] % lam[m] == 0


def test_lcm_super_multiplicative():
    lam = [None] + [lcm_upto(n) for n in range(1, 3601)]
    for m in range(1, 61):
        for n in range(1, 61):
            assert lam[m * n] % (lam[m] * lam[n]) == 0


def test_lcm_divides_factorial():
    f = 1
    for n in range(1, 501):
        f *= n
        assert f % lcm_upto(n) == 0


def test_floor_log_inequality():
    for p in primes_upto(100):
        for m in range(1, 101):
            for n in range(1, 101):
                assert floor_log(p, m) + floor_log(p, n) <= floor_log(p, m * n)


def test_floor_log_exact_powers():
    # exactly where float logs go wrong
    for p in (2, 3, 5, 7, 10**3 + 9):
        for e in range(0, 40):
            assert floor_log(p, p**e) == e
            if e:
                assert floor_log(p, p**e - 1) == e - 1


def test_product_tree():
    vals = list(range(1, 1000, 3))
    assert product_tree(vals) == math.prod(vals)
    assert product_tree([]) == 1
