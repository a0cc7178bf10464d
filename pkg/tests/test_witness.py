import json
import math
from fractions import Fraction

import pytest

from digitbound.numtheory import max_totient_preimage_oracle, mobius, primes_upto, totient
from digitbound.witness import (
    E_GAMMA,
    best_effort_witness,
    construct_witness_pow2,
    construct_witness_smooth,
    witness_ratio,
)


def test_pow2_examples():
    w = construct_witness_pow2(10)
    assert (w.m, w.s, w.multiplier, w.t, w.odd_part_primes, w.phi_m) == (24, 2, 4, 3, [3], 8)
    w = construct_witness_pow2(100)
    assert (w.m, w.s, w.multiplier, w.t, w.odd_part_primes, w.phi_m) == (240, 3, 8, 4, [3, 5], 64)
    assert construct_witness_pow2(1).m == 2


def test_smooth_examples():
    assert construct_witness_smooth(10).m == 24
    w = construct_witness_smooth(100)
    assert (w.m, w.multiplier, w.phi_m) == (360, 12, 96)
    assert construct_witness_smooth(1).m == 2


def test_rational_budgets():
    assert construct_witness_pow2("1.047").m == 2
    assert construct_witness_pow2(Fraction(1073, 1024)).m == 2
    # (1*2)^2 = 4 <= 4.5 picks up the prime 3
    assert construct_witness_pow2("4.5").odd_part_primes == [3]
    with pytest.raises(TypeError):
        construct_witness_pow2(10.0)


@pytest.mark.parametrize("x", [0, "0.999", Fraction(1, 2)])
def test_rejects_small_budget(x):
    with pytest.raises(ValueError):
        construct_witness_pow2(x)
    with pytest.raises(ValueError):
        construct_witness_smooth(x)


def test_soundness_exact():
    for x in range(1, 501):
        for w in (construct_witness_pow2(x), construct_witness_smooth(x)):
            assert totient(w.m) == w.phi_m <= x
            assert w.m == 2**w.t * math.prod(w.odd_part_primes)


def test_pow2_shape():
    for x in range(1, 501):
        w = construct_witness_pow2(x)
        q = w.odd_part
        assert q % 2 == 1 and mobius(q) != 0
        # odd part is exactly the consecutive odd primes 3, 5, ..., p_s
        assert w.odd_part_primes == primes_upto(200)[1:w.s]


def test_oracle_domination():
    for x in range(1, 201):
        top = max_totient_preimage_oracle(x)
        assert construct_witness_pow2(x).m <= top
        assert construct_witness_smooth(x).m <= top


def test_pow2_monotone():
    ms = [construct_witness_pow2(x).m for x in range(1, 501)]
    assert ms == sorted(ms)


def test_ratio_example():
    expected = 360 / (E_GAMMA * 100 * math.log(math.log(100)))
    assert witness_ratio(100, "smooth") == pytest.approx(expected, rel=1e-12)
    assert witness_ratio(100, "smooth") == pytest.approx(1.324, abs=1e-3)


def test_ratio_bands():
    for x in (10**3, 10**4, 10**6, 10**8):
        assert 0.3 <= witness_ratio(x, "smooth") <= 2.0
        assert 0.2 <= witness_ratio(x, "pow2") <= 2.0


def test_ratio_rejects_small_x():
    with pytest.raises(ValueError):
        witness_ratio(15, "pow2")


def test_e_gamma_constant():
    assert E_GAMMA == pytest.approx(math.exp(0.57721566490153286), rel=1e-14)


def test_best_effort_is_oracle():
    w = best_effort_witness(100)
    assert w.m == max_totient_preimage_oracle(100) == 420
    assert w.m == 2**w.t * w.odd_part
    with pytest.raises(ValueError):
        best_effort_witness(201)


def test_json_serialization():
    d = json.loads(json.dumps(construct_witness_pow2(100).to_dict()))
    assert d["m"] == 240 and d["x"] == "100" and d["Q"] == 15
    assert set(d) == {"x", "x_float", "mode", "s", "t", "odd_part_primes", "Q", "m",
                      "phi_m", "multiplier", "trace"}
