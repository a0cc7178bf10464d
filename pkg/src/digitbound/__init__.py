"""Digit sums of n! and lcm(1, ..., n): exact kernels and a checkable
certificate that both are at least m whenever b**m - 1 divides lcm(1..n)."""

from .bigops import DigitVector, digit_sum, divides, integer_root, to_digits
from .cyclotomic import coprimality_check, cyclotomic_poly, cyclotomic_value
from .lcmfact import factorial, lcm_upto, lcm_upto_oracle
from .numtheory import (
    factorize,
    max_totient_preimage_oracle,
    mobius,
    primes_upto,
    smooth_3_upto,
    totient,
)
from .verifier import (
    VerificationReport,
    budget_x,
    scan_constants,
    verify_divisibility_chain,
    verify_theorem,
)
from .witness import Witness, construct_witness_pow2, construct_witness_smooth, witness_ratio

__version__ = "0.1.0"
