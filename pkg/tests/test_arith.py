import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from modstar.arith import (
    Factorization,
    PrimeSieve,
    carmichael_lambda,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    moebius,
    primes_in_range,
    primes_up_to,
)
from modstar.errors import LimitExceededError


def phi_brute(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def lambda_brute(n):
    # smallest e with a^e = 1 for every unit a
    units = [a for a in range(1, n + 1) if math.gcd(a, n) == 1]
    e = 1
    while any(pow(a, e, n) != 1 % n for a in units):
        e += 1
    return e


@pytest.mark.parametrize("n,expected", [(1, 1), (9, 6), (63, 36)])
def test_euler_phi_examples(n, expected):
    assert euler_phi(n) == expected
    assert phi_brute(n) == expected


@pytest.mark.parametrize("n,expected", [(9, 6), (63, 6), (15, 4)])
def test_carmichael_examples(n, expected):
    assert carmichael_lambda(n) == expected
    assert lambda_brute(n) == expected


def test_carmichael_matches_brute_force():
    for n in range(1, 400):
        assert carmichael_lambda(n) == lambda_brute(n), n


@pytest.mark.parametrize("n,expected", [(1, 1), (6, 1), (12, 0), (30, -1), (7, -1)])
def test_moebius_examples(n, expected):
    assert moebius(n) == expected


@pytest.mark.parametrize("n,pairs", [
    (63, ((3, 2), (7, 1))),
    (2, ((2, 1),)),
    (143, ((11, 1), (13, 1))),
])
def test_factorize_examples(n, pairs):
    assert factorize(n).pairs == pairs


def test_divisor_sum_identities():
    for n in range(1, 10_001):
        divs = divisors(n)
        assert sum(euler_phi(d) for d in divs) == n
        assert euler_phi(n) % carmichael_lambda(n) == 0
        assert sum(moebius(d) for d in divs) == (1 if n == 1 else 0)


def test_factorize_roundtrip_small():
    for n in range(2, 10**6 + 1, 7):
        f = factorize(n)
        assert f.value == n
        assert all(is_prime(p) for p in f.primes)


def _random_prime(rng, bits):
    while True:
        c = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_prime(c):
            return c


def test_factorize_64bit_semiprimes():
    rng = random.Random(20261017)
    for _ in range(100):
        p, q = _random_prime(rng, 32), _random_prime(rng, 31)
        f = factorize(p * q)
        assert f.value == p * q
        assert sorted(f.primes) == sorted({p, q})


def test_is_prime_strong_pseudoprimes():
    # strong pseudoprimes to several small bases
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
              341550071728321, 3825123056546413051):
        assert not is_prime(n)
    assert is_prime(2**61 - 1)
    assert is_prime(18446744073709551557)  # largest 64-bit prime


@given(st.integers(min_value=2, max_value=2**64))
@settings(max_examples=200, deadline=None)
def test_factorize_property(n):
    f = factorize(n)
    assert f.value == n
    assert list(f.primes) == sorted(f.primes)
    assert all(is_prime(p) for p in f.primes)


def test_factorization_rejects_unsorted():
    with pytest.raises(ValueError):
        Factorization(((3, 1), (2, 1)))


def test_sieve_examples():
    assert list(primes_up_to(10)) == [2, 3, 5, 7]
    assert len(primes_up_to(30)) == 10
    assert len(primes_up_to(2 * 10**6)) == 148933


def test_sieve_membership_and_bound():
    s = PrimeSieve(1000)
    assert 997 in s and 999 not in s
    assert all((k in s) == is_prime(k) for k in range(1001))
    with pytest.raises(LimitExceededError):
        primes_up_to(10**6, max_limit=10**5)


def test_segmented_sieve_matches_full():
    full = primes_up_to(50_000).primes()
    for lo, hi in [(2, 100), (1000, 5000), (49_000, 50_000), (17, 17), (24, 28)]:
        seg = primes_in_range(lo, hi)
        assert seg.tolist() == [p for p in full.tolist() if lo <= p <= hi]
