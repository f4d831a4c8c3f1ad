"""Arithmetic functions and prime machinery.

Everything here works on plain Python ints, so products of 64-bit moduli
never overflow.  Primality is deterministic over the whole 64-bit range.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator

import numpy as np

from .errors import DomainError, LimitExceededError

# Bits; the largest sieve primes_up_to will build unless told otherwise.
DEFAULT_SIEVE_LIMIT = 10**8

# First twelve primes: a deterministic Miller-Rabin witness set below 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = tuple(p for p in range(2, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1)))


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ``((p1, e1), (p2, e2), ...)`` with p ascending."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        last = 1
        for p, e in self.pairs:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.pairs}")
            last = p

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.pairs)

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.pairs]

    @classmethod
    def from_dict(cls, exps: dict[int, int]) -> "Factorization":
        return cls(tuple(sorted((p, e) for p, e in exps.items() if e)))


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, exps: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        exps[n] = exps.get(n, 0) + 1
        return
    d = _pollard_brent(n, rng)
    _split(d, exps, rng)
    _split(n // d, exps, rng)


@lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Complete prime factorization of ``n``.

    Trial division by primes below 1000, then Pollard-Brent on whatever
    cofactor is left.  ``factorize(1)`` is the empty factorization.
    """
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    exps: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            exps[p] = e
    if n > 1:
        # fixed seed: factorizations are deterministic run to run
        _split(n, exps, random.Random(n))
    return Factorization.from_dict(exps)


def factor_with(n: int, base_primes) -> list[int]:
    """Distinct prime factors of ``n`` by trial division over ``base_primes``.

    ``base_primes`` must cover every prime up to sqrt(n).  This is the hot path
    of the density surveys, so it returns bare primes and skips validation.
    """
    out = []
    for p in base_primes:
        if p * p > n:
            break
        if n % p == 0:
            out.append(p)
            n //= p
            while n % p == 0:
                n //= p
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"euler_phi needs n >= 1, got {n}")
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def _lambda_prime_power(p: int, e: int) -> int:
    if p == 2 and e >= 3:
        return 2 ** (e - 2)
    return (p - 1) * p ** (e - 1)


def carmichael_lambda(n: int) -> int:
    if n < 1:
        raise DomainError(f"carmichael_lambda needs n >= 1, got {n}")
    return reduce(math.lcm, (_lambda_prime_power(p, e) for p, e in factorize(n)), 1)


def moebius(n: int) -> int:
    if n < 1:
        raise DomainError(f"moebius needs n >= 1, got {n}")
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


class PrimeSieve:
    """Immutable Eratosthenes sieve over ``[0, limit]``.

    Membership is an O(1) lookup into a numpy bool array; the object can be
    shared freely between threads.
    """

    def __init__(self, limit: int, max_limit: int = DEFAULT_SIEVE_LIMIT):
        if limit < 2:
            raise DomainError(f"sieve limit must be >= 2, got {limit}")
        if limit > max_limit:
            raise LimitExceededError(f"sieve limit {limit} exceeds configured bound {max_limit}")
        self.limit = limit
        flags = np.ones(limit + 1, dtype=bool)
        flags[:2] = False
        flags[4::2] = False
        for p in range(3, math.isqrt(limit) + 1, 2):
            if flags[p]:
                flags[p * p :: 2 * p] = False
        flags.flags.writeable = False
        self._flags = flags

    def __contains__(self, n: int) -> bool:
        if not 0 <= n <= self.limit:
            raise DomainError(f"{n} outside sieve range [0, {self.limit}]")
        return bool(self._flags[n])

    def __len__(self) -> int:
        return int(self._flags.sum())

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes().tolist())

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self._flags)

    @property
    def flags(self) -> np.ndarray:
        """Read-only membership array indexed by integer."""
        return self._flags


def primes_up_to(x: int, max_limit: int = DEFAULT_SIEVE_LIMIT) -> PrimeSieve:
    return PrimeSieve(x, max_limit=max_limit)


def primes_in_range(lo: int, hi: int) -> np.ndarray:
    """Primes in ``[lo, hi]`` via a segmented sieve (int64 array).

    Memory is O(hi - lo + sqrt(hi)), so disjoint partitions of a large range
    can be sieved independently.
    """
    lo = max(lo, 2)
    if hi < lo:
        return np.empty(0, dtype=np.int64)
    root = math.isqrt(hi)
    base = PrimeSieve(max(root, 2), max_limit=max(root, 2)).primes()
    seg = np.ones(hi - lo + 1, dtype=bool)
    for p in base.tolist():
        start = max(p * p, -(-lo // p) * p)
        if start > hi:
            continue
        seg[start - lo :: p] = False
    return np.flatnonzero(seg).astype(np.int64) + lo
