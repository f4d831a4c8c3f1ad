"""The mod-star congruence and the group G*_n = G_n / <-1>.

Two integers coprime to n are mod-star congruent when they agree up to sign
modulo n.  For odd n each class is represented by its odd member; for even n
by the member below n/2.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import Factorization, carmichael_lambda, euler_phi, factorize
from .errors import CoprimalityError, DomainError, LimitExceededError, ModulusError

GPR_RATIO_LIMIT = 10**5


def _check_modulus(n: int) -> None:
    if n < 3:
        raise ModulusError(f"mod-star needs n >= 3, got {n}")


def reduce_mod_star(a: int, n: int) -> int:
    """Canonical representative of ``a`` without validation (hot path)."""
    r = a % n
    if n & 1:
        return n - r if r % 2 == 0 else r
    return n - r if 2 * r > n else r


@dataclass(frozen=True, order=True)
class ModStarResidue:
    """A mod-star class, stored as (modulus, canonical representative)."""

    n: int
    rep: int

    def __post_init__(self) -> None:
        _check_modulus(self.n)
        if math.gcd(self.rep, self.n) != 1:
            raise CoprimalityError(f"gcd({self.rep}, {self.n}) != 1")
        if reduce_mod_star(self.rep, self.n) != self.rep:
            raise DomainError(f"{self.rep} is not the canonical representative mod* {self.n}")

    def __int__(self) -> int:
        return self.rep

    def __mul__(self, other: "ModStarResidue") -> "ModStarResidue":
        return mul_star(self, other)

    def __pow__(self, e: int) -> "ModStarResidue":
        if e < 0:
            return canonical_repr(pow(self.rep, e, self.n), self.n)
        return ModStarResidue(self.n, reduce_mod_star(pow(self.rep, e, self.n), self.n))

    def inverse(self) -> "ModStarResidue":
        return self ** -1

    def __str__(self) -> str:
        return f"{self.rep} (mod* {self.n})"


def canonical_repr(a: int, n: int) -> ModStarResidue:
    _check_modulus(n)
    if math.gcd(a, n) != 1:
        raise CoprimalityError(f"gcd({a}, {n}) != 1")
    return ModStarResidue(n, reduce_mod_star(a, n))


def congruent_star(a: int, b: int, n: int) -> bool:
    _check_modulus(n)
    for v in (a, b):
        if math.gcd(v, n) != 1:
            raise CoprimalityError(f"gcd({v}, {n}) != 1")
    return (a - b) % n == 0 or (a + b) % n == 0


def mul_star(a: ModStarResidue, b: ModStarResidue) -> ModStarResidue:
    if a.n != b.n:
        raise ModulusError(f"modulus mismatch: {a.n} vs {b.n}")
    return ModStarResidue(a.n, reduce_mod_star(a.rep * b.rep, a.n))


def group_representatives(n: int) -> list[int]:
    """Canonical representatives of G*_n as bare ints, ascending."""
    _check_modulus(n)
    return list(_iter_representatives(n))


def group_elements(n: int) -> list[ModStarResidue]:
    return [ModStarResidue(n, k) for k in group_representatives(n)]


def order_in_star(a: int, n: int, multiple: int, multiple_primes) -> int:
    """Order of ``a`` in G*_n, descending from a known multiple of it.

    ``multiple`` must be a multiple of the order (e.g. lambda(n) or the group
    order) and ``multiple_primes`` its distinct prime factors.
    """
    minus_one = n - 1
    t = multiple
    for q in multiple_primes:
        while t % q == 0:
            r = pow(a, t // q, n)
            if r == 1 or r == minus_one:
                t //= q
            else:
                break
    return t


def element_order(a: ModStarResidue) -> int:
    """Least t >= 1 with a^t = 1 mod* n.

    Uses lambda(n) as the starting exponent; no repeated multiplication.
    """
    lam = carmichael_lambda(a.n)
    return order_in_star(a.rep, a.n, lam, factorize(lam).primes)


def j_invariant(n: int) -> int:
    """phi(n) / lambda(n); 1 for prime powers, 2 for cyclic semiprimes."""
    _check_modulus(n)
    return euler_phi(n) // carmichael_lambda(n)


@dataclass(frozen=True)
class GroupStarSummary:
    """Structural data about G*_n.

    ``cyclic``, ``cyclic_semiprime`` and ``primitive_root_count`` are ``None``
    when n is not classified (n divisible by 4).
    """

    n: int
    order: int
    j: int
    lambda_: int
    cyclic: bool | None
    cyclic_semiprime: bool | None
    primitive_root_count: int | None
    smallest_primitive_root: int | None

    @property
    def classified(self) -> bool:
        return self.cyclic is not None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lambda_")
        keys = ("n", "order", "j", "lambda", "cyclic", "cyclic_semiprime",
                "primitive_root_count", "smallest_primitive_root")
        return {k: d[k] for k in keys}


def _cyclic_shape(f: Factorization) -> tuple[bool, bool]:
    """(cyclic, cyclic_semiprime) for an odd modulus from its factorization."""
    if len(f) == 1:
        return True, False
    if len(f) == 2:
        (p, a), (q, b) = f.pairs
        semi = math.gcd((p - 1) * p ** (a - 1), (q - 1) * q ** (b - 1)) == 2
        return semi, semi
    return False, False


def smallest_primitive_root(n: int) -> int | None:
    """Smallest generator of G*_n, or None if there is none."""
    order = euler_phi(n) // 2
    primes = factorize(order).primes if order > 1 else ()
    if carmichael_lambda(n) % order:
        return None
    for k in _iter_representatives(n):
        if order_in_star(k, n, order, primes) == order:
            return k
    return None


def _iter_representatives(n: int):
    if n & 1:
        return (k for k in range(1, n, 2) if math.gcd(k, n) == 1)
    return (k for k in range(1, (n + 1) // 2) if math.gcd(k, n) == 1)


def even_reduction(n: int) -> int | None:
    """For n = 2m with m odd and m >= 3, return m (G*_{2m} is isomorphic to G*_m)."""
    if n % 4 == 2 and n // 2 >= 3:
        return n // 2
    return None


@lru_cache(maxsize=4096)
def classify(n: int) -> GroupStarSummary:
    _check_modulus(n)
    phi = euler_phi(n)
    lam = carmichael_lambda(n)
    order = phi // 2
    if n & 1:
        cyclic, semi = _cyclic_shape(factorize(n))
    else:
        m = even_reduction(n)
        if m is None:
            return GroupStarSummary(n, order, phi // lam, lam, None, None, None, None)
        cyclic, semi = _cyclic_shape(factorize(m))
    count = euler_phi(order) if cyclic else 0
    smallest = smallest_primitive_root(n) if cyclic else None
    return GroupStarSummary(n, order, phi // lam, lam, cyclic, semi, count, smallest)


def primitive_roots_star(n: int) -> list[ModStarResidue]:
    """All generators of G*_n in ascending order."""
    summary = classify(n)
    if not summary.cyclic:
        raise ModulusError(f"G*_{n} is not known to be cyclic")
    order = summary.order
    primes = factorize(order).primes if order > 1 else ()
    return [ModStarResidue(n, k) for k in group_representatives(n)
            if order_in_star(k, n, order, primes) == order]


def decomposition_two_factors(n: int) -> tuple[int, int]:
    """(j, lambda) such that G_n is isomorphic to C_j x C_lambda, for n = p^a q^b odd."""
    if n % 2 == 0 or len(factorize(n)) != 2:
        raise ModulusError(f"{n} is not an odd number with exactly two prime factors")
    lam = carmichael_lambda(n)
    return euler_phi(n) // lam, lam


def unique_cyclic_submodulus(n: int) -> int | None:
    """Modulus m = p1^(a1-k) p2^a2 whose G*_m is cyclic of order lambda(n).

    Applies to n = p1^a1 p2^a2 (p1 < p2) where p1^k exactly divides p2 - 1 with
    1 <= k < a1.  Returns None when that shape is absent or when the candidate
    does not actually give a cyclic group of order lambda(n).
    """
    if n % 2 == 0:
        return None
    f = factorize(n)
    if len(f) != 2:
        return None
    (p1, a1), (p2, a2) = f.pairs
    k = 0
    t = p2 - 1
    while t % p1 == 0:
        t //= p1
        k += 1
    if not 1 <= k < a1:
        return None
    m = p1 ** (a1 - k) * p2**a2
    s = classify(m)
    if not s.cyclic or s.order != carmichael_lambda(n):
        return None
    return m


def _count_max_order(n: int, lam: int, star: bool) -> int:
    primes = factorize(lam).primes
    minus_one = n - 1 if star else 1
    count = 0
    if star:
        reps = group_representatives(n)
    else:
        reps = [k for k in range(1, n) if math.gcd(k, n) == 1]
    for k in reps:
        t = lam
        for q in primes:
            r = pow(k, t // q, n)
            if r == 1 or r == minus_one:
                break
        else:
            count += 1
    return count


def generalized_pr_ratio(n: int) -> Fraction | None:
    """Ratio of elements of order lambda(n) in G_n to those in G*_n.

    Counted exhaustively.  None when no class of G*_n reaches order lambda(n).
    """
    if n > GPR_RATIO_LIMIT:
        raise LimitExceededError(f"exhaustive ratio limited to n <= {GPR_RATIO_LIMIT}")
    if n < 4 or factorize(n).pairs == ((n, 1),):
        raise ModulusError(f"{n} is not composite")
    lam = carmichael_lambda(n)
    if lam < 2:
        raise ModulusError(f"lambda({n}) < 2")
    plain = _count_max_order(n, lam, star=False)
    star = _count_max_order(n, lam, star=True)
    if star == 0:
        return None
    return Fraction(plain, star)


def generalized_pr_ratio_formula(n: int) -> Fraction:
    """Closed form: 2 when lambda(n)/2 is even, else 2 + 1/(2^(l-1) - 1).

    l is the number of distinct prime factors; the mixed-number reading of the
    second case is the one the exhaustive count confirms.
    """
    lam = carmichael_lambda(n)
    if (lam // 2) % 2 == 0:
        return Fraction(2)
    l = len(factorize(n))
    return 2 + Fraction(1, 2 ** (l - 1) - 1)
