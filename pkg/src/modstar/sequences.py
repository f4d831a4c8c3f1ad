"""Schick's cyclic sequences and their base-g generalization.

The production path for every sequence is the closed form ``R(g^i)``; the
recurrences are kept verbatim so they can serve as independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CoprimalityError, DomainError, ModulusError
from .group import ModStarResidue, element_order, reduce_mod_star


def _check_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise ModulusError(f"Schick sequences need odd n >= 3, got {n}")


def _check_count(count: int) -> None:
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")


@dataclass(frozen=True)
class SchickSequence:
    """One period of the sequence for (n, g).

    ``absolute_terms[k]`` is R(g^k).  ``start_index`` only affects labelling:
    1 for the q_1 = 1 convention of the original recurrences, 0 for q_0 = 1.
    ``signed_terms`` is empty unless g == 2.
    """

    n: int
    g: int
    signed_terms: tuple[int, ...]
    absolute_terms: tuple[int, ...]
    period: int
    start_index: int = 1

    def indexed(self):
        """Yield (index, signed-or-None, absolute) rows."""
        for k, a in enumerate(self.absolute_terms):
            s = self.signed_terms[k] if self.signed_terms else None
            yield k + self.start_index, s, a


def schick_signed(n: int, count: int) -> list[int]:
    """q_i = n - 2|q_{i-1}| starting from q_1 = (-1)^((n+1)/2)."""
    _check_odd(n)
    _check_count(count)
    q = 1 if ((n + 1) // 2) % 2 == 0 else -1
    out = [q]
    for _ in range(count - 1):
        q = n - 2 * abs(q)
        out.append(q)
    return out


def schick_absolute(n: int, count: int) -> list[int]:
    """q_i = |n - 2 q_{i-1}| starting from q_1 = 1."""
    _check_odd(n)
    _check_count(count)
    q = 1
    out = [q]
    for _ in range(count - 1):
        q = abs(n - 2 * q)
        out.append(q)
    return out


def _check_base(n: int, g: int) -> None:
    _check_odd(n)
    if not 0 < g < n:
        raise DomainError(f"base must satisfy 0 < g < n, got g={g}, n={n}")
    if math.gcd(g, n) != 1:
        raise CoprimalityError(f"gcd({g}, {n}) != 1")


def generalized_sequence(n: int, g: int, count: int) -> list[int]:
    """Terms R(g^0), R(g^1), ..., R(g^(count-1))."""
    _check_base(n, g)
    _check_count(count)
    out = []
    x = 1
    for _ in range(count):
        out.append(reduce_mod_star(x, n))
        x = x * g % n
    return out


def nested_absolute_step(q: int, n: int, g: int) -> int:
    """|n - |n - ... |n - g q| ...|| with the absolute value taken g - 1 times."""
    x = abs(n - g * q)
    for _ in range(g - 2):
        x = abs(n - x)
    return x


def nested_absolute_sequence(n: int, g: int, count: int) -> list[int]:
    """Literal nested-absolute-value recurrence, q_0 = 1 (oracle)."""
    _check_base(n, g)
    _check_count(count)
    if g == 1:
        return [1] * count
    q = 1
    out = [q]
    for _ in range(count - 1):
        q = nested_absolute_step(q, n, g)
        out.append(q)
    return out


def pes(n: int) -> int:
    """Order of 2 in G*_n, i.e. the period of Schick's sequence."""
    _check_odd(n)
    return element_order(ModStarResidue(n, reduce_mod_star(2, n)))


def schick_sequence(n: int, g: int = 2, start_index: int = 1) -> SchickSequence:
    """One full period of the sequence for base g."""
    if start_index not in (0, 1):
        raise DomainError("start_index must be 0 or 1")
    _check_base(n, g)
    period = element_order(ModStarResidue(n, reduce_mod_star(g, n)))
    absolute = generalized_sequence(n, g, period)
    signed = schick_signed(n, period) if g == 2 else []
    return SchickSequence(n, g, tuple(signed), tuple(absolute), period, start_index)
