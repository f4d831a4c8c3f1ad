"""Quadratic and biquadratic residues in G*_n and closed-form square roots.

Level L (1, 2 or 3) applies when n is an odd prime power or a cyclic
semiprime and phi(n) / 2^L is odd.  Then the root of an admissible b is
b^((phi(n)/2^L + 1)/2) mod* n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import euler_phi, factorize
from .errors import LevelInapplicableError, LimitExceededError, NonResidueError
from .group import ModStarResidue, classify, group_representatives, reduce_mod_star

BRUTE_LIMIT = 10**6


def _star_square(x: int, n: int) -> int:
    return reduce_mod_star(x * x, n)


def _is_closed_form_shape(n: int) -> bool:
    """Odd prime power or cyclic semiprime (level 2/3 shape)."""
    if n % 2 == 0 or n < 3:
        return False
    s = classify(n)
    return len(factorize(n)) == 1 or bool(s.cyclic_semiprime)


def applicable_level(n: int) -> int | None:
    """The closed-form level that applies to n, if any.

    Level 1 is restricted to odd prime powers, levels 2 and 3 also admit
    cyclic semiprimes.
    """
    if not _is_closed_form_shape(n):
        return None
    half = euler_phi(n) // 2
    if half % 2 == 1:
        return 1 if len(factorize(n)) == 1 else None
    if half % 4 == 2:
        return 2
    if half % 8 == 4:
        return 3
    return None


def _require_level(b: ModStarResidue, level: int) -> int:
    n = b.n
    if applicable_level(n) != level:
        raise LevelInapplicableError(f"level {level} closed form does not apply to n={n}")
    return euler_phi(n)


def _brute_power_set(n: int, e: int) -> set[int]:
    return {reduce_mod_star(pow(x, e, n), n) for x in group_representatives(n)}


def is_power_residue(b: ModStarResidue, e: int) -> bool:
    """Whether b is an e-th power in G*_n (e in {2, 4})."""
    n = b.n
    s = classify(n) if n % 2 else None
    if s is not None and s.cyclic:
        order = s.order
        d = gcd(e, order)
        return pow(b.rep, order // d, n) in (1, n - 1)
    if n > BRUTE_LIMIT:
        raise LimitExceededError(f"brute-force residue test limited to n <= {BRUTE_LIMIT}")
    return b.rep in _brute_power_set(n, e)


def is_qr_star(b: ModStarResidue) -> bool:
    return is_power_residue(b, 2)


def is_biquadratic_star(b: ModStarResidue) -> bool:
    return is_power_residue(b, 4)


def sqrt_level1(b: ModStarResidue) -> ModStarResidue:
    phi = _require_level(b, 1)
    return b ** ((phi // 2 + 1) // 2)


def sqrt_level2(b: ModStarResidue) -> ModStarResidue:
    phi = _require_level(b, 2)
    if not is_qr_star(b):
        raise NonResidueError(f"{b.rep} is not a quadratic residue mod* {b.n}")
    return b ** ((phi // 4 + 1) // 2)


def sqrt_level3(b: ModStarResidue) -> ModStarResidue:
    phi = _require_level(b, 3)
    if not is_biquadratic_star(b):
        raise NonResidueError(f"{b.rep} is not a biquadratic residue mod* {b.n}")
    return b ** ((phi // 8 + 1) // 2)


_SQRT_BY_LEVEL = {1: sqrt_level1, 2: sqrt_level2, 3: sqrt_level3}


def sqrt_star(b: ModStarResidue, level: int | None = None) -> tuple[ModStarResidue, int]:
    """Closed-form root at the given level, or the applicable one if None."""
    if level is None:
        level = applicable_level(b.n)
        if level is None:
            raise LevelInapplicableError(f"no closed-form level applies to n={b.n}")
    return _SQRT_BY_LEVEL[level](b), level


def brute_sqrt_oracle(b: ModStarResidue) -> set[int]:
    """Every x in G*_n with x^2 = b mod* n, by exhaustive search."""
    n = b.n
    if n > BRUTE_LIMIT:
        raise LimitExceededError(f"brute-force roots limited to n <= {BRUTE_LIMIT}")
    return {x for x in group_representatives(n) if _star_square(x, n) == b.rep}


@dataclass(frozen=True)
class ResiduePartition:
    """Classes of G*_n by power-residue character.

    level 1: (all,); level 2: (squares, non-squares);
    level 3: (fourth powers, squares that are not fourth powers, non-squares).
    """

    n: int
    level: int
    classes: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def partition(n: int, level: int) -> ResiduePartition:
    if applicable_level(n) != level:
        raise LevelInapplicableError(f"level {level} does not apply to n={n}")
    elems = group_representatives(n)
    if level == 1:
        return ResiduePartition(n, 1, (tuple(elems),))
    squares = {_star_square(x, n) for x in elems}
    if level == 2:
        return ResiduePartition(n, 2, (
            tuple(x for x in elems if x in squares),
            tuple(x for x in elems if x not in squares),
        ))
    fourth = {_star_square(x, n) for x in squares}
    return ResiduePartition(n, 3, (
        tuple(x for x in elems if x in fourth),
        tuple(x for x in elems if x in squares and x not in fourth),
        tuple(x for x in elems if x not in squares),
    ))


def standard_mod_root2_failures(n: int) -> list[int]:
    """Quadratic residues b mod n for which b^((phi/4+1)/2) fails as a root mod n.

    Shows that the level-2 exponent only works once b and -b are identified.
    """
    phi = euler_phi(n)
    e = (phi // 4 + 1) // 2
    units = [b for b in range(1, n) if gcd(b, n) == 1]
    qrs = sorted({x * x % n for x in units})
    return [b for b in qrs if pow(pow(b, e, n), 2, n) != b]
