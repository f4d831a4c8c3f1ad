import math
import random

import pytest

from modstar.arith import euler_phi
from modstar.errors import CoprimalityError, DomainError, ModulusError
from modstar.group import reduce_mod_star
from modstar.sequences import (
    generalized_sequence,
    nested_absolute_sequence,
    pes,
    schick_absolute,
    schick_sequence,
    schick_signed,
)


def test_signed_examples():
    assert schick_signed(7, 4) == [1, 5, -3, 1]
    assert schick_signed(3, 3) == [1, 1, 1]
    assert schick_signed(11, 6) == [1, 9, -7, -3, 5, 1]


def test_absolute_examples():
    assert schick_absolute(9, 4) == [1, 7, 5, 1]
    assert schick_absolute(3, 2) == [1, 1]
    assert schick_absolute(7, 4) == [1, 5, 3, 1]


def test_generalized_examples():
    assert generalized_sequence(7, 2, 6) == schick_absolute(7, 6)
    assert generalized_sequence(7, 1, 5) == [1] * 5
    # q_0 = 1 followed by the cycle 3, 9, 5, 7, 1
    assert generalized_sequence(11, 3, 11) == [1, 3, 9, 5, 7, 1, 3, 9, 5, 7, 1]


def test_pes_examples():
    assert pes(7) == 3
    assert pes(11) == 5
    assert pes(9) == 3


def test_errors():
    for f in (lambda: schick_signed(8, 3), lambda: schick_absolute(10, 2), lambda: pes(4)):
        with pytest.raises(ModulusError):
            f()
    with pytest.raises(CoprimalityError):
        generalized_sequence(9, 3, 4)
    with pytest.raises(DomainError):
        schick_sequence(9, 2, start_index=2)


def test_start_index_only_relabels():
    a = schick_sequence(11, 3, start_index=0)
    b = schick_sequence(11, 3, start_index=1)
    assert a.absolute_terms == b.absolute_terms == (1, 3, 9, 5, 7)
    assert [r[0] for r in a.indexed()] == [0, 1, 2, 3, 4]
    assert [r[0] for r in b.indexed()] == [1, 2, 3, 4, 5]
    assert a.signed_terms == ()


def test_sequence_invariants_small():
    for n in range(3, 1200, 2):
        p = pes(n)
        assert (euler_phi(n) // 2) % p == 0
        absolute = schick_absolute(n, p + 1)
        signed = schick_signed(n, p + 1)
        assert absolute == [reduce_mod_star(pow(2, i, n), n) for i in range(p + 1)]
        assert [abs(s) for s in signed] == absolute
        assert absolute[p] == absolute[0]
        assert 1 not in absolute[1:p]
        assert all(q % 2 and math.gcd(q, n) == 1 for q in absolute)
        seq = schick_sequence(n)
        assert seq.period == p and len(seq.absolute_terms) == p


def test_nested_oracle_random_bases():
    rng = random.Random(7)
    for n in range(3, 1200, 2):
        units = [g for g in range(1, n) if math.gcd(g, n) == 1]
        for g in rng.sample(units, min(20, len(units))):
            period = schick_sequence(n, g).period
            assert nested_absolute_sequence(n, g, period + 1) == generalized_sequence(n, g, period + 1)
