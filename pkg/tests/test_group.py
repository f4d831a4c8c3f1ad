import json
import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from modstar.arith import carmichael_lambda, euler_phi, factorize, is_prime
from modstar.errors import CoprimalityError, DomainError, ModulusError
from modstar.group import (
    ModStarResidue,
    canonical_repr,
    classify,
    congruent_star,
    decomposition_two_factors,
    element_order,
    even_reduction,
    generalized_pr_ratio,
    generalized_pr_ratio_formula,
    group_elements,
    group_representatives,
    j_invariant,
    mul_star,
    primitive_roots_star,
    reduce_mod_star,
    smallest_primitive_root,
    unique_cyclic_submodulus,
)


def star_orders_brute(n):
    """Orders of every element of G*_n by repeated multiplication."""
    out = {}
    for a in group_representatives(n):
        x, t = a % n, 1
        while x not in (1, n - 1):
            x = x * a % n
            t += 1
        out[a] = t
    return out


def odd_prime_powers(limit):
    return [n for n in range(3, limit + 1, 2) if len(factorize(n)) == 1]


@pytest.mark.parametrize("a,n,rep", [(2, 9, 7), (-1, 9, 1), (11, 9, 7), (3, 10, 3), (7, 10, 3)])
def test_canonical_repr_examples(a, n, rep):
    assert canonical_repr(a, n).rep == rep


def test_canonical_repr_errors():
    with pytest.raises(CoprimalityError):
        canonical_repr(3, 9)
    with pytest.raises(ModulusError):
        canonical_repr(1, 2)
    with pytest.raises(DomainError):
        ModStarResidue(9, 2)  # not canonical


def test_congruent_star_examples():
    assert congruent_star(2, 7, 9)
    assert congruent_star(4, 4, 9)
    assert not congruent_star(1, 5, 9)


@pytest.mark.parametrize("a,b,n,c", [(5, 7, 9, 1), (5, 5, 9, 7), (1, 5, 9, 5)])
def test_mul_star_examples(a, b, n, c):
    assert mul_star(ModStarResidue(n, a), ModStarResidue(n, b)).rep == c


def test_group_elements_examples():
    assert group_representatives(9) == [1, 5, 7]
    assert group_representatives(3) == [1]
    assert group_representatives(7) == [1, 3, 5]
    assert [e.rep for e in group_elements(9)] == [1, 5, 7]


@pytest.mark.parametrize("a,n,order", [(2, 7, 3), (1, 7, 1), (1, 101, 1), (2, 9, 3)])
def test_element_order_examples(a, n, order):
    assert element_order(canonical_repr(a, n)) == order


def test_j_invariant_examples():
    assert j_invariant(63) == 6
    assert j_invariant(15) == 2
    for n in (3, 9, 27, 125, 343, 2187):
        assert j_invariant(n) == 1


def test_classify_examples():
    s = classify(15)
    assert s.cyclic and s.cyclic_semiprime
    s = classify(9)
    assert s.cyclic and s.j == 1 and s.order == 3
    s = classify(63)
    assert s.cyclic is False and s.j == 6


def test_primitive_roots_examples():
    assert [r.rep for r in primitive_roots_star(7)] == [3, 5]
    assert [r.rep for r in primitive_roots_star(9)] == [5, 7]
    assert len(primitive_roots_star(13)) == 2 == euler_phi(6)
    with pytest.raises(ModulusError):
        primitive_roots_star(63)


def test_decomposition_examples():
    assert decomposition_two_factors(15) == (2, 4)
    assert decomposition_two_factors(63) == (6, 6)
    assert decomposition_two_factors(35) == (2, 12)
    with pytest.raises(ModulusError):
        decomposition_two_factors(105)


def test_unique_cyclic_submodulus_examples():
    assert unique_cyclic_submodulus(63) == 21
    assert unique_cyclic_submodulus(275) == 55
    assert unique_cyclic_submodulus(15) is None
    # for 189 = 3^3 7 the shape applies but 3 * 7 gives lambda 6 != 18 and
    # 9 * 7 is not cyclic, so no such modulus exists
    assert unique_cyclic_submodulus(189) is None


def test_unique_cyclic_submodulus_is_cyclic_of_order_lambda():
    for n in range(3, 5000, 2):
        m = unique_cyclic_submodulus(n)
        if m is not None:
            s = classify(m)
            assert s.cyclic and s.order == carmichael_lambda(n)
            assert max(star_orders_brute(m).values()) == s.order


def test_generalized_pr_ratio_examples():
    assert generalized_pr_ratio(84) == Fraction(7, 3)
    assert generalized_pr_ratio(231) == Fraction(7, 3)
    assert generalized_pr_ratio(15) == 2


def test_generalized_pr_ratio_formula_agrees_on_examples():
    for n in (15, 84, 231):
        assert generalized_pr_ratio_formula(n) == generalized_pr_ratio(n)


def test_summary_json_keys():
    d = classify(9).to_dict()
    assert list(d) == ["n", "order", "j", "lambda", "cyclic", "cyclic_semiprime",
                       "primitive_root_count", "smallest_primitive_root"]
    assert json.loads(json.dumps(d)) == d


def test_classify_invariants():
    for n in range(3, 3000):
        s = classify(n)
        phi = euler_phi(n)
        assert s.order == phi // 2
        assert s.j * s.lambda_ == phi
        if s.cyclic:
            assert s.primitive_root_count == euler_phi(s.order)


def test_group_order_law():
    for n in range(3, 10_001, 2):
        assert len(group_representatives(n)) == euler_phi(n) // 2


def test_square_equivalence_for_prime_powers():
    for n in odd_prime_powers(300):
        units = [a for a in range(1, n) if math.gcd(a, n) == 1]
        for a in units:
            for b in units:
                assert congruent_star(a, b, n) == ((a * a - b * b) % n == 0)


def test_cyclicity_matches_brute_force():
    for n in range(3, 600, 2):
        brute = max(star_orders_brute(n).values()) == euler_phi(n) // 2
        assert classify(n).cyclic == brute, n


def test_element_order_matches_brute_force():
    for n in range(3, 400, 2):
        orders = star_orders_brute(n)
        for a, t in orders.items():
            assert element_order(ModStarResidue(n, a)) == t


def test_order_divides_half_lambda_for_prime_powers():
    for n in odd_prime_powers(2000):
        half = carmichael_lambda(n) // 2
        for a in group_representatives(n):
            assert half % element_order(ModStarResidue(n, a)) == 0


@pytest.mark.parametrize("n", [9, 15, 21, 63, 143])
def test_group_axioms(n):
    elems = group_elements(n)
    one = ModStarResidue(n, 1)
    for a in elems:
        assert a * one == a
        assert a * a.inverse() == one
    for a, b in product(elems, repeat=2):
        assert a * b == b * a
    for a, b, c in product(elems[:12], repeat=3):
        assert (a * b) * c == a * (b * c)


def test_primitive_root_density_vs_standard():
    for p in range(3, 2000):
        if not is_prime(p) or p < 5:
            continue
        star = len(primitive_roots_star(p)) / ((p - 1) // 2)
        plain = euler_phi(p - 1) / (p - 1)
        if p % 4 == 3:
            assert star == pytest.approx(2 * plain)
        else:
            assert star == pytest.approx(plain)


def test_smallest_primitive_root_is_smallest():
    for n in (7, 9, 13, 15, 23, 35, 143, 2 * 143):
        roots = primitive_roots_star(n)
        assert smallest_primitive_root(n) == roots[0].rep


def test_even_moduli():
    assert group_representatives(10) == [1, 3]
    assert even_reduction(30) == 15
    assert even_reduction(12) is None
    s = classify(12)
    assert not s.classified and s.cyclic is None and s.order == 2
    assert classify(30).cyclic == classify(15).cyclic
    for n in range(6, 400, 4):  # n = 2m, m odd
        m = n // 2
        assert classify(n).cyclic == classify(m).cyclic
        assert max(star_orders_brute(n).values(), default=1) == \
            max(star_orders_brute(m).values(), default=1)


@given(st.integers(min_value=3, max_value=10**12), st.integers())
def test_reduce_is_class_invariant(n, a):
    r = reduce_mod_star(a, n)
    assert reduce_mod_star(-a, n) == r
    assert reduce_mod_star(a + n, n) == r
    assert (r - a) % n == 0 or (r + a) % n == 0
    if n % 2:
        assert r % 2 == 1 or r == 0 or r == n
    else:
        assert 2 * r <= n


@given(st.integers(min_value=1, max_value=10**6).map(lambda k: 2 * k + 1),
       st.integers(min_value=1))
def test_power_matches_integer_power(n, e):
    a = canonical_repr(2, n) if n > 3 else ModStarResidue(n, 1)
    assert (a ** e).rep == reduce_mod_star(pow(2 if n > 3 else 1, e, n), n)
