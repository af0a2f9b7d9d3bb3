import itertools
from fractions import Fraction

import pytest

from ramfilt.errors import AtPrecisionZero, NonUnit, NotEisenstein, NotIrreducible, NotPrime, PrecisionTooSmall
from ramfilt.padic_core import (
    INFINITY,
    _fp_mod,
    field_from_json,
    format_element,
    is_irreducible_mod_p,
    leading_residue,
    make_field,
    unit_inverse,
    valuation,
)

from oracles import FIELD_DATA, all_elements, all_units, field, random_element, rng, sympy_product


def test_make_field_q3():
    K = field("Q3")
    assert (K.e, K.f, K.n, K.q) == (1, 1, 1, 3)
    assert K.crit == Fraction(3, 2) and K.crit_int is None
    assert K.I == (1,)
    assert not K.zeta_flag


def test_make_field_q2():
    K = field("Q2")
    assert K.crit == 2 and K.crit_int == 2
    assert K.I == (1,)
    assert K.zeta_flag
    # -1 is a root of x^2 - 1 distinct from 1
    assert (K.element(-1) ** 2) == 1 and K.element(-1) != 1


def test_make_field_q3_zeta3():
    K = field("Q3z")
    assert (K.e, K.f) == (2, 1)
    assert K.crit == 3 and K.I == (1, 2)
    assert K.zeta_flag
    zeta = 1 + K.pi()
    assert zeta**3 == 1 and zeta != 1


def test_default_precision():
    K = make_field(3, [-1, 1], [[3], [3], [1]])
    # ceil((ceil(crit) + e + 2) / e) + 1 with crit = 3, e = 2
    assert K.M == 5 and K.N == 10
    assert K.N >= 3 + 2 + 2


@pytest.mark.parametrize("name", list(FIELD_DATA))
def test_field_invariants(name):
    K = field(name)
    assert len(K.I) == K.e
    assert K.N >= -(-K.crit.numerator // K.crit.denominator) + K.e + 2


def test_make_field_errors():
    with pytest.raises(NotPrime):
        make_field(4, [-1, 1], [[-2], [1]])
    with pytest.raises(NotIrreducible):
        make_field(2, [1, 0, 1], [[-2], [1]])  # y^2 + 1 = (y + 1)^2 mod 2
    with pytest.raises(NotEisenstein):
        make_field(3, [-1, 1], [[-9], [1]])
    with pytest.raises(NotEisenstein):
        make_field(3, [-1, 1], [[3], [1], [1]])
    with pytest.raises(PrecisionTooSmall):
        make_field(2, [-1, 1], [[-2], [1]], 3)


def test_field_from_json():
    K = field_from_json({"p": 2, "g": [-1, 1], "E": [[-2], [1]], "precision": 8})
    assert K == field("Q2")


def _brute_irreducible(g, p):
    f = len(g) - 1
    for d in range(1, f // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            h = list(tail) + [1]
            if not _fp_mod(g, h, p):
                return False
    return True


@pytest.mark.parametrize("p,f", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_matches_trial_division(p, f):
    for tail in itertools.product(range(p), repeat=f):
        g = list(tail) + [1]
        assert is_irreducible_mod_p(g, p) == _brute_irreducible(g, p), g


def test_arithmetic_examples():
    Q2 = field("Q2")
    assert Q2.element(3) * Q2.element(3) == 9
    K = field("Q3z")
    pi = K.pi()
    assert pi * pi == -3 * pi - 3
    inv = unit_inverse(Q2.element(3))
    assert inv.coeffs == ((171,),)
    assert (3 * 171) % 256 == 1
    with pytest.raises(NonUnit):
        Q2.element(2).inverse()


@pytest.mark.parametrize("name", ["Q3z", "Q4", "Q2s"])
def test_ring_laws_against_sympy(name):
    K = field(name)
    r = rng(7)
    for _ in range(15):
        a, b, c = (random_element(K, r) for _ in range(3))
        assert (a * b).coeffs == sympy_product(K, a, b)
        assert ((a * b) * c).coeffs == (a * (b * c)).coeffs
        assert (a * (b + c)).coeffs == (a * b + a * c).coeffs


def test_valuation_examples():
    Q2, K = field("Q2"), field("Q3z")
    assert valuation(K.pi()) == 1
    assert valuation(K.element(3)) == 2
    assert valuation(Q2.element(12)) == 2
    assert valuation(Q2.zero()) == INFINITY


@pytest.mark.parametrize("name", list(FIELD_DATA))
def test_valuation_properties(name):
    K = field(name)
    assert valuation(K.element(K.p)) == K.e
    for i in range(K.N):
        assert valuation(K.pi_power(i)) == i
    r = rng(3)
    for _ in range(30):
        a = random_element(K, r) * K.pi_power(r.randrange(3))
        b = random_element(K, r) * K.pi_power(r.randrange(3))
        va, vb = a.valuation(), b.valuation()
        if va + vb < K.N:
            assert (a * b).valuation() == va + vb


def test_residue_examples():
    Q2, K = field("Q2"), field("Q3z")
    assert Q2.one().residue() == (1,)
    assert leading_residue(Q2.element(12)) == (2, (1,))
    assert leading_residue(K.element(3)) == (2, (2,))
    # exhaustive: the unique u in F_3 with 3 = u pi^2 mod pi^3
    hits = [u for u in range(1, 3) if (K.element(3) - u * K.pi_power(2)).valuation() >= 3]
    assert hits == [2]
    with pytest.raises(AtPrecisionZero):
        leading_residue(K.zero())


def test_inverse_on_every_unit():
    for name, L in [("Q2", 8), ("Q3", 6), ("Q3z", 5)]:
        K = field(name)
        for x in all_units(K, L):
            assert (x * x.inverse()).coeffs == K.one().coeffs


def test_digits_are_canonical():
    K = field("Q3z")
    keys = {x.digits(4) for x in all_elements(K, 4)}
    assert len(keys) == 3**4
    r = rng(1)
    for _ in range(20):
        x = random_element(K, r)
        y = x + random_element(K, r) * K.pi_power(4)
        assert x.digits(4) == y.digits(4)


def test_shift_loses_one_digit_per_step():
    K = field("Q3z")
    x = K.element(3) * (1 + K.pi())
    y = x.shift(2)
    assert y.prec == K.N - 2
    assert (y * K.pi_power(2) - x).valuation() >= K.N - 2


def test_format_element():
    assert format_element(field("Q2").element(5)) == "5"
    assert format_element(field("Q3z").pi()) == "pi"
    assert "pi" in format_element(field("Q3z").element([1, 1]))


def test_zeta_flag_requires_divisibility():
    for name in FIELD_DATA:
        K = field(name)
        if K.zeta_flag:
            assert K.e % (K.p - 1) == 0
