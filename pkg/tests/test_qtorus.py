"""Quantum torus arithmetic, normalized products, and right division."""

import random

import pytest

from qcfrob.coeff import CycloInt, IntLaurent, Point, RatFunc
from qcfrob.qtorus import (
    CycloRing,
    LaurentRing,
    NonExactDivision,
    NotCommutationCompatible,
    PrimeField,
    RatRing,
    SkewForm,
    TorusElement,
    exact_right_divide,
    normal_product,
)

LR = LaurentRing()


def rand_skew(rng, r, bound=3):
    m = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            m[i][j] = rng.randrange(-bound, bound + 1)
            m[j][i] = -m[i][j]
    return SkewForm(m)


def rand_elt(rng, form, nterms=3, span=2):
    terms = {}
    for _ in range(rng.randrange(1, nterms + 1)):
        a = tuple(rng.randrange(-span, span + 1) for _ in range(form.r))
        coeff = IntLaurent({rng.randrange(-2, 3): rng.choice([1, -1, 2])})
        terms[a] = coeff
    return TorusElement(LR, form, terms)


def test_skew_form_validation():
    with pytest.raises(ValueError):
        SkewForm([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        SkewForm([[1, 2], [-2, 1]])
    with pytest.raises(ValueError):
        SkewForm([[0, 1]])


def test_monomial_multiplication_rule():
    form = SkewForm([[0, 3], [-3, 0]])
    x0 = TorusElement.monomial(LR, form, (1, 0))
    x1 = TorusElement.monomial(LR, form, (0, 1))
    prod = x0 * x1
    assert prod == TorusElement.monomial(LR, form, (1, 1), IntLaurent.v_power(3))
    # commutation x0 x1 = v^{2 l_01} x1 x0
    assert x0 * x1 == (x1 * x0).scale(IntLaurent.v_power(6))


def test_associativity_and_distributivity_random():
    rng = random.Random(7)
    for _ in range(60):
        form = rand_skew(rng, 3)
        a, b, c = (rand_elt(rng, form) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_monomial_inverse():
    rng = random.Random(19)
    for _ in range(30):
        form = rand_skew(rng, 3)
        a = tuple(rng.randrange(-2, 3) for _ in range(3))
        m = TorusElement.monomial(LR, form, a, IntLaurent.v_power(rng.randrange(-3, 4)))
        assert m * m.inv_monomial() == TorusElement.one(LR, form)
        assert m ** -2 == (m.inv_monomial()) ** 2
    two = TorusElement.monomial(LR, SkewForm([[0]]), (1,), IntLaurent.from_int(2))
    with pytest.raises(Exception):
        two.inv_monomial()


def test_normal_product_reproduces_monomials():
    # v^{twist(a)} x_1^{a_1} ... x_r^{a_r} is exactly the basis monomial x^a
    rng = random.Random(3)
    for _ in range(40):
        form = rand_skew(rng, 4)
        gens = [TorusElement.monomial(LR, form, tuple(int(i == k) for i in range(4)))
                for k in range(4)]
        a = tuple(rng.randrange(-3, 4) for _ in range(4))
        assert normal_product(gens, form, a) == TorusElement.monomial(LR, form, a)


def test_normal_product_commutation_check():
    form = SkewForm([[0, 1], [-1, 0]])
    wrong = SkewForm([[0, 2], [-2, 0]])
    gens = [TorusElement.monomial(LR, form, (1, 0)),
            TorusElement.monomial(LR, form, (0, 1))]
    normal_product(gens, form, (1, 1), check=True)
    with pytest.raises(NotCommutationCompatible):
        normal_product(gens, wrong, (1, 1), check=True)


def test_right_division_round_trip():
    rng = random.Random(41)
    done = 0
    while done < 120:
        form = rand_skew(rng, 3)
        h, f = rand_elt(rng, form), rand_elt(rng, form)
        if f.is_zero:
            continue
        g = h * f
        assert exact_right_divide(g, f) == h
        done += 1


def test_division_by_monomial_always_succeeds():
    # monomials are units, so x^{e0} divides everything
    form = SkewForm([[0, 1], [-1, 0]])
    g = TorusElement.monomial(LR, form, (1, 0)) + TorusElement.monomial(LR, form, (0, 1))
    f = TorusElement.monomial(LR, form, (1, 0))
    h = exact_right_divide(g, f)
    assert h * f == g
    assert set(h.terms) == {(0, 0), (-1, 1)}


def test_division_failures():
    form = SkewForm([[0, 1], [-1, 0]])
    one = TorusElement.one(LR, form)
    f = one + TorusElement.monomial(LR, form, (1, 0))
    with pytest.raises(NonExactDivision):
        exact_right_divide(one, f)
    with pytest.raises(NonExactDivision):
        exact_right_divide(one.scale(IntLaurent.from_int(2)),
                           one.scale(IntLaurent.from_int(3)))
    with pytest.raises(ZeroDivisionError):
        exact_right_divide(one, TorusElement.zero(LR, form))


def test_division_over_rational_field():
    # over the fraction field, coefficient obstructions disappear
    rr = RatRing()
    form = SkewForm([[0, 1], [-1, 0]])
    one = TorusElement.one(rr, form)
    g = one.scale(RatFunc.from_int(2))
    f = one.scale(RatFunc.from_int(3))
    h = exact_right_divide(g, f)
    assert h * f == g
    # but a genuinely non-invertible divisor still fails
    with pytest.raises(NonExactDivision):
        exact_right_divide(one, one + TorusElement.monomial(rr, form, (1, 0)))


def test_mixed_torus_arithmetic_rejected():
    f1 = SkewForm([[0, 1], [-1, 0]])
    f2 = SkewForm([[0, 2], [-2, 0]])
    a = TorusElement.one(LR, f1)
    b = TorusElement.one(LR, f2)
    with pytest.raises(ValueError):
        a * b
    with pytest.raises(ValueError):
        a + b


def test_cyclo_ring_v_power():
    r3 = CycloRing(3, Point.EPS)
    assert r3.v_power(2) == CycloInt.eps_power(3, 1)
    assert r3.v_power(1) * r3.v_power(1) == CycloInt.eps_power(3, 1)
    assert CycloRing(5, Point.ONE).v_power(7) == CycloInt.from_int(5, 1)
    with pytest.raises(ValueError):
        CycloRing(4, Point.EPS)


def test_prime_field_basics():
    fp = PrimeField(5)
    assert fp.from_int(12) == 2
    assert fp.div(3, 4) == (3 * 4) % 5  # 4^-1 = 4 mod 5
    assert fp.v_power(9) == 1
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ZeroDivisionError):
        fp.div(1, 0)


def test_power_small_cases():
    form = SkewForm([[0, 1], [-1, 0]])
    x = TorusElement.monomial(LR, form, (1, 0)) + TorusElement.monomial(LR, form, (0, 1))
    assert x ** 0 == TorusElement.one(LR, form)
    assert x ** 1 == x
    assert x ** 3 == x * x * x
    sq = x * x
    assert sq.coeff((1, 1)) == IntLaurent({1: 1, -1: 1})
