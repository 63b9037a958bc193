import random

import pytest

from hopfgal.errors import DivisionByZero, FieldMismatch, ZeroPolynomial
from hopfgal.exactfield import Field, Poly, field_arith, splitting_extension

F3 = Field(3)
F9 = Field(3, 2)
F5 = Field(5)


def test_prime_field_arithmetic():
    two = F3.scalar(2)
    assert two * two == F3.one
    assert F3.one.inverse() == F3.one
    assert field_arith(two, two, "mul") == F3.one


def test_deterministic_modulus():
    assert F9.modulus == (1, 0, 1)
    assert Field(3, 2).modulus == Field(3, 2).modulus
    assert Field(5, 3).modulus == Field(5, 3).modulus


def test_extension_multiplication():
    t = F9.gen
    # t^2 = -1 mod t^2+1
    assert t * t == F9.scalar(2)


def test_division_and_errors():
    with pytest.raises(DivisionByZero):
        F3.one / F3.zero
    with pytest.raises(FieldMismatch):
        F3.one + F5.one


def test_scalar_equality_and_serialization():
    assert F9.scalar([1, 2]).to_json() == [1, 2]
    assert F9.scalar(4) == F9.scalar(1)
    assert Field.from_json({"p": 3, "k": 2, "modulus": [1, 0, 1]}) == F9


@pytest.mark.parametrize("field", [F3, F5, F9, Field(5, 2)])
def test_inverse_and_frobenius_additivity(field):
    rng = random.Random(7)
    for _ in range(100):
        a = field.random_scalar(rng)
        b = field.random_scalar(rng)
        if a:
            assert a * a.inverse() == field.one
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()


def test_factor_fermat():
    f = Poly.from_ints(F3, [0, -1, 0, 1])  # T^3 - T
    fac = f.factor()
    assert [(g.coeffs, m) for g, m in fac] == [
        ((F3.zero, F3.one), 1),
        ((F3.scalar(1), F3.one), 1),  # T + 1 = T - 2
        ((F3.scalar(2), F3.one), 1),  # T + 2 = T - 1
    ]


def test_irreducibles():
    assert Poly.from_ints(F3, [1, 0, 1]).is_irreducible()  # T^2+1
    assert Poly.from_ints(F3, [-1, -1, 0, 1]).is_irreducible()  # T^3-T-1
    assert not Poly.from_ints(F3, [0, -1, 0, 1]).is_irreducible()


def test_factor_zero_raises():
    with pytest.raises(ZeroPolynomial):
        Poly(F3, []).factor()
    with pytest.raises(ZeroPolynomial):
        splitting_extension(Poly(F3, []))


@pytest.mark.parametrize("field,deg", [(F3, 8), (F5, 8)])
def test_factor_remultiplies(field, deg):
    rng = random.Random(11)
    for _ in range(100):
        coeffs = [field.random_scalar(rng) for _ in range(rng.randrange(1, deg + 1))]
        f = Poly(field, coeffs)
        if f.degree < 1:
            continue
        prod = Poly(field, [f.coeffs[-1]])
        for g, m in f.factor():
            assert g.coeffs[-1] == field.one
            for _ in range(m):
                prod = prod * g
        assert prod == f


def test_splitting_extension_degrees():
    assert splitting_extension(Poly.from_ints(F3, [1, 0, 1])) == F9
    assert splitting_extension(Poly.from_ints(F3, [0, -1, 0, 1])) == F3
    f = Poly.from_ints(F3, [1, 0, 1]) * Poly.from_ints(F3, [-1, -1, 0, 1])
    assert splitting_extension(f).k == 6


@pytest.mark.parametrize("ints", [[1, 0, 1], [-1, -1, 0, 1], [2, 1, 0, 0, 1]])
def test_splitting_extension_actually_splits(ints):
    f = Poly.from_ints(F3, ints)
    big = splitting_extension(f)
    fe = f.map_field(big)
    assert all(g.degree == 1 for g, _ in fe.factor())


def test_embedding_is_a_field_map():
    rng = random.Random(3)
    F27 = Field(3, 3)
    F729 = Field(3, 6)
    for small, big in [(F3, F9), (F9, F729), (F27, F729)]:
        for _ in range(50):
            a = small.random_scalar(rng)
            b = small.random_scalar(rng)
            ea, eb = small.embed(a, big), small.embed(b, big)
            assert small.embed(a + b, big) == ea + eb
            assert small.embed(a * b, big) == ea * eb
        assert small.embed(small.one, big) == big.one


def test_element_enumeration_order():
    elems = list(F9.elements())
    assert len(elems) == 9
    assert elems[0] == F9.zero
    assert elems[1].coeffs == (1, 0)
    assert elems[3].coeffs == (0, 1)


def test_poly_degree_sentinel():
    assert Poly(F3, []).degree == -1
    assert Poly.from_ints(F3, [0, 0, 2, 0]).degree == 2
