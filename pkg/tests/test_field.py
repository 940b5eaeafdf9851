import random
from fractions import Fraction

import pytest

from liesub.errors import NotAnEmbedding
from liesub.field import NumberField, QQ, embed, rational_sqrt


@pytest.fixture(scope="module")
def sqrt_m3():
    return NumberField([3, 0, 1])


def test_rational_arithmetic_is_exact():
    assert Fraction(1, 3) + Fraction(1, 6) == Fraction(1, 2)


def test_generator_squares_to_minus_three(sqrt_m3):
    t = sqrt_m3.generator
    assert t * t == -3


def test_inverse_of_one_plus_t(sqrt_m3):
    t = sqrt_m3.generator
    x = sqrt_m3.one + t
    inv = sqrt_m3.one / x
    # 1/(1+t) = (1-t)/4, checked by multiplying out
    assert inv == sqrt_m3.element([Fraction(1, 4), Fraction(-1, 4)])
    assert x * inv == sqrt_m3.one


def test_monic_and_degree_validation():
    with pytest.raises(ValueError):
        NumberField([1])
    with pytest.raises(ValueError):
        NumberField([3, 0, 2])
    with pytest.raises(ValueError):
        NumberField([-4, 0, 1])   # t^2 - 4 has a rational root


def test_field_axioms_on_random_elements(sqrt_m3):
    rng = random.Random(7)

    def rnd():
        return sqrt_m3.element(
            [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(2)]
        )

    for _ in range(200):
        a, b, c = rnd(), rnd(), rnd()
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if a:
            assert a * (sqrt_m3.one / a) == sqrt_m3.one
        if b:
            assert (a * b) / b == a


def test_division_by_zero(sqrt_m3):
    with pytest.raises(ZeroDivisionError):
        sqrt_m3.one / sqrt_m3.zero


def test_embed_rationals_into_extension(sqrt_m3):
    assert embed(Fraction(5), QQ, sqrt_m3) == sqrt_m3.from_rational(5)


def test_embed_conjugation(sqrt_m3):
    t = sqrt_m3.generator
    x = sqrt_m3.one + t
    assert embed(x, sqrt_m3, sqrt_m3, -t) == sqrt_m3.one - t


def test_embed_rejects_bad_image(sqrt_m3):
    with pytest.raises(NotAnEmbedding):
        embed(sqrt_m3.generator, sqrt_m3, sqrt_m3, sqrt_m3.one)


def test_power_basis_reduction_degree_three():
    F = NumberField([2, 0, 0, 1])   # t^3 + 2
    t = F.generator
    assert t * t * t == -2
    x = F.element([1, 2, -1])
    assert x * (F.one / x) == F.one


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None
