import random
from fractions import Fraction

import pytest

from hamop.scalars import GaussianRational, format_rational, rational_sqrt


def random_gaussian(rng):
    return GaussianRational(
        Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
        Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
    )


def test_field_axioms_randomized():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (random_gaussian(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        if a:
            assert a * (1 / a) == GaussianRational.of(1)
        assert a + (-a) == GaussianRational.of(0)


def test_division_and_conjugate():
    z = GaussianRational.of(3, 4)
    w = GaussianRational.of(1, -2)
    assert (z / w) * w == z
    assert z * z.conjugate() == GaussianRational.of(z.norm2())
    with pytest.raises(ZeroDivisionError):
        z / GaussianRational.of(0)


def test_comparison_with_rationals():
    assert GaussianRational.of(Fraction(3, 2)) == Fraction(3, 2)
    assert GaussianRational.of(1, 1) != 1
    assert bool(GaussianRational.of(0, 0)) is False


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-4)) is None
    assert rational_sqrt(Fraction(0)) == 0


def test_format():
    assert format_rational(Fraction(-4)) == "-4/1"
    assert str(GaussianRational.of(1, -1)) == "1/1-1/1i"
    assert str(GaussianRational.of(Fraction(1, 2))) == "1/2"
