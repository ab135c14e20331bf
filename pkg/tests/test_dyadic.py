import pytest

from satscheme.dyadic import Dyadic


def test_canonical_form():
    assert Dyadic(4, 2) == Dyadic(1, 0)
    assert Dyadic(6, 3) == Dyadic(3, 2)
    assert Dyadic(0, 7) == Dyadic(0, 0)
    # even integers stay at exponent 0
    d = Dyadic(2, 0)
    assert (d.num, d.exp) == (2, 0)


def test_rejects_negative_exponent():
    with pytest.raises(ValueError):
        Dyadic(1, -1)


def test_arithmetic():
    half = Dyadic.half_pow(1)
    eighth = Dyadic.half_pow(3)
    assert half + eighth == Dyadic(5, 3)
    assert half - eighth == Dyadic(3, 3)
    assert half * eighth == Dyadic(1, 4)
    assert -half == Dyadic(-1, 1)
    assert abs(Dyadic(-3, 2)) == Dyadic(3, 2)
    assert half + 1 == Dyadic(3, 1)
    assert 1 - half == half


def test_comparisons():
    assert Dyadic(1, 1) < Dyadic(3, 2)
    assert Dyadic(3, 2) < 1
    assert Dyadic(-1, 3) < Dyadic(0)
    assert Dyadic(5, 0) == 5
    assert max(Dyadic(1, 2), Dyadic(1, 3)) == Dyadic(1, 2)


def test_scaling_and_conversion():
    v = Dyadic(3, 3)
    assert v.scaled(3) == 3
    assert v.scaled(5) == 12
    with pytest.raises(ValueError):
        v.scaled(2)
    assert float(Dyadic(3, 1)) == 1.5
    assert Dyadic(7).as_int() == 7
    with pytest.raises(ValueError):
        Dyadic(1, 1).as_int()
    assert str(Dyadic(-3, 3)) == "-3/8"
    assert str(Dyadic(4)) == "4"


def test_exactness_against_fractions():
    from fractions import Fraction
    import random

    rng = random.Random(7)
    for _ in range(300):
        a = Dyadic(rng.randint(-50, 50), rng.randint(0, 6))
        b = Dyadic(rng.randint(-50, 50), rng.randint(0, 6))
        fa, fb = Fraction(a.num, 1 << a.exp), Fraction(b.num, 1 << b.exp)
        for got, want in (
            (a + b, fa + fb),
            (a - b, fa - fb),
            (a * b, fa * fb),
        ):
            assert Fraction(got.num, 1 << got.exp) == want
        assert (a < b) == (fa < fb)
