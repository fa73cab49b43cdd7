import math
from fractions import Fraction

import pytest

from padicgeom import NormValue, parse_norm, valuation
from conftest import nv, ZERO, ONE, rand_scalar


def test_valuation_examples():
    assert valuation(4, 2) == 2
    assert valuation(0, 3) == math.inf
    assert valuation(Fraction(6, 5), 3) == 1
    assert valuation(Fraction(1, 2), 2) == -1


def test_scalar_norms():
    assert NormValue.of_scalar(4, 2) == nv(-2)
    assert NormValue.of_scalar(Fraction(1, 2), 2) == nv(1)
    assert NormValue.of_scalar(7, 5) == ONE
    assert NormValue.of_scalar(0, 5) == ZERO


def test_value_group_arithmetic():
    assert nv(-1) * nv("-1/2") == nv("-3/2")
    assert nv("-1/2") > nv(-1)
    assert nv(-1) ** 3 == nv(-3)
    assert ZERO < nv(-100)
    assert (nv(2) / nv("1/2")) == nv("3/2")
    with pytest.raises(ZeroDivisionError):
        nv(0) / ZERO


def test_ultrametric_laws(rng):
    p = 3
    for _ in range(200):
        a = rand_scalar(rng, p)
        b = rand_scalar(rng, p)
        na, nb = NormValue.of_scalar(a, p), NormValue.of_scalar(b, p)
        assert NormValue.of_scalar(a * b, p) == na * nb
        ns = NormValue.of_scalar(a + b, p)
        assert ns <= max(na, nb)
        if na != nb:
            assert ns == max(na, nb)


def test_order_respects_multiplication(rng):
    for _ in range(100):
        a = nv(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        b = nv(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        c = nv(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
        if a < b:
            assert a * c < b * c


def test_literals():
    assert parse_norm("2^-3/2", 2) == nv("-3/2")
    assert parse_norm("0", 7) == ZERO
    assert nv("-3/2").text(2) == "2^-3/2"
    assert nv(2).text(3) == "3^2"
    assert ZERO.text(5) == "0"
    with pytest.raises(ValueError):
        parse_norm("3^1", 2)
    with pytest.raises(ValueError):
        parse_norm("junk", 2)


def test_compare_against_rational_constants():
    # p^(-3/2) vs 1/2 at p = 2: 2^(-3/2) < 2^(-1)
    assert nv("-3/2").compare_fraction(Fraction(1, 2), 2) == -1
    assert nv(-1).compare_fraction(Fraction(1, 2), 2) == 0
    assert nv("-1/2").compare_fraction(Fraction(1, 2), 2) == 1
    assert ZERO.compare_fraction(Fraction(1, 1000), 2) == -1
