"""Exact Gowers-norm values through every route, against brute force and
against each other.
"""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from gowersim.boolfn import (
    BooleanFunction,
    bent_quadratic,
    constant,
    from_anf_string,
    linear,
    random_function,
)
from gowersim.dyadic import DyadicRational
from gowersim.errors import CapacityError
from gowersim.gowers import (
    u2_autocorrelation,
    u2_spectral,
    uk_definition,
    uk_via_derivatives,
)
from gowersim.spectral import walsh


def brute_uk_pow(f, k):
    """Average of the sign product over all k-dimensional parallelepipeds."""
    size = 1 << f.n
    sign = [1 - 2 * f.value(x) for x in range(size)]
    total = 0
    for point in product(range(size), repeat=k + 1):
        x, dirs = point[0], point[1:]
        prod = 1
        for mask in range(1 << k):
            y = x
            for j in range(k):
                if (mask >> j) & 1:
                    y ^= dirs[j]
            prod *= sign[y]
        total += prod
    return Fraction(total, size ** (k + 1))


def test_u2_known_values():
    gv = u2_spectral(from_anf_string("x1*x2", 2))
    assert gv.k == 2
    assert gv.pow_value == DyadicRational(1, 2)
    assert gv.norm == pytest.approx(2**-0.5)

    assert u2_spectral(bent_quadratic(4)).pow_value == DyadicRational(1, 4)
    assert u2_spectral(bent_quadratic(6)).pow_value == DyadicRational(1, 6)

    for u in (0, 0b1, 0b101):
        assert u2_spectral(linear(3, u)).pow_value == DyadicRational(1, 0)
    assert u2_spectral(constant(3, 1)).pow_value == DyadicRational(1, 0)


def test_u3_known_value():
    f = from_anf_string("x1*x2*x3", 3)
    assert uk_definition(f, 3).pow_value == DyadicRational(11, 5)
    assert uk_via_derivatives(f, 3).pow_value == DyadicRational(11, 5)
    assert uk_definition(f, 3).norm == pytest.approx((11 / 32) ** (1 / 8))


def test_uk_definition_against_brute_force():
    rng = np.random.default_rng(12021)
    for n, k in ((2, 1), (2, 2), (2, 3), (3, 2)):
        for _ in range(4):
            f = random_function(n, int(rng.integers(0, 2**32)))
            assert uk_definition(f, k).pow_value.as_fraction() == brute_uk_pow(f, k)


def test_u1_is_squared_bias():
    rng = np.random.default_rng(3)
    for n in (1, 2, 3, 4):
        f = random_function(n, int(rng.integers(0, 2**32)))
        w0 = int(walsh(f)[0])
        assert uk_definition(f, 1).pow_value.as_fraction() == Fraction(w0, 1 << n) ** 2


def test_route_agreement_u2():
    rng = np.random.default_rng(60)
    for f in (BooleanFunction.from_packed(2, bits) for bits in range(16)):
        assert uk_definition(f, 2).pow_value == u2_spectral(f).pow_value
        assert u2_autocorrelation(f).pow_value == u2_spectral(f).pow_value
    for n in (3, 4, 5, 6):
        for _ in range(10):
            f = random_function(n, int(rng.integers(0, 2**32)))
            spectral = u2_spectral(f).pow_value
            assert u2_autocorrelation(f).pow_value == spectral
            assert uk_definition(f, 2).pow_value == spectral


def test_route_agreement_u3_u4():
    rng = np.random.default_rng(61)
    for n in (2, 3):
        for _ in range(6):
            f = random_function(n, int(rng.integers(0, 2**32)))
            assert uk_definition(f, 3).pow_value == uk_via_derivatives(f, 3).pow_value
    for _ in range(3):
        f = random_function(2, int(rng.integers(0, 2**32)))
        assert uk_definition(f, 4).pow_value == uk_via_derivatives(f, 4).pow_value


def test_norm_one_exactly_for_affine():
    for n in (2, 3):
        for bits in range(1 << (1 << n)):
            f = BooleanFunction.from_packed(n, bits)
            is_affine = f.degree() <= 1
            assert (u2_spectral(f).pow_value == DyadicRational(1, 0)) == is_affine


def test_nonlinearity_bounds_the_norm():
    # pow_value <= ((2^n - 2 nl)/2^n)^2, exactly, via the spectral radius
    from gowersim.spectral import nonlinearity

    rng = np.random.default_rng(62)
    for n in (2, 3, 4, 5):
        for _ in range(10):
            f = random_function(n, int(rng.integers(0, 2**32)))
            cap = DyadicRational(((1 << n) - 2 * nonlinearity(f)) ** 2, 2 * n)
            assert u2_spectral(f).pow_value <= cap


def test_max_walsh_coefficient_lower_bound():
    rng = np.random.default_rng(63)
    for n in (2, 3, 4):
        for _ in range(10):
            f = random_function(n, int(rng.integers(0, 2**32)))
            floor = DyadicRational(int(walsh(f).max_abs) ** 4, 4 * n)
            assert u2_spectral(f).pow_value >= floor


def test_derivative_route_asymmetric_to_definition_capacity():
    # the two routes trade register width differently, so their guards differ
    with pytest.raises(CapacityError):
        uk_definition(constant(9, 0), 2)  # (k+1)n = 27
    assert uk_via_derivatives(constant(9, 0), 3).pow_value == DyadicRational(1, 0)
    with pytest.raises(CapacityError):
        uk_via_derivatives(constant(13, 0), 5)  # (k-2)n = 39


def test_argument_validation():
    f = constant(2, 0)
    with pytest.raises(ValueError):
        uk_definition(f, 0)
    with pytest.raises(ValueError):
        uk_via_derivatives(f, 2)
    with pytest.raises(CapacityError):
        u2_autocorrelation(constant(13, 0))


def test_monotone_in_k():
    # ||f||_{U_k} <= ||f||_{U_{k+1}} for the norms themselves
    rng = np.random.default_rng(64)
    for _ in range(6):
        f = random_function(3, int(rng.integers(0, 2**32)))
        norms = [
            uk_definition(f, 1).norm,
            uk_definition(f, 2).norm,
            uk_definition(f, 3).norm,
        ]
        assert norms[0] <= norms[1] + 1e-12
        assert norms[1] <= norms[2] + 1e-12
