"""Walsh spectra, nonlinearity, distances, autocorrelation, convolution."""

from fractions import Fraction

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
from gowersim.spectral import (
    autocorrelation,
    convolve,
    dist_to_linear,
    fwht_inplace,
    nonlinearity,
    walsh,
)


def brute_walsh(f):
    n, size = f.n, 1 << f.n
    out = []
    for u in range(size):
        total = 0
        for x in range(size):
            total += (-1) ** (f.value(x) ^ (bin(u & x).count("1") & 1))
        out.append(total)
    return out


def test_walsh_matches_brute_force():
    rng = np.random.default_rng(314)
    for n in (1, 2, 3):
        for _ in range(8):
            f = random_function(n, int(rng.integers(0, 2**32)))
            assert list(walsh(f).w) == brute_walsh(f)


def test_walsh_known_values():
    spec = walsh(from_anf_string("x1*x2", 2))
    assert list(spec.w) == [2, 2, 2, -2]
    assert spec.max_abs == 2 and spec.max_signed == 2
    assert spec[0b11] == -2

    assert list(walsh(linear(2, 0b01)).w) == [0, 4, 0, 0]
    assert list(walsh(constant(2, 1)).w) == [-4, 0, 0, 0]


def test_parseval():
    rng = np.random.default_rng(999)
    for n in range(1, 11):
        f = random_function(n, int(rng.integers(0, 2**32)))
        w = walsh(f).w.astype(object)
        assert int(np.sum(w * w)) == 1 << (2 * n)


def test_fwht_self_inverse():
    rng = np.random.default_rng(55)
    for n in (1, 4, 7):
        a = rng.integers(-50, 50, size=1 << n).astype(np.int64)
        b = a.copy()
        fwht_inplace(b)
        fwht_inplace(b)
        assert np.array_equal(b, a << n)


def test_nonlinearity():
    assert nonlinearity(linear(3, 0b110)) == 0
    assert nonlinearity(from_anf_string("x1*x2", 2)) == 1
    assert nonlinearity(bent_quadratic(4)) == 6  # 2^(n-1) - 2^(n/2-1)
    assert nonlinearity(bent_quadratic(6)) == 28


def test_nonlinearity_is_distance_to_nearest_affine():
    # cross-check against explicit enumeration of all affine functions
    rng = np.random.default_rng(1717)
    for n in (2, 3, 4):
        f = random_function(n, int(rng.integers(0, 2**32)))
        best = 1 << n
        for u in range(1 << n):
            for c in (0, 1):
                g = linear(n, u) if c == 0 else BooleanFunction(n, 1 - linear(n, u).table)
                best = min(best, int(np.sum(f.table != g.table)))
        assert nonlinearity(f) == best


def test_dist_to_linear():
    eps, argmin = dist_to_linear(linear(3, 0b011))
    assert eps == DyadicRational(0, 0)
    assert argmin == (0, 1, 1)

    eps, argmin = dist_to_linear(from_anf_string("x1*x2", 2))
    assert eps == DyadicRational(1, 2)
    assert argmin == (0, 0)  # ties broken toward the smallest index

    # the complement of a linear function is affine but maximally far from linear
    comp = BooleanFunction(2, 1 - linear(2, 0b10).table)
    eps, argmin = dist_to_linear(comp)
    assert eps == DyadicRational(1, 1)
    assert argmin == (0, 0)


def test_dist_to_linear_matches_enumeration():
    rng = np.random.default_rng(2024)
    for n in (2, 3):
        for _ in range(20):
            f = random_function(n, int(rng.integers(0, 2**32)))
            dists = [int(np.sum(f.table != linear(n, u).table)) for u in range(1 << n)]
            eps, argmin = dist_to_linear(f)
            assert eps.as_fraction() == Fraction(min(dists), 1 << n)
            packed = int("".join(map(str, argmin)), 2)
            assert dists[packed] == min(dists)
            assert all(dists[u] > dists[packed] for u in range(packed))


def test_autocorrelation():
    f = from_anf_string("x1*x2", 2)
    assert autocorrelation(f, 0) == DyadicRational(1, 0)
    assert autocorrelation(f, 0b11) == DyadicRational(0, 0)
    b = bent_quadratic(4)
    for a in range(1, 16):
        assert autocorrelation(b, a) == DyadicRational(0, 0)


def test_autocorrelation_brute():
    rng = np.random.default_rng(31337)
    f = random_function(3, int(rng.integers(0, 2**32)))
    for a in range(8):
        expected = Fraction(
            sum((-1) ** (f.value(x) ^ f.value(x ^ a)) for x in range(8)), 8
        )
        assert autocorrelation(f, a).as_fraction() == expected


def test_convolve():
    rng = np.random.default_rng(808)
    for n in (1, 2, 3, 4):
        f = random_function(n, int(rng.integers(0, 2**32)))
        g = random_function(n, int(rng.integers(0, 2**32)))
        conv = convolve(f, g)
        size = 1 << n
        for a in range(size):
            expected = Fraction(
                sum(
                    (-1) ** (f.value(x) ^ g.value(x ^ a)) for x in range(size)
                ),
                size,
            )
            assert conv[a].as_fraction() == expected


def test_convolution_theorem():
    # FWHT(2^n * (f conv g)) equals the pointwise product of the two spectra,
    # checked as an exact integer identity
    rng = np.random.default_rng(414)
    for n in range(1, 7):
        f = random_function(n, int(rng.integers(0, 2**32)))
        g = random_function(n, int(rng.integers(0, 2**32)))
        conv = convolve(f, g)
        # every entry of 2^n * conv is an integer because log2_den <= n
        for c in conv:
            assert c.log2_den <= n
        scaled = np.array([int(c.as_fraction() * (1 << n)) for c in conv], dtype=object)
        fwht_inplace(scaled)
        assert np.array_equal(scaled, walsh(f).w.astype(object) * walsh(g).w.astype(object))


def test_convolve_errors():
    with pytest.raises(ValueError):
        convolve(constant(2, 0), constant(3, 0))
    with pytest.raises(CapacityError):
        convolve(constant(13, 0), constant(13, 0))


def test_autocorrelation_is_self_convolution():
    f = random_function(4, 202)
    conv = convolve(f, f)
    for a in range(16):
        assert conv[a] == autocorrelation(f, a)
