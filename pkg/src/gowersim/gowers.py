"""Exact Gowers uniformity norms by independent routes.

For k >= 1 the U_k norm of the character form f is

    ||f||_{U_k} = ( 2^(-(k+1)n) sum_{x, d1..dk} prod_{S subset [k]}
                    f(x + sum_{i in S} di) )^(2^-k),

and the routes implemented here are:

* uk_definition   -- the literal (k+1)-fold sum (any k >= 1),
* u2_spectral     -- sum_u fhat(u)^4 for k = 2,
* u2_autocorrelation -- 2^-n sum_a (f*f)(a)^2 for k = 2,
* uk_via_derivatives -- 2^(-(k-2)n) sum over (k-2)-tuples of directions of
  ||Delta_dirs f||_{U_2}^4, for k >= 3.

All routes return the same exact dyadic rational pow_value = ||f||^(2^k);
the 2^-k-th root is floating point, for display only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boolfn import BooleanFunction, bits_to_array, xor_translate
from .dyadic import DyadicRational
from .errors import CapacityError
from .spectral import fwht_inplace, walsh

DEFINITION_GUARD = 24  # uk_definition iterates 2^((k+1) n) cheap word operations


@dataclass(frozen=True)
class GowersValue:
    """k-th Gowers norm carrier: pow_value = ||f||_{U_k}^(2^k), exact."""

    k: int
    pow_value: DyadicRational

    @property
    def norm(self) -> float:
        return self.pow_value.root(self.k)


def _sum_w4(w: np.ndarray) -> int:
    """Exact sum of W(u)^4 (Python integers; safe for any n <= 24)."""
    values, counts = np.unique(w, return_counts=True)
    return sum(int(v) ** 4 * int(c) for v, c in zip(values, counts))


def _sum_w3(w: np.ndarray) -> int:
    values, counts = np.unique(w, return_counts=True)
    return sum(int(v) ** 3 * int(c) for v, c in zip(values, counts))


def u2_spectral(f: BooleanFunction) -> GowersValue:
    """pow_value = sum_u W(u)^4 / 2^(4n)."""
    total = _sum_w4(walsh(f).w)
    return GowersValue(2, DyadicRational(total, 4 * f.n))


def u2_autocorrelation(f: BooleanFunction) -> GowersValue:
    """pow_value = 2^-n sum_a (f*f)(a)^2, via packed-word autocorrelations."""
    if 2 * f.n > 24:
        raise CapacityError(f"u2_autocorrelation needs 2n <= 24, got n = {f.n}")
    size = 1 << f.n
    bits, n = f.packed, f.n
    total = 0
    for a in range(size):
        s = size - 2 * (bits ^ xor_translate(bits, n, a)).bit_count()
        total += s * s
    return GowersValue(2, DyadicRational(total, 3 * f.n))


def uk_definition(f: BooleanFunction, k: int) -> GowersValue:
    """Literal sum over all x, d1, ..., dk of the 2^k-fold subset product.

    Each recursion level folds one more direction into the running packed
    derivative table, so the incremental subset sums are reused; a leaf then
    contributes sum_x (-1)^(Delta_{d1..dk} F (x)) in one popcount.
    """
    if k < 1:
        raise ValueError("order k must be >= 1")
    if (k + 1) * f.n > DEFINITION_GUARD:
        raise CapacityError(
            f"uk_definition needs (k+1)*n <= {DEFINITION_GUARD}, got k = {k}, n = {f.n}"
        )
    size = 1 << f.n
    n = f.n

    def fold(bits: int, depth: int) -> int:
        if depth == k:
            return size - 2 * bits.bit_count()
        total = 0
        for d in range(size):
            total += fold(bits ^ xor_translate(bits, n, d), depth + 1)
        return total

    return GowersValue(k, DyadicRational(fold(f.packed, 0), (k + 1) * f.n))


def uk_via_derivatives(f: BooleanFunction, k: int) -> GowersValue:
    """2^(-(k-2)n) sum over (k-2)-tuples of ||Delta_dirs f||_{U_2}^4, exact."""
    if k < 3:
        raise ValueError("the derivative route is defined for k >= 3")
    if (k - 2) * f.n > 24:
        raise CapacityError(
            f"uk_via_derivatives needs (k-2)*n <= 24, got k = {k}, n = {f.n}"
        )
    size = 1 << f.n
    n = f.n

    def w4_of(bits: int) -> int:
        signs = 1 - 2 * bits_to_array(bits, n).astype(np.int64)
        return _sum_w4(fwht_inplace(signs))

    def fold(bits: int, depth: int) -> int:
        if depth == k - 2:
            return w4_of(bits)
        total = 0
        for d in range(size):
            total += fold(bits ^ xor_translate(bits, n, d), depth + 1)
        return total

    total = fold(f.packed, 0)
    return GowersValue(k, DyadicRational(total, (k + 2) * f.n))
