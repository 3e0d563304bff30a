"""Walsh-Hadamard spectra and derived quantities, all in exact integer arithmetic.

W(u) = sum_x (-1)^(F(x) + u.x) = 2^n * fhat(u).  The transform is the
unnormalized +-1 butterfly; the 2^-n normalizations live in DyadicRational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .boolfn import BooleanFunction, Point, _as_index, unpack_point, xor_translate
from .dyadic import DyadicRational
from .errors import CapacityError


def fwht_inplace(a: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform; length must be a power of two."""
    size = a.shape[0]
    h = 1
    while h < size:
        view = a.reshape(-1, 2 * h)
        lo = view[:, :h].copy()
        hi = view[:, h:]
        np.add(lo, hi, out=view[:, :h])
        np.subtract(lo, hi, out=view[:, h:])
        h *= 2
    return a


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    """Integer Walsh coefficients W(u), indexed by the packed index of u."""

    n: int
    w: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.w.setflags(write=False)

    @property
    def max_abs(self) -> int:
        return int(np.abs(self.w).max())

    @property
    def max_signed(self) -> int:
        return int(self.w.max())

    def __getitem__(self, u) -> int:
        return int(self.w[_as_index(u, self.n)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WalshSpectrum)
            and self.n == other.n
            and np.array_equal(self.w, other.w)
        )


class LinearDistance(NamedTuple):
    eps: DyadicRational
    argmin: tuple[int, ...]


def walsh(f: BooleanFunction) -> WalshSpectrum:
    signs = f.sign_table(np.int64)
    return WalshSpectrum(f.n, fwht_inplace(signs))


def nonlinearity(f: BooleanFunction) -> int:
    """Minimum Hamming distance to the 2^(n+1) affine functions."""
    return ((1 << f.n) - walsh(f).max_abs) // 2


def dist_to_linear(f: BooleanFunction) -> LinearDistance:
    """Normalized distance to the 2^n linear functions (complements excluded).

    eps = (1 - max_u W(u) / 2^n) / 2, with the signed maximum; argmin is the
    maximizing u, ties broken by smallest packed index.
    """
    w = walsh(f).w
    wmax = int(w.max())
    u = int(np.argmax(w == wmax))
    eps = DyadicRational((1 << f.n) - wmax, f.n + 1)
    return LinearDistance(eps, unpack_point(u, f.n))


def autocorrelation(f: BooleanFunction, a: Point) -> DyadicRational:
    """(f * f)(a) = 2^-n sum_y f(y) f(y+a), exact."""
    offset = _as_index(a, f.n)
    disagreements = (f.packed ^ xor_translate(f.packed, f.n, offset)).bit_count()
    return DyadicRational((1 << f.n) - 2 * disagreements, f.n)


def convolve(f: BooleanFunction, g: BooleanFunction) -> list[DyadicRational]:
    """Pointwise values of (f * g)(a) = 2^-n sum_y f(y) g(y+a) over all a."""
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: n = {f.n} vs {g.n}")
    if 2 * f.n > 24:
        raise CapacityError(f"convolve needs 2n <= 24, got n = {f.n}")
    size = 1 << f.n
    fb, gb, n = f.packed, g.packed, f.n
    out = []
    for a in range(size):
        disagreements = (fb ^ xor_translate(gb, n, a)).bit_count()
        out.append(DyadicRational(size - 2 * disagreements, n))
    return out
