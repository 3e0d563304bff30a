"""Boolean functions F: GF(2)^n -> GF(2): truth tables, ANF, degrees, derivatives.

Conventions used library-wide:

* A point x = (x1, ..., xn) is packed into an index with x1 as the most
  significant bit: idx(x) = sum x_i * 2**(n-i).  Truth tables are listed in
  increasing index order, i.e. lexicographically in (x1, ..., xn).
* Truth tables are stored as packed Python integers (bit idx(x) holds F(x)),
  so the O(2^n) transforms run on whole machine words.
* The character form f(x) = (-1)**F(x) is exposed as sign tables / SignVector.
* Hex truth-table format: ceil(2^n / 4) hex digits, most significant digit
  first; the bit of x = 0...0 is the most significant bit of the whole string.
  (For n = 1 the single digit is padded with two low zero bits.)

The constructors accept 1 <= n <= 24; larger n raises CapacityError so that
all downstream exact accumulators stay cheap.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from .dyadic import DyadicRational
from .errors import AnfSyntaxError, CapacityError

MAX_N = 24

Point = Union[int, Sequence[int]]

# ---------------------------------------------------------------------------
# packed-integer plumbing
# ---------------------------------------------------------------------------

_FOLD_MASKS: dict[int, list[tuple[int, int]]] = {}


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > MAX_N:
        raise CapacityError(f"n = {n} exceeds the supported maximum {MAX_N}")


def _fold_masks(n: int) -> list[tuple[int, int]]:
    """For each index bit j: (stride, mask of positions with bit j clear)."""
    cached = _FOLD_MASKS.get(n)
    if cached is None:
        size = 1 << n
        cached = []
        for j in range(n):
            stride = 1 << j
            block = (1 << stride) - 1
            mask = block * (((1 << size) - 1) // ((1 << (2 * stride)) - 1))
            cached.append((stride, mask))
        _FOLD_MASKS[n] = cached
    return cached


def xor_translate(bits: int, n: int, a: int) -> int:
    """Packed table of x -> F(x + a), given the packed table of F."""
    for stride, mask in _fold_masks(n):
        if a & stride:
            bits = ((bits & mask) << stride) | ((bits >> stride) & mask)
    return bits


def mobius_packed(bits: int, n: int) -> int:
    """Binary Mobius transform on a packed table; it is an involution."""
    for stride, mask in _fold_masks(n):
        bits ^= (bits & mask) << stride
    return bits


def bits_to_array(bits: int, n: int) -> np.ndarray:
    """Packed table -> uint8 array indexed by idx(x)."""
    size = 1 << n
    raw = bits.to_bytes((size + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, np.uint8), count=size, bitorder="little")


def array_to_bits(table: np.ndarray) -> int:
    packed = np.packbits(table.astype(np.uint8) & 1, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def pack_point(vec: Sequence[int], n: int | None = None) -> int:
    """(x1, ..., xn) -> index with x1 most significant."""
    if n is not None and len(vec) != n:
        raise ValueError(f"point has length {len(vec)}, expected {n}")
    idx = 0
    for bit in vec:
        if bit not in (0, 1):
            raise ValueError(f"point coordinates must be 0/1, got {bit!r}")
        idx = (idx << 1) | bit
    return idx


def unpack_point(idx: int, n: int) -> tuple[int, ...]:
    return tuple((idx >> (n - i)) & 1 for i in range(1, n + 1))


def _as_index(x: Point, n: int) -> int:
    if isinstance(x, (int, np.integer)):
        idx = int(x)
        if not 0 <= idx < (1 << n):
            raise ValueError(f"index {idx} out of range for n = {n}")
        return idx
    return pack_point(list(x), n)


def popcount_array(values: np.ndarray) -> np.ndarray:
    return np.bitwise_count(values)


# ---------------------------------------------------------------------------
# ANF
# ---------------------------------------------------------------------------


class Anf:
    """Algebraic normal form: coefficient lambda_u at packed index u."""

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Iterable[int] | np.ndarray):
        _check_n(n)
        arr = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs)
        if arr.shape != (1 << n,):
            raise ValueError(f"coefficient sequence must have length {1 << n}")
        self.n = n
        self._coeffs = array_to_bits(arr)

    @classmethod
    def from_packed(cls, n: int, coeff_bits: int) -> "Anf":
        _check_n(n)
        if not 0 <= coeff_bits < (1 << (1 << n)):
            raise ValueError("packed coefficients out of range")
        obj = cls.__new__(cls)
        obj.n = n
        obj._coeffs = coeff_bits
        return obj

    @property
    def packed(self) -> int:
        return self._coeffs

    @property
    def coeffs(self) -> np.ndarray:
        return bits_to_array(self._coeffs, self.n)

    def coefficient(self, u: Point) -> int:
        return (self._coeffs >> _as_index(u, self.n)) & 1

    def monomials(self) -> list[int]:
        """Packed indices u with lambda_u = 1, ascending."""
        return [int(u) for u in np.flatnonzero(self.coeffs)]

    def degree(self) -> int:
        """Max Hamming weight of a monomial; 0 for the constant functions."""
        present = np.flatnonzero(self.coeffs)
        if present.size == 0:
            return 0
        return int(popcount_array(present.astype(np.uint32)).max())

    def to_function(self) -> "BooleanFunction":
        return BooleanFunction.from_packed(self.n, mobius_packed(self._coeffs, self.n))

    def to_string(self) -> str:
        terms = []
        for u in self.monomials():
            if u == 0:
                terms.append("1")
            else:
                vec = unpack_point(u, self.n)
                terms.append("*".join(f"x{i + 1}" for i, b in enumerate(vec) if b))
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Anf) and self.n == other.n and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self.n, self._coeffs))

    def __repr__(self) -> str:
        return f"Anf(n={self.n}, {self.to_string()!r})"


def _parse_anf(text: str, n: int) -> int:
    """Parse a sum of monomials into packed ANF coefficients.

    Grammar: expr := term ('+' term)*; term := factor (('*' | '&') factor)*;
    factor := '1' | '0' | 'x'<digits>.  Whitespace is free between tokens.
    '0' (the empty sum) is accepted as a courtesy extension.
    """
    coeffs = 0
    pos = 0
    length = len(text)

    def skip_ws():
        nonlocal pos
        while pos < length and text[pos].isspace():
            pos += 1

    def parse_factor() -> tuple[int, bool]:
        """Returns (monomial mask, is_zero)."""
        nonlocal pos
        skip_ws()
        if pos >= length:
            raise AnfSyntaxError("expected a variable or constant", pos + 1)
        ch = text[pos]
        if ch == "1":
            pos += 1
            return 0, False
        if ch == "0":
            pos += 1
            return 0, True
        if ch == "x":
            start = pos
            pos += 1
            digits = ""
            while pos < length and text[pos].isdigit():
                digits += text[pos]
                pos += 1
            if not digits:
                raise AnfSyntaxError("'x' must be followed by a variable index", start + 1)
            index = int(digits)
            if not 1 <= index <= n:
                raise AnfSyntaxError(
                    f"variable x{index} out of range [1, {n}]", start + 1
                )
            return 1 << (n - index), False
        raise AnfSyntaxError(f"unexpected character {ch!r}", pos + 1)

    skip_ws()
    if pos >= length:
        raise AnfSyntaxError("empty ANF expression", 1)

    while True:
        u, zero = parse_factor()
        while True:
            skip_ws()
            if pos < length and text[pos] in "*&":
                pos += 1
                u2, zero2 = parse_factor()
                u |= u2  # x*x = x over GF(2)
                zero = zero or zero2
            else:
                break
        if not zero:
            coeffs ^= 1 << u
        skip_ws()
        if pos >= length:
            break
        if text[pos] != "+":
            raise AnfSyntaxError(f"expected '+' but found {text[pos]!r}", pos + 1)
        pos += 1
    return coeffs


# ---------------------------------------------------------------------------
# Boolean functions
# ---------------------------------------------------------------------------


class BooleanFunction:
    """An n-variable Boolean function backed by a packed truth table."""

    __slots__ = ("n", "_bits")

    def __init__(self, n: int, table: Iterable[int] | np.ndarray):
        _check_n(n)
        arr = np.asarray(list(table) if not isinstance(table, np.ndarray) else table)
        if arr.shape != (1 << n,):
            raise ValueError(f"truth table must have length {1 << n}")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("truth table entries must be 0/1")
        self.n = n
        self._bits = array_to_bits(arr)

    @classmethod
    def from_packed(cls, n: int, bits: int) -> "BooleanFunction":
        _check_n(n)
        if not 0 <= bits < (1 << (1 << n)):
            raise ValueError("packed table out of range")
        obj = cls.__new__(cls)
        obj.n = n
        obj._bits = bits
        return obj

    @classmethod
    def from_anf(cls, anf: Anf) -> "BooleanFunction":
        return anf.to_function()

    @classmethod
    def from_anf_string(cls, text: str, n: int) -> "BooleanFunction":
        _check_n(n)
        return Anf.from_packed(n, _parse_anf(text, n)).to_function()

    @classmethod
    def from_hex(cls, n: int, digits: str) -> "BooleanFunction":
        _check_n(n)
        size = 1 << n
        ndigits = (size + 3) // 4
        digits = digits.strip()
        if len(digits) != ndigits:
            raise ValueError(
                f"tt-hex for n = {n} must have {ndigits} hex digits, got {len(digits)}"
            )
        try:
            value = int(digits, 16)
        except ValueError:
            raise ValueError(f"invalid hex digits {digits!r}") from None
        bitstr = format(value, f"0{4 * ndigits}b")
        if any(c != "0" for c in bitstr[size:]):
            raise ValueError("padding bits beyond 2^n positions must be zero")
        head = bitstr[:size][::-1]
        return cls.from_packed(n, int(head, 2) if head else 0)

    # -- basic accessors ------------------------------------------------------

    @property
    def packed(self) -> int:
        return self._bits

    @property
    def table(self) -> np.ndarray:
        """Truth table as a uint8 array indexed by idx(x)."""
        return bits_to_array(self._bits, self.n)

    def sign_table(self, dtype=np.int8) -> np.ndarray:
        """Character form f(x) = (-1)**F(x) as an array of +-1."""
        return (1 - 2 * self.table.astype(np.int16)).astype(dtype)

    def sign_vector(self) -> "SignVector":
        return SignVector(self.n, self.sign_table())

    def value(self, x: Point) -> int:
        return (self._bits >> _as_index(x, self.n)) & 1

    @property
    def weight(self) -> int:
        return self._bits.bit_count()

    def to_hex(self) -> str:
        size = 1 << self.n
        ndigits = (size + 3) // 4
        bitstr = format(self._bits, f"0{size}b")[::-1]  # F(0) F(1) ... F(2^n-1)
        return format(int(bitstr.ljust(4 * ndigits, "0"), 2), f"0{ndigits}x")

    # -- algebra ---------------------------------------------------------------

    def to_anf(self) -> Anf:
        return Anf.from_packed(self.n, mobius_packed(self._bits, self.n))

    def degree(self) -> int:
        return self.to_anf().degree()

    def translate(self, a: Point) -> "BooleanFunction":
        """x -> F(x + a)."""
        return BooleanFunction.from_packed(
            self.n, xor_translate(self._bits, self.n, _as_index(a, self.n))
        )

    def derivative(self, dirs: Sequence[Point]) -> "BooleanFunction":
        """Iterated discrete derivative along the given directions.

        Each step maps the table t to t(x) + t(x + a); the composite sums F
        over all subset-shifts of the direction list.
        """
        bits = self._bits
        for a in dirs:
            offset = _as_index(a, self.n)
            bits ^= xor_translate(bits, self.n, offset)
        return BooleanFunction.from_packed(self.n, bits)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BooleanFunction)
            and self.n == other.n
            and self._bits == other._bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self._bits))

    def __repr__(self) -> str:
        if self.n <= 4:
            return f"BooleanFunction(n={self.n}, tt_hex={self.to_hex()!r})"
        return f"BooleanFunction(n={self.n}, weight={self.weight})"


class SignVector:
    """The +-1 character form of a Boolean function."""

    __slots__ = ("n", "signs")

    def __init__(self, n: int, signs: np.ndarray):
        _check_n(n)
        arr = np.asarray(signs)
        if arr.shape != (1 << n,):
            raise ValueError(f"sign vector must have length {1 << n}")
        if not np.isin(arr, (-1, 1)).all():
            raise ValueError("sign entries must be +1 or -1")
        arr = arr.astype(np.int8).copy()
        arr.setflags(write=False)
        self.n = n
        self.signs = arr

    @classmethod
    def from_function(cls, f: BooleanFunction) -> "SignVector":
        return f.sign_vector()

    def to_function(self) -> BooleanFunction:
        return BooleanFunction(self.n, (1 - self.signs.astype(np.int16)) // 2)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignVector)
            and self.n == other.n
            and np.array_equal(self.signs, other.signs)
        )

    def __repr__(self) -> str:
        return f"SignVector(n={self.n})"


class HammingResult(NamedTuple):
    weight: int
    dist: DyadicRational


# -- module-level operation surface -------------------------------------------


def from_anf_string(text: str, n: int) -> BooleanFunction:
    return BooleanFunction.from_anf_string(text, n)


def to_anf(f: BooleanFunction) -> Anf:
    return f.to_anf()


def degree(f: BooleanFunction) -> int:
    return f.degree()


def derivative(f: BooleanFunction, dirs: Sequence[Point]) -> BooleanFunction:
    return f.derivative(dirs)


def hamming(f: BooleanFunction, g: BooleanFunction | None = None) -> HammingResult:
    """Hamming weight of f + g (weight of f when g is omitted) and d_H / 2^n."""
    if g is None:
        bits = f._bits
    else:
        if f.n != g.n:
            raise ValueError(f"dimension mismatch: n = {f.n} vs {g.n}")
        bits = f._bits ^ g._bits
    w = bits.bit_count()
    return HammingResult(w, DyadicRational(w, f.n))


# -- standard families ---------------------------------------------------------


def _as_mask(u: Point | str, n: int) -> int:
    if isinstance(u, str):
        if len(u) != n or any(c not in "01" for c in u):
            raise ValueError(f"direction string must be {n} bits of 0/1, got {u!r}")
        return int(u, 2)
    return _as_index(u, n)


def linear(n: int, u: Point | str) -> BooleanFunction:
    """The linear function x -> u . x (u given as index, bit vector, or bit string)."""
    _check_n(n)
    mask = _as_mask(u, n)
    idx = np.arange(1 << n, dtype=np.uint32)
    return BooleanFunction(n, (popcount_array(idx & np.uint32(mask)) & 1).astype(np.uint8))


def constant(n: int, bit: int = 0) -> BooleanFunction:
    _check_n(n)
    if bit not in (0, 1):
        raise ValueError("constant bit must be 0 or 1")
    return BooleanFunction.from_packed(n, ((1 << (1 << n)) - 1) if bit else 0)


def bent_quadratic(n: int) -> BooleanFunction:
    """x1*x2 + x3*x4 + ... + x_{n-1}*x_n (n even); the standard bent quadratic."""
    _check_n(n)
    if n % 2:
        raise ValueError("bent_quadratic requires an even number of variables")
    coeffs = 0
    for i in range(0, n, 2):
        u = (1 << (n - (i + 1))) | (1 << (n - (i + 2)))
        coeffs |= 1 << u
    return Anf.from_packed(n, coeffs).to_function()


def random_function(n: int, seed) -> BooleanFunction:
    """Uniformly random truth table from a PCG64 generator seeded with `seed`."""
    _check_n(n)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return BooleanFunction(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8))
