"""Gate-level state-vector simulation of the norm-measuring circuits.

The simulated system is m registers of n qubits each.  Basis index layout:
register 1 occupies the most significant n bits, register m the least
significant, matching the library's x1-most-significant point convention.
The phase-kickback target qubit is factored out and never stored: the phase
oracle multiplies amplitudes by (-1)^F directly.  Every gate in scope (phase
flips, register permutations, Hadamard layers) is real orthogonal, so
amplitudes are plain float64.

Circuit builders:

* build_u2_circuit(n)            -- 3 registers; oracle/MCNOT prefix walking the
  four cosets x, x+a, x+b, x+a+b, then a global Hadamard layer.  Measuring
  all-zeros afterwards has probability ||f||_{U_2}^8.
* build_appendix_u3_circuit(n)   -- a fixed 4-register 16-gate U_3 variant,
  kept so its defect stays demonstrable: phase_audit shows it queries only 7
  of the 8 cosets (x+a+c is missed) even though register 1 is restored.
* build_derivative_walk_circuit(n, k) -- k+1 registers; a recursive-doubling
  schedule D_1 = [UF, M(1,2), UF, M(1,2)], D_j = D_{j-1} + [M(1,j+1)] +
  D_{j-1} + [M(1,j+1)], visiting every coset x + sum_{i in S} d_i exactly
  once (binary-counter subset order) and restoring register 1.  For k = 2 it
  reproduces build_u2_circuit's prefix gate for gate.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Union

import numpy as np

from .boolfn import BooleanFunction
from .errors import CapacityError
from .spectral import fwht_inplace

MAX_QUBITS = 24


@dataclass(frozen=True)
class RegisterLayout:
    n: int  # qubits per register
    m: int  # number of registers

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("need n >= 1 qubits per register and m >= 1 registers")
        if self.qubits > MAX_QUBITS:
            raise CapacityError(
                f"layout needs m*n <= {MAX_QUBITS}, got {self.m} x {self.n}"
            )

    @property
    def qubits(self) -> int:
        return self.n * self.m

    @property
    def dim(self) -> int:
        return 1 << self.qubits

    def shift(self, register: int) -> int:
        """Bit position of the least significant qubit of a register."""
        self._check_register(register)
        return (self.m - register) * self.n

    def _check_register(self, register: int) -> None:
        if not 1 <= register <= self.m:
            raise ValueError(f"register {register} out of range [1, {self.m}]")

    def content(self, index: int, register: int) -> int:
        return (index >> self.shift(register)) & ((1 << self.n) - 1)

    def index(self, contents) -> int:
        if len(contents) != self.m:
            raise ValueError(f"need {self.m} register contents")
        out = 0
        for c in contents:
            if not 0 <= c < (1 << self.n):
                raise ValueError("register content out of range")
            out = (out << self.n) | c
        return out


@dataclass(frozen=True)
class PhaseOracle:
    """Multiply each amplitude by (-1)^F(content of `register`)."""

    register: int = 1

    def __post_init__(self):
        if self.register < 1:
            raise ValueError("register indices start at 1")


@dataclass(frozen=True)
class MCnot:
    """XOR the content of register `source` into register `target` (qubit-wise CNOTs)."""

    target: int
    source: int

    def __post_init__(self):
        if self.target < 1 or self.source < 1:
            raise ValueError("register indices start at 1")
        if self.target == self.source:
            raise ValueError("MCnot target and source must differ")


@dataclass(frozen=True)
class HadamardAll:
    """Normalized Walsh-Hadamard transform over all m*n qubits."""


Gate = Union[PhaseOracle, MCnot, HadamardAll]


@dataclass(frozen=True)
class Circuit:
    layout: RegisterLayout
    gates: tuple[Gate, ...]

    @property
    def oracle_count(self) -> int:
        return sum(isinstance(g, PhaseOracle) for g in self.gates)

    def dump(self) -> str:
        """One gate per line, application order top to bottom."""
        lines = []
        for g in self.gates:
            if isinstance(g, PhaseOracle):
                lines.append(f"UF r{g.register}")
            elif isinstance(g, MCnot):
                lines.append(f"MCNOT r{g.target} r{g.source}")
            else:
                lines.append("HALL")
        return "\n".join(lines)


@dataclass
class StateVector:
    layout: RegisterLayout
    amp: np.ndarray = field(repr=False)

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.amp, self.amp)))

    def copy(self) -> "StateVector":
        return StateVector(self.layout, self.amp.copy())


def uniform_state(layout: RegisterLayout) -> StateVector:
    amp = np.full(layout.dim, 2.0 ** (-layout.qubits / 2.0))
    return StateVector(layout, amp)


def apply(state: StateVector, gate: Gate, f: BooleanFunction | None = None) -> StateVector:
    """Apply one gate, returning a new StateVector (inputs are not mutated)."""
    layout = state.layout
    if isinstance(gate, PhaseOracle):
        layout._check_register(gate.register)
        if f is None:
            raise ValueError("PhaseOracle requires a BooleanFunction")
        if f.n != layout.n:
            raise ValueError(f"oracle function has n = {f.n}, layout has n = {layout.n}")
        pre = 1 << ((gate.register - 1) * layout.n)
        post = 1 << ((layout.m - gate.register) * layout.n)
        signs = f.sign_table(np.float64)
        amp = (state.amp.reshape(pre, 1 << layout.n, post) * signs[None, :, None]).reshape(-1)
        return StateVector(layout, amp)
    if isinstance(gate, MCnot):
        layout._check_register(gate.target)
        layout._check_register(gate.source)
        idx = np.arange(layout.dim, dtype=np.int64)
        content = (idx >> layout.shift(gate.source)) & ((1 << layout.n) - 1)
        perm = idx ^ (content << layout.shift(gate.target))
        return StateVector(layout, state.amp[perm])  # the permutation is an involution
    if isinstance(gate, HadamardAll):
        amp = fwht_inplace(state.amp.astype(np.float64, copy=True))
        amp *= 2.0 ** (-layout.qubits / 2.0)
        return StateVector(layout, amp)
    raise TypeError(f"unknown gate {gate!r}")


def run(circuit: Circuit, f: BooleanFunction | None = None) -> StateVector:
    """uniform_state followed by the circuit's gates, in order."""
    state = uniform_state(circuit.layout)
    for gate in circuit.gates:
        state = apply(state, gate, f)
    return state


def amplitude_at_zero(state: StateVector) -> float:
    return float(state.amp[0])


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def _walk_gates(k: int) -> list[Gate]:
    if k == 0:
        return [PhaseOracle(1)]
    inner = _walk_gates(k - 1)
    return inner + [MCnot(1, k + 1)] + inner + [MCnot(1, k + 1)]


def build_derivative_walk_circuit(n: int, k: int) -> Circuit:
    """k+1 registers; queries all 2^k direction-subsets once and restores register 1."""
    if k < 1:
        raise ValueError("order k must be >= 1")
    layout = RegisterLayout(n, k + 1)
    return Circuit(layout, tuple(_walk_gates(k) + [HadamardAll()]))


def build_u2_circuit(n: int) -> Circuit:
    """The 3-register norm circuit: 4 oracle calls, 6 MCNOTs, final Hadamard layer."""
    layout = RegisterLayout(n, 3)
    gates: tuple[Gate, ...] = (
        PhaseOracle(1),
        MCnot(1, 2),
        PhaseOracle(1),
        MCnot(1, 2),
        MCnot(1, 3),
        PhaseOracle(1),
        MCnot(1, 2),
        PhaseOracle(1),
        MCnot(1, 2),
        MCnot(1, 3),
        HadamardAll(),
    )
    return Circuit(layout, gates)


def build_appendix_u3_circuit(n: int) -> Circuit:
    """The fixed 4-register U_3 variant (7 oracle calls; see phase_audit)."""
    layout = RegisterLayout(n, 4)
    gates: tuple[Gate, ...] = (
        PhaseOracle(1),
        MCnot(1, 2),
        PhaseOracle(1),
        MCnot(1, 3),
        PhaseOracle(1),
        MCnot(1, 4),
        PhaseOracle(1),
        MCnot(1, 2),
        PhaseOracle(1),
        MCnot(1, 3),
        PhaseOracle(1),
        MCnot(1, 4),
        MCnot(1, 3),
        PhaseOracle(1),
        MCnot(1, 3),
        HadamardAll(),
    )
    return Circuit(layout, gates)


# ---------------------------------------------------------------------------
# symbolic phase audit
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhaseAudit:
    """Symbolic trace of which coset each oracle call evaluates.

    Cosets are sets of register ids whose initial contents are XOR-summed;
    register 1 stands for the point x, registers 2..m for the directions.
    The circuit implements a full iterated-derivative phase iff every coset
    {1} union S (S over all subsets of {2..m}) occurs exactly once and
    register 1 ends restored.
    """

    oracle_count: int
    cosets: tuple[tuple[int, ...], ...]
    register_one_restored: bool
    missing: tuple[tuple[int, ...], ...]
    extra: tuple[tuple[int, ...], ...]

    @property
    def implements_derivative(self) -> bool:
        return self.register_one_restored and not self.missing and not self.extra

    @property
    def status(self) -> str:
        return "ok" if self.implements_derivative else "not-a-derivative"


def phase_audit(circuit: Circuit) -> PhaseAudit:
    m = circuit.layout.m
    gates = circuit.gates
    for i, gate in enumerate(gates):
        if isinstance(gate, HadamardAll) and i != len(gates) - 1:
            raise ValueError("phase_audit requires HadamardAll only as the final gate")
    contents: dict[int, frozenset[int]] = {r: frozenset({r}) for r in range(1, m + 1)}
    cosets: list[tuple[int, ...]] = []
    for gate in gates:
        if isinstance(gate, MCnot):
            circuit.layout._check_register(gate.target)
            circuit.layout._check_register(gate.source)
            contents[gate.target] = contents[gate.target] ^ contents[gate.source]
        elif isinstance(gate, PhaseOracle):
            circuit.layout._check_register(gate.register)
            cosets.append(tuple(sorted(contents[gate.register])))
    expected = Counter(
        tuple(sorted({1, *subset}))
        for size in range(m)
        for subset in combinations(range(2, m + 1), size)
    )
    actual = Counter(cosets)
    missing = tuple(sorted((expected - actual).elements()))
    extra = tuple(sorted((actual - expected).elements()))
    return PhaseAudit(
        oracle_count=len(cosets),
        cosets=tuple(cosets),
        register_one_restored=contents[1] == frozenset({1}),
        missing=missing,
        extra=extra,
    )
