"""Measurement sampling and the Hoeffding-style upper bound on ||f||_{U_2}.

A measured outcome of the 3n-qubit norm circuit is read as the concatenated
bit string x' || a' || b'; Y = (its decimal value) / 2^(3n) lies in [0, 1).
With sample mean Ybar over m shots, the norm satisfies

    ||f||_{U_2} <= (1 + t - Ybar)^(1/8)

with a failure probability the report quotes two ways: confidence_paper uses
exp(-2 m^2 t^2), the optimistic exponent this estimator is usually stated
with, while confidence_standard uses exp(-2 m t^2), the textbook Hoeffding
rate for a mean of m bounded i.i.d. variables.  The standard form is the
defensible one; both are always computed so the discrepancy stays visible.
All randomness comes from numpy's PCG64; child streams for trial i are
derived via SeedSequence([seed, i]) (see child_seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boolfn import BooleanFunction
from .gowers import u2_spectral
from .qsim import StateVector, build_u2_circuit, run

RNG_ALGORITHM = "PCG64"


def child_seed(seed: int, index: int) -> int:
    """Deterministic 128-bit child seed for trial `index` under a master seed."""
    words = np.random.SeedSequence([seed, index]).generate_state(2, np.uint64)
    return (int(words[0]) << 64) | int(words[1])


def _generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None or (isinstance(seed, int) and seed >= 0):
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    raise ValueError(f"seed must be a non-negative integer, got {seed!r}")


@dataclass(frozen=True)
class SampleSet:
    n: int  # qubits per register of the sampled state
    m_samples: int
    outcomes: np.ndarray = field(repr=False)  # basis indices
    y_values: np.ndarray = field(repr=False)  # outcome / 2^(total qubits)
    seed: int | None

    def __post_init__(self):
        self.outcomes.setflags(write=False)
        self.y_values.setflags(write=False)


@dataclass(frozen=True)
class EstimationReport:
    y_bar: float
    t: float
    m: int
    upper_bound: float
    confidence_paper: float  # 1 - exp(-2 m^2 t^2); see the module docstring
    confidence_standard: float  # 1 - exp(-2 m t^2), textbook Hoeffding
    seed: int | None

    def to_json_dict(self, function_hex: str | None = None) -> dict:
        out = {
            "y_bar": self.y_bar,
            "t": self.t,
            "m": self.m,
            "upper_bound": self.upper_bound,
            "confidence_paper": self.confidence_paper,
            "confidence_standard": self.confidence_standard,
            "seed": self.seed,
            "rng": RNG_ALGORITHM,
        }
        if function_hex is not None:
            out["function_tt_hex"] = function_hex
        return out


def sample(state: StateVector, m: int, seed) -> SampleSet:
    """m independent computational-basis measurements of `state`.

    Inverse-CDF sampling over the cumulative |amp|^2 array: deterministic for
    a given seed.  A norm drift beyond 1e-9 is an error; smaller drift is
    renormalized away.
    """
    if m < 1:
        raise ValueError("need at least one sample")
    p = state.amp.astype(np.float64) ** 2
    total = float(p.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"state is not normalized: sum |amp|^2 = {total!r}")
    p /= total
    cum = np.cumsum(p)
    cum[-1] = 1.0
    rng = _generator(seed)
    draws = rng.random(m)
    outcomes = np.searchsorted(cum, draws, side="right").astype(np.int64)
    y_values = outcomes / float(state.layout.dim)
    stored_seed = seed if isinstance(seed, int) else None
    return SampleSet(state.layout.n, m, outcomes, y_values, stored_seed)


def hoeffding_bound(samples: SampleSet, t: float) -> EstimationReport:
    """Upper bound min(1, (1 + t - Ybar)^(1/8)) with both confidence labels."""
    if not t > 0:
        raise ValueError(f"margin t must be positive, got {t!r}")
    m = samples.m_samples
    y_bar = float(np.mean(samples.y_values))
    upper = min(1.0, (1.0 + t - y_bar) ** 0.125)
    return EstimationReport(
        y_bar=y_bar,
        t=t,
        m=m,
        upper_bound=upper,
        confidence_paper=1.0 - math.exp(-2.0 * m * m * t * t),
        confidence_standard=1.0 - math.exp(-2.0 * m * t * t),
        seed=samples.seed,
    )


def validate_bound(
    f: BooleanFunction, m: int, t: float, trials: int, seed: int
) -> float:
    """Fraction of independent trials whose bound covers the exact U_2 norm.

    Each trial samples m outcomes from the norm circuit's final state with a
    derived child seed, computes the Hoeffding report, and checks
    exact_norm <= upper_bound against the exact spectral value.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if not t > 0:
        raise ValueError(f"margin t must be positive, got {t!r}")
    state = run(build_u2_circuit(f.n), f)
    exact_norm = u2_spectral(f).norm
    covered = 0
    for i in range(trials):
        samples = sample(state, m, child_seed(seed, i))
        report = hoeffding_bound(samples, t)
        if exact_norm <= report.upper_bound:
            covered += 1
    return covered / trials
