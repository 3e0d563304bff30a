"""Linearity testing: the norm-circuit test, the classical BLR test, and a
head-to-head comparison harness.

The quantum test prepares the 3-register norm circuit's final state and
accepts a shot iff the measured index is all-zeros, which happens with
probability exactly ||f||_{U_2}^8.  A linear f therefore accepts with
probability 1; so does any function with ||f||_{U_2} = 1, i.e. every affine
function (constant 1 included) -- the test distinguishes linear functions
from functions *far from linear* only under that promise.

The BLR test draws x, y uniformly and accepts iff F(x) + F(y) = F(x+y); its
exact acceptance probability is 1/2 + 1/2 sum_u fhat(u)^3, also computable
by brute enumeration of all 2^(2n) pairs (both routes are kept and
cross-checked).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .boolfn import BooleanFunction, xor_translate
from .dyadic import DyadicRational
from .errors import CapacityError, CrossCheckError
from .estimate import child_seed, sample
from .gowers import _sum_w3
from .qsim import amplitude_at_zero, build_u2_circuit, run
from .spectral import dist_to_linear, nonlinearity, walsh

QUANTUM_QUERIES_PER_SHOT = 4  # phase-oracle calls per circuit execution
BLR_QUERIES_PER_TRIAL = 3


@dataclass(frozen=True)
class TestVerdict:
    verdict: str  # "ACCEPT" | "REJECT"
    mode: str  # "exact" | "sampled"
    shots: int
    accept_probability_exact: float
    rejection_frequency: float | None
    seed: int | None

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "mode": self.mode,
            "shots": self.shots,
            "accept_probability_exact": self.accept_probability_exact,
            "rejection_frequency": self.rejection_frequency,
            "seed": self.seed,
        }


class RejectionBound(NamedTuple):
    exact: float  # 1 - (1 - 2 eps)^4
    exponential: float  # 1 - exp(-8 eps), the stated approximation


def rejection_lower_bound(eps: float) -> RejectionBound:
    """Lower bound on the per-shot rejection probability at distance eps from linear."""
    if not 0.0 < eps <= 0.5:
        raise ValueError(f"eps must lie in (0, 1/2], got {eps!r}")
    return RejectionBound(1.0 - (1.0 - 2.0 * eps) ** 4, 1.0 - math.exp(-8.0 * eps))


def quantum_linearity_test(f: BooleanFunction, shots: int, seed: int | None = None) -> TestVerdict:
    """Per-shot test: ACCEPT iff the measured index is 0.

    shots >= 1 samples that many measurements (verdict REJECT iff any shot
    rejects); shots = 0 returns the exact-mode verdict computed from the
    amplitude alone.
    """
    if shots < 0:
        raise ValueError("shots must be >= 0")
    state = run(build_u2_circuit(f.n), f)
    p_accept = amplitude_at_zero(state) ** 2
    if shots == 0:
        return TestVerdict(
            verdict="ACCEPT" if 1.0 - p_accept <= 1e-12 else "REJECT",
            mode="exact",
            shots=0,
            accept_probability_exact=p_accept,
            rejection_frequency=None,
            seed=None,
        )
    outcomes = sample(state, shots, seed).outcomes
    rejections = int(np.count_nonzero(outcomes))
    return TestVerdict(
        verdict="REJECT" if rejections else "ACCEPT",
        mode="sampled",
        shots=shots,
        accept_probability_exact=p_accept,
        rejection_frequency=rejections / shots,
        seed=seed if isinstance(seed, int) else None,
    )


# ---------------------------------------------------------------------------
# BLR
# ---------------------------------------------------------------------------


def blr_exact_dyadic(f: BooleanFunction, route: str = "auto") -> DyadicRational:
    """Exact BLR acceptance probability.

    route: "spectral" (1/2 + 1/2 sum fhat^3, any n), "enumeration" (all 2^(2n)
    pairs, needs 2n <= 24), "auto"/"both" (run every route in capacity and
    cross-check exact equality).
    """
    if route not in ("auto", "both", "spectral", "enumeration"):
        raise ValueError(f"unknown route {route!r}")
    n = f.n
    results: dict[str, DyadicRational] = {}
    if route in ("auto", "both", "spectral"):
        s3 = _sum_w3(walsh(f).w)
        results["spectral"] = DyadicRational((1 << (3 * n)) + s3, 3 * n + 1)
    if route in ("both", "enumeration") or (route == "auto" and 2 * n <= 24):
        if 2 * n > 24:
            raise CapacityError(f"enumeration route needs 2n <= 24, got n = {n}")
        size = 1 << n
        bits = f.packed
        matches = 0
        for x in range(size):
            disagree = (bits ^ xor_translate(bits, n, x)).bit_count()
            # row y holds F(y) + F(x+y); compare against F(x)
            matches += disagree if (bits >> x) & 1 else size - disagree
        results["enumeration"] = DyadicRational(matches, 2 * n)
    values = list(results.values())
    if len(values) == 2 and values[0] != values[1]:
        raise CrossCheckError(
            f"BLR routes disagree: spectral {values[0]} vs enumeration {values[1]}"
        )
    return values[0]


def blr_exact(f: BooleanFunction, route: str = "auto") -> float:
    return float(blr_exact_dyadic(f, route))


def blr_test(f: BooleanFunction, trials: int, seed: int | None = None) -> TestVerdict:
    """Sampled BLR test; trials = 0 returns the exact-mode verdict."""
    if trials < 0:
        raise ValueError("trials must be >= 0")
    p_accept = blr_exact(f, "spectral")
    if trials == 0:
        return TestVerdict(
            verdict="ACCEPT" if 1.0 - p_accept <= 1e-12 else "REJECT",
            mode="exact",
            shots=0,
            accept_probability_exact=p_accept,
            rejection_frequency=None,
            seed=None,
        )
    rng = np.random.default_rng(seed)
    size = 1 << f.n
    table = f.table
    xs = rng.integers(0, size, size=trials)
    ys = rng.integers(0, size, size=trials)
    rejections = int(np.count_nonzero(table[xs] ^ table[ys] ^ table[xs ^ ys]))
    return TestVerdict(
        verdict="REJECT" if rejections else "ACCEPT",
        mode="sampled",
        shots=trials,
        accept_probability_exact=p_accept,
        rejection_frequency=rejections / trials,
        seed=seed if isinstance(seed, int) else None,
    )


# ---------------------------------------------------------------------------
# comparison harness
# ---------------------------------------------------------------------------


def _bound_polynomial(eps: float) -> float:
    return 1.0 - (1.0 - 2.0 * eps) ** 4


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    function_tt_hex: str
    eps: float  # exact distance to the linear functions
    eps_num: int
    eps_log2_den: int
    nonlinearity: int
    quantum_reject_exact: float
    quantum_reject_freq: float
    quantum_reject_bound: float  # 1 - (1 - 2 eps)^4 at the exact eps
    blr_reject_exact: float
    blr_reject_freq: float
    shots: int
    quantum_queries_per_shot: int
    blr_queries_per_trial: int
    quantum_reject_per_query: float
    blr_reject_per_query: float
    seed: int | None

    CSV_FIELDS = (
        "n",
        "function_tt_hex",
        "eps",
        "nonlinearity",
        "quantum_reject_exact",
        "quantum_reject_freq",
        "quantum_reject_bound",
        "blr_reject_exact",
        "blr_reject_freq",
        "shots",
        "quantum_queries_per_shot",
        "blr_queries_per_trial",
        "quantum_reject_per_query",
        "blr_reject_per_query",
        "seed",
    )

    @classmethod
    def csv_header(cls) -> str:
        return ",".join(cls.CSV_FIELDS)

    def csv_row(self) -> str:
        return ",".join(str(getattr(self, name)) for name in self.CSV_FIELDS)

    def to_json_dict(self) -> dict:
        out = {name: getattr(self, name) for name in self.CSV_FIELDS}
        out["eps_num"] = self.eps_num
        out["eps_log2_den"] = self.eps_log2_den
        return out


def compare(f: BooleanFunction, shots: int, seed: int) -> ComparisonReport:
    """Side-by-side exact and sampled rejection rates, quantum vs BLR.

    `shots` is used for both sides (circuit shots and BLR trials); the two
    samplers draw from child seeds (seed, 0) and (seed, 1).  Per-query rates
    divide the per-shot rejection by the oracle queries one shot consumes
    (4 phase queries quantum, 3 classical queries BLR), because a raw
    per-shot comparison silently hands the quantum side a 4-query budget.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    state = run(build_u2_circuit(f.n), f)
    p_accept = amplitude_at_zero(state) ** 2
    q_reject_exact = 1.0 - p_accept
    outcomes = sample(state, shots, child_seed(seed, 0)).outcomes
    q_reject_freq = int(np.count_nonzero(outcomes)) / shots
    blr_verdict = blr_test(f, shots, child_seed(seed, 1))
    eps_dy, _ = dist_to_linear(f)
    eps = float(eps_dy)
    return ComparisonReport(
        n=f.n,
        function_tt_hex=f.to_hex(),
        eps=eps,
        eps_num=eps_dy.num,
        eps_log2_den=eps_dy.log2_den,
        nonlinearity=nonlinearity(f),
        quantum_reject_exact=q_reject_exact,
        quantum_reject_freq=q_reject_freq,
        quantum_reject_bound=_bound_polynomial(eps),
        blr_reject_exact=1.0 - blr_verdict.accept_probability_exact,
        blr_reject_freq=blr_verdict.rejection_frequency,
        shots=shots,
        quantum_queries_per_shot=QUANTUM_QUERIES_PER_SHOT,
        blr_queries_per_trial=BLR_QUERIES_PER_TRIAL,
        quantum_reject_per_query=q_reject_exact / QUANTUM_QUERIES_PER_SHOT,
        blr_reject_per_query=(1.0 - blr_verdict.accept_probability_exact)
        / BLR_QUERIES_PER_TRIAL,
        seed=seed,
    )
