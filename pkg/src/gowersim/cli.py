"""Command-line interface.

Subcommands: analyze, gowers, simulate, estimate, lintest, blr, compare.
Output is JSON on stdout (CSV available for `compare`).  All randomness
flows from a single --seed; when omitted, a fresh seed is drawn and printed
in the output.  --deterministic suppresses the timestamp field so that equal
arguments and seeds give byte-identical output.

Exit statuses: 0 success, 2 usage/parse/domain errors, 3 capacity errors,
4 internal cross-check failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from . import gowers as gowers_mod
from . import qsim
from .boolfn import (
    BooleanFunction,
    bent_quadratic,
    linear,
    pack_point,
    random_function,
)
from .errors import AnfSyntaxError, CapacityError, CrossCheckError
from .estimate import hoeffding_bound, sample, validate_bound
from .lintest import (
    ComparisonReport,
    blr_exact_dyadic,
    blr_test,
    compare,
    quantum_linearity_test,
    rejection_lower_bound,
)
from .spectral import dist_to_linear, nonlinearity, walsh

FAMILIES = ("linear", "bent", "bent_quadratic", "random")


@dataclass
class RunConfig:
    """Validated run parameters; numeric checks happen before any computation."""

    command: str
    n: int
    seed: int
    seed_was_given: bool
    deterministic: bool
    anf: str | None = None
    tt_hex: str | None = None
    family: str | None = None
    u: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        seed_given = getattr(args, "seed", None) is not None
        if seed_given:
            seed = args.seed
            if seed < 0:
                raise ValueError("--seed must be a non-negative integer")
        else:
            seed = int(np.random.SeedSequence().entropy)
        cfg = cls(
            command=args.command,
            n=args.n,
            seed=seed,
            seed_was_given=seed_given,
            deterministic=bool(getattr(args, "deterministic", False)),
            anf=getattr(args, "anf", None),
            tt_hex=getattr(args, "tt_hex", None),
            family=getattr(args, "family", None),
            u=getattr(args, "u", None),
        )
        for name, low in (("shots", 1), ("trials", 1), ("m", 1), ("k", 1)):
            value = getattr(args, name, None)
            if value is not None and value < low:
                raise ValueError(f"--{name} must be >= {low}, got {value}")
        t = getattr(args, "t", None)
        if t is not None and not t > 0:
            raise ValueError(f"-t must be positive, got {t}")
        return cfg

    def function_choice_count(self) -> int:
        return sum(x is not None for x in (self.anf, self.tt_hex, self.family))

    def resolve_function(self) -> BooleanFunction:
        if self.function_choice_count() != 1:
            raise ValueError("specify exactly one of --anf, --tt-hex, --family")
        if self.anf is not None:
            return BooleanFunction.from_anf_string(self.anf, self.n)
        if self.tt_hex is not None:
            return BooleanFunction.from_hex(self.n, self.tt_hex)
        family = self.family
        if family in ("bent", "bent_quadratic"):
            return bent_quadratic(self.n)
        if family == "linear":
            if self.u is None:
                raise ValueError("--family linear requires --u <bit string>")
            return linear(self.n, self.u)
        if family == "random":
            return random_function(self.n, self.seed)
        raise ValueError(f"unknown family {family!r}")

    def uses_seed(self) -> bool:
        return self.family == "random" or self.command in (
            "estimate",
            "lintest",
            "blr",
            "compare",
        )


def _emit(cfg: RunConfig, payload: dict) -> None:
    out: dict = {"command": cfg.command, "n": cfg.n}
    if cfg.uses_seed():
        out["seed"] = cfg.seed
    if not cfg.deterministic:
        out["timestamp"] = datetime.now(timezone.utc).isoformat()
    out.update(payload)
    print(json.dumps(out, indent=2))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_analyze(cfg: RunConfig, args: argparse.Namespace) -> int:
    f = cfg.resolve_function()
    spec = walsh(f)
    eps, argmin = dist_to_linear(f)
    gv = gowers_mod.u2_spectral(f)
    payload = {
        "tt_hex": f.to_hex(),
        "anf": f.to_anf().to_string(),
        "weight": f.weight,
        "degree": f.degree(),
        "nonlinearity": nonlinearity(f),
        "dist_to_linear": {
            **eps.to_json_dict(),
            "argmin_u": "".join(map(str, argmin)),
            "argmin_index": pack_point(argmin),
        },
        "walsh": {
            "max_abs": spec.max_abs,
            "max_signed": spec.max_signed,
        },
        "u2": {"pow": gv.pow_value.to_json_dict(), "norm": gv.norm},
    }
    _emit(cfg, payload)
    return 0


def _gowers_routes(cfg: RunConfig, f: BooleanFunction, k: int, route: str) -> dict:
    if route == "spectral" and k != 2:
        raise ValueError("--route spectral is only defined for k = 2")
    if route == "derivatives" and k < 3:
        raise ValueError("--route derivatives requires k >= 3")
    if route == "all":
        names = ["definition", "spectral", "autocorrelation"] if k == 2 else ["definition"]
        if k >= 3:
            names.append("derivatives")
    else:
        names = [route]
    out = {}
    for name in names:
        if name == "definition":
            out[name] = gowers_mod.uk_definition(f, k)
        elif name == "spectral":
            out[name] = gowers_mod.u2_spectral(f)
        elif name == "autocorrelation":
            out[name] = gowers_mod.u2_autocorrelation(f)
        else:
            out[name] = gowers_mod.uk_via_derivatives(f, k)
    return out


def cmd_gowers(cfg: RunConfig, args: argparse.Namespace) -> int:
    f = cfg.resolve_function()
    results = _gowers_routes(cfg, f, args.k, args.route)
    values = list(results.values())
    agreement = all(v.pow_value == values[0].pow_value for v in values)
    if not agreement:
        detail = {name: str(v.pow_value) for name, v in results.items()}
        raise CrossCheckError(f"Gowers routes disagree: {detail}")
    payload = {
        "k": args.k,
        "route": args.route,
        "routes": {
            name: {"pow": v.pow_value.to_json_dict(), "norm": v.norm}
            for name, v in results.items()
        },
        "agreement": agreement,
    }
    _emit(cfg, payload)
    return 0


def cmd_simulate(cfg: RunConfig, args: argparse.Namespace) -> int:
    if args.circuit == "u2":
        circuit = qsim.build_u2_circuit(cfg.n)
    elif args.circuit == "u3_appendix":
        circuit = qsim.build_appendix_u3_circuit(cfg.n)
    else:
        if args.k is None:
            raise ValueError("--circuit derivative_walk requires -k")
        circuit = qsim.build_derivative_walk_circuit(cfg.n, args.k)
    has_function = cfg.function_choice_count() > 0
    if not (has_function or args.dump or args.audit):
        raise ValueError("nothing to do: give a function, --dump, or --audit")
    payload: dict = {
        "circuit": args.circuit,
        "registers": circuit.layout.m,
        "qubits": circuit.layout.qubits,
        "gate_count": len(circuit.gates),
        "oracle_count": circuit.oracle_count,
    }
    if args.k is not None:
        payload["k"] = args.k
    if args.dump:
        payload["dump"] = circuit.dump().splitlines()
    if args.audit:
        audit = qsim.phase_audit(circuit)
        payload["audit"] = {
            "status": audit.status,
            "oracle_calls": audit.oracle_count,
            "register_one_restored": audit.register_one_restored,
            "cosets": [list(c) for c in audit.cosets],
            "missing": [list(c) for c in audit.missing],
            "extra": [list(c) for c in audit.extra],
        }
    if has_function:
        f = cfg.resolve_function()
        state = qsim.run(circuit, f)
        amp0 = qsim.amplitude_at_zero(state)
        payload["amplitude_at_zero"] = amp0
        payload["probability_zero"] = amp0 * amp0
    _emit(cfg, payload)
    return 0


def cmd_estimate(cfg: RunConfig, args: argparse.Namespace) -> int:
    f = cfg.resolve_function()
    state = qsim.run(qsim.build_u2_circuit(cfg.n), f)
    samples = sample(state, args.m, cfg.seed)
    report = hoeffding_bound(samples, args.t)
    gv = gowers_mod.u2_spectral(f)
    payload = {
        "report": report.to_json_dict(f.to_hex()),
        "exact_norm": gv.norm,
        "exact_pow": gv.pow_value.to_json_dict(),
        "covered": gv.norm <= report.upper_bound,
    }
    if args.validate:
        coverage = validate_bound(f, args.m, args.t, args.trials, cfg.seed)
        payload["validate"] = {
            "trials": args.trials,
            "coverage": coverage,
            "meets_confidence_standard": coverage >= report.confidence_standard,
        }
    _emit(cfg, payload)
    return 0


def cmd_lintest(cfg: RunConfig, args: argparse.Namespace) -> int:
    f = cfg.resolve_function()
    verdict = quantum_linearity_test(f, args.shots, cfg.seed)
    eps_dy, argmin = dist_to_linear(f)
    eps = float(eps_dy)
    bound = None
    if 0.0 < eps <= 0.5:
        b = rejection_lower_bound(eps)
        bound = {"exact": b.exact, "exponential": b.exponential}
    payload = {
        "tt_hex": f.to_hex(),
        **verdict.to_json_dict(),
        "dist_to_linear": {**eps_dy.to_json_dict(), "argmin_u": "".join(map(str, argmin))},
        "rejection_lower_bound": bound,
    }
    _emit(cfg, payload)
    return 0


def cmd_blr(cfg: RunConfig, args: argparse.Namespace) -> int:
    f = cfg.resolve_function()
    verdict = blr_test(f, args.trials, cfg.seed)
    payload = {
        "tt_hex": f.to_hex(),
        **verdict.to_json_dict(),
        "accept_probability_exact_dyadic": blr_exact_dyadic(f).to_json_dict(),
    }
    _emit(cfg, payload)
    return 0


def cmd_compare(cfg: RunConfig, args: argparse.Namespace) -> int:
    f = cfg.resolve_function()
    report = compare(f, args.shots, cfg.seed)
    if args.format == "csv":
        print(ComparisonReport.csv_header())
        print(report.csv_row())
    else:
        _emit(cfg, report.to_json_dict())
    return 0


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------


def _add_function_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    group = p.add_argument_group("function")
    group.add_argument("--anf", help="ANF expression, e.g. 'x1*x2 + x3'")
    group.add_argument("--tt-hex", dest="tt_hex", help="hex truth table, MSB first")
    group.add_argument("--family", choices=FAMILIES, help="named function family")
    group.add_argument("--u", help="bit string selecting the linear function u.x")
    p.add_argument("-n", type=int, required=True, help="number of variables")
    p.add_argument("--seed", type=int, help="master RNG seed (drawn and printed if omitted)")
    p.add_argument(
        "--deterministic",
        action="store_true",
        help="suppress the timestamp so equal seeds give byte-identical output",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gowersim",
        description="Exact Gowers-norm analysis and simulated quantum linearity testing "
        "of Boolean functions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="weights, degree, spectrum, distances, U2")
    _add_function_args(p)

    p = sub.add_parser("gowers", help="exact U_k by one or all routes")
    _add_function_args(p)
    p.add_argument("-k", type=int, default=2, help="norm order (default 2)")
    p.add_argument(
        "--route",
        choices=("definition", "spectral", "derivatives", "all"),
        default="all",
    )

    p = sub.add_parser("simulate", help="run/dump/audit the norm circuits")
    _add_function_args(p)
    p.add_argument(
        "--circuit", choices=("u2", "u3_appendix", "derivative_walk"), required=True
    )
    p.add_argument("-k", type=int, help="walk order (derivative_walk only)")
    p.add_argument("--dump", action="store_true", help="print the gate list")
    p.add_argument("--audit", action="store_true", help="print the symbolic phase audit")

    p = sub.add_parser("estimate", help="Hoeffding upper bound on the U2 norm")
    _add_function_args(p)
    p.add_argument("-m", type=int, required=True, help="samples per trial")
    p.add_argument("-t", type=float, required=True, help="margin t > 0")
    p.add_argument("--validate", action="store_true", help="measure bound coverage")
    p.add_argument("--trials", type=int, default=200, help="trials for --validate")

    p = sub.add_parser("lintest", help="sampled quantum linearity test")
    _add_function_args(p)
    p.add_argument("--shots", type=int, default=1000)

    p = sub.add_parser("blr", help="sampled classical BLR linearity test")
    _add_function_args(p)
    p.add_argument("--trials", type=int, default=1000)

    p = sub.add_parser("compare", help="quantum vs BLR side by side")
    _add_function_args(p)
    p.add_argument("--shots", type=int, default=10000)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    return parser


_HANDLERS = {
    "analyze": cmd_analyze,
    "gowers": cmd_gowers,
    "simulate": cmd_simulate,
    "estimate": cmd_estimate,
    "lintest": cmd_lintest,
    "blr": cmd_blr,
    "compare": cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse signals usage errors (and --help) this way
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_args(args)
        return _HANDLERS[args.command](cfg, args)
    except AnfSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except CrossCheckError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
