"""Command-line front end.

Four commands: ``analyze`` reads a network spec (JSON) and writes a
stability/budget/steady-state report; ``sweep`` evaluates the fig1 or
fig2 scenario over a parameter grid and writes CSV; ``boundary`` writes
the three-mode separability line plus a Duan-value grid; ``verify``
runs the seeded suites and prints their statistics.

Exit codes: 0 success, 2 instability, 3 validation or analysis error,
4 verification-suite failure. All file output is deterministic: same
arguments, same bytes. Numbers in CSV carry 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .errors import BosonetError, StabilityError, ValidationError
from .linalg import eigenvalues, is_stable
from .network import (
    InputMoments,
    build_state_space,
    check_physical_realizability,
    is_passive,
    network_from_json,
)
from .budget import budget_report, compute_budget
from .steady import min_quadrature_variance, quadrature_variance, steady_covariance
from .scenarios import (
    FIG1_HEADER,
    FIG2_HEADER,
    FIG3_HEADER,
    ThreeModeParams,
    fig1_point,
    fig2_point,
    fig3_point,
    optimal_coupling,
    separability_boundary,
)
from .suites import DEFAULT_SEED, run_all

FRAME_CONVENTION = (
    "alpha = cosh(xi) a + sinh(xi) a_dagger; "
    "verdicts below the line are entangled, above separable"
)

_FIG1_FLAGS = {"gamma1", "gamma2", "xi", "g_script", "n1", "n2"}
_FIG2_FLAGS = {"gamma1", "gamma2", "g_minus", "g_plus", "n1", "n2"}
_FIG1_DEFAULTS = {
    "gamma1": 1.0,
    "gamma2": 1.0,
    "xi": 0.5,
    "g_script": 1.0,
    "n1": 0.0,
    "n2": 0.0,
}
_FIG2_DEFAULTS = {
    "gamma1": 4.0,
    "gamma2": 1.0,
    "g_minus": 3.0,
    "g_plus": 0.0,
    "n1": 0.0,
    "n2": 0.0,
}


class _Parser(argparse.ArgumentParser):
    """Argument errors surface as validation errors (exit code 3)."""

    def error(self, message):
        raise ValidationError(message)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return format(float(value), ".12g")


def _write_csv(path: str, header: tuple, rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}") from exc


def _parse_grid(text: str) -> tuple[str, list[float]]:
    parts = text.split(":")
    if len(parts) not in (4, 5):
        raise ValidationError(
            f"bad grid spec {text!r}, expected VAR:START:STOP:COUNT[:log]"
        )
    var = parts[0]
    try:
        start, stop = float(parts[1]), float(parts[2])
        count = int(parts[3])
    except ValueError as exc:
        raise ValidationError(f"bad grid spec {text!r}: {exc}") from exc
    scale = parts[4] if len(parts) == 5 else "linear"
    if scale not in ("linear", "log"):
        raise ValidationError(f"grid scale must be linear or log, got {scale!r}")
    if count < 2:
        raise ValidationError(f"grid count must be at least 2, got {count}")
    if scale == "log" and (start <= 0.0 or stop <= 0.0):
        raise ValidationError("log grids require positive endpoints")
    space = np.geomspace if scale == "log" else np.linspace
    return var, [float(v) for v in space(start, stop, count)]


def _moments_from_doc(doc, n_modes: int) -> InputMoments:
    if not isinstance(doc, dict):
        raise ValidationError("inputs: top level must be an object")
    unknown = set(doc) - {"channels"}
    if unknown:
        raise ValidationError(f"inputs: unknown keys {sorted(unknown)}")
    channels = doc.get("channels")
    if not isinstance(channels, list):
        raise ValidationError("inputs: 'channels' must be an array")
    if len(channels) != n_modes:
        raise ValidationError(
            f"inputs: expected {n_modes} channels, got {len(channels)}"
        )
    occupancy, anomalous = [], []
    for k, channel in enumerate(channels):
        if not isinstance(channel, dict):
            raise ValidationError(f"inputs: channels[{k}] must be an object")
        unknown = set(channel) - {"n", "m_re", "m_im"}
        if unknown:
            raise ValidationError(
                f"inputs: channels[{k}]: unknown keys {sorted(unknown)}"
            )
        try:
            occupancy.append(float(channel.get("n", 0.0)))
            anomalous.append(
                complex(float(channel.get("m_re", 0.0)), float(channel.get("m_im", 0.0)))
            )
        except (TypeError, ValueError) as exc:
            raise ValidationError(
                f"inputs: channels[{k}]: values must be numbers"
            ) from exc
    return InputMoments(np.array(occupancy), np.array(anomalous))


def cmd_analyze(args) -> int:
    spec = network_from_json(_load_json(args.spec))
    ss = build_state_space(spec)
    spectrum = eigenvalues(ss.drift)
    stable = is_stable(ss.drift)
    pr = check_physical_realizability(ss)
    report = {
        "network": {
            "n_modes": spec.n_modes,
            "gammas": [b.gamma for b in spec.baths],
            "passive": is_passive(spec),
        },
        "convention": {
            "doubled_ordering": ss.ordering,
            "vacuum_quadrature_variance": 0.5,
        },
        "stability": {
            "stable": stable,
            "max_real_part": float(spectrum.real.max()),
            "spectrum": [{"re": z.real, "im": z.imag} for z in spectrum],
        },
        "pr": {"residual": pr.residual, "tol": pr.tol, "passed": pr.passed},
    }
    if spec.labels is not None:
        report["network"]["labels"] = list(spec.labels)
    if not stable:
        worst = spectrum[0]  # sorted by descending real part
        report["stability"]["positive_eigenvalue"] = {
            "re": worst.real,
            "im": worst.imag,
        }
        _write_json(args.out, report)
        print(
            f"unstable drift: eigenvalue {worst.real:.6g}{worst.imag:+.6g}j "
            "has nonnegative real part",
            file=sys.stderr,
        )
        return 2
    report["budget"] = budget_report(compute_budget(ss))
    if args.inputs is not None:
        inputs = _moments_from_doc(_load_json(args.inputs), spec.n_modes)
        source = "file"
    else:
        inputs = InputMoments.from_baths(spec)
        source = "baths"
    cov = steady_covariance(ss, inputs)
    modes = []
    for mode in range(spec.n_modes):
        best = min_quadrature_variance(cov, mode)
        mu = cov.mu(mode)
        entry = {
            "mode": mode,
            "nu": cov.nu(mode),
            "mu_re": mu.real,
            "mu_im": mu.imag,
            "x_variance": quadrature_variance(cov, mode, 0.0),
            "y_variance": quadrature_variance(cov, mode, math.pi / 2),
            "min_variance": best.value,
            "min_theta": best.theta,
        }
        if spec.labels is not None:
            entry["label"] = spec.labels[mode]
        modes.append(entry)
    report["steady"] = {
        "inputs": {
            "source": source,
            "occupancy": [float(v) for v in inputs.occupancy],
            "anomalous_re": [float(v.real) for v in inputs.anomalous],
            "anomalous_im": [float(v.imag) for v in inputs.anomalous],
        },
        "modes": modes,
    }
    _write_json(args.out, report)
    return 0


def _fig1_task(task):
    var, value, fixed = task
    params = dict(fixed)
    params[var] = value
    try:
        row = fig1_point(
            params["g_script"],
            params["xi"],
            params["gamma1"],
            params["gamma2"],
            params["n1"],
            params["n2"],
        )
        return row, None
    except BosonetError as exc:
        row = (
            params["g_script"],
            params["xi"],
            params["gamma1"],
            params["gamma2"],
            math.nan,
            math.nan,
            math.nan,
        )
        return row, f"{var}={value:.12g}: {exc}"


def _fig2_task(task):
    var, value, fixed = task
    params = dict(fixed)
    params[var] = value
    try:
        row = fig2_point(
            params["delta_eta"],
            params["gamma1"],
            params["gamma2"],
            params["g_minus"],
            params["g_plus"],
            params["n1"],
            params["n2"],
        )
        return row, None
    except BosonetError as exc:
        row = (params["delta_eta"], params["gamma1"], params["gamma2"], math.nan, math.nan)
        return row, f"{var}={value:.12g}: {exc}"


def cmd_sweep(args) -> int:
    if args.workers < 1:
        raise ValidationError("--workers must be at least 1")
    var, values = _parse_grid(args.grid)
    if args.scenario == "fig1":
        allowed, defaults, task, header = _FIG1_FLAGS, _FIG1_DEFAULTS, _fig1_task, FIG1_HEADER
        grid_vars = {"g_script", "xi"}
    else:
        allowed, defaults, task, header = _FIG2_FLAGS, _FIG2_DEFAULTS, _fig2_task, FIG2_HEADER
        grid_vars = {"delta_eta"}
    if var not in grid_vars:
        raise ValidationError(
            f"scenario {args.scenario} can only sweep {sorted(grid_vars)}, got {var!r}"
        )
    for name in ("gamma1", "gamma2", "xi", "g_script", "g_minus", "g_plus", "n1", "n2"):
        given = getattr(args, name)
        if given is None:
            continue
        if name not in allowed:
            raise ValidationError(f"--{name.replace('_', '-')} does not apply to {args.scenario}")
        if name == var:
            raise ValidationError(f"--{name.replace('_', '-')} conflicts with the grid variable")
    fixed = {
        key: (getattr(args, key) if getattr(args, key) is not None else default)
        for key, default in defaults.items()
        if key != var
    }
    tasks = [(var, value, fixed) for value in values]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            outcomes = list(pool.map(task, tasks))
    else:
        outcomes = [task(t) for t in tasks]
    rows = []
    for (row, warning) in outcomes:
        rows.append(row)
        if warning is not None:
            print(f"warning: sweep point skipped: {warning}", file=sys.stderr)
    _write_csv(args.out, header, rows)
    return 0


def cmd_boundary(args) -> int:
    if args.g_script is not None:
        if args.g_plus is not None or args.g_minus is not None:
            raise ValidationError("give either --g-script or --g-plus/--g-minus, not both")
        params = ThreeModeParams(
            g_script=args.g_script,
            omega=args.omega,
            kappa=args.kappa,
            gamma_m=args.gamma_m,
            xi=args.xi if args.xi is not None else 0.5,
        )
    elif args.g_plus is not None and args.g_minus is not None:
        if args.xi is not None:
            raise ValidationError("--xi is implied by the sideband amplitudes")
        params = ThreeModeParams.from_sidebands(
            g_plus=args.g_plus,
            g_minus=args.g_minus,
            omega=args.omega,
            kappa=args.kappa,
            gamma_m=args.gamma_m,
        )
    else:
        raise ValidationError("boundary needs --g-script or both --g-plus and --g-minus")
    grids = {}
    for text in args.grid:
        var, values = _parse_grid(text)
        if var not in ("n_o", "n_m"):
            raise ValidationError(f"boundary grids are n_o and n_m, got {var!r}")
        if var in grids:
            raise ValidationError(f"duplicate grid for {var!r}")
        grids[var] = values
    if set(grids) != {"n_o", "n_m"}:
        raise ValidationError("boundary needs one n_o grid and one n_m grid")
    line = separability_boundary(params)
    opt = optimal_coupling(params.kappa, params.omega, params.gamma_m, params.xi)
    payload = {
        "boundary": {
            "slope": line.slope,
            "n_o_intercept": line.n_o_intercept,
            "n_m_intercept": line.n_m_intercept,
            "eta_e": line.eta_e,
            "xi": line.xi,
            "degenerate": line.degenerate,
        },
        "g_opt": {
            "formula": opt.g_formula,
            "numeric": opt.g_numeric,
            "eta_e_formula": opt.eta_e_formula,
            "eta_e_numeric": opt.eta_e_numeric,
        },
        "frame_convention": FRAME_CONVENTION,
        "parameters": {
            "g_script": params.g_script,
            "omega": params.omega,
            "kappa": params.kappa,
            "gamma_m": params.gamma_m,
            "xi": params.xi,
        },
    }
    _write_json(args.out, payload)
    rows = [
        fig3_point(params, n_o, n_m)
        for n_o in grids["n_o"]
        for n_m in grids["n_m"]
    ]
    if args.out_csv is not None:
        csv_path = args.out_csv
    elif args.out.endswith(".json"):
        csv_path = args.out[: -len(".json")] + ".csv"
    else:
        csv_path = args.out + ".csv"
    _write_csv(csv_path, FIG3_HEADER, rows)
    return 0


def cmd_verify(args) -> int:
    results, passed = run_all(args.seed, args.tol)
    payload = {
        "seed": int(args.seed),
        "tol": args.tol,
        "passed": passed,
        "suites": [
            {"name": r.name, "passed": r.passed, "stats": r.stats} for r in results
        ],
    }
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0 if passed else 4


def build_parser() -> _Parser:
    parser = _Parser(prog="bosonet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="report on one network spec")
    analyze.add_argument("--spec", required=True, help="network spec JSON file")
    analyze.add_argument("--inputs", help="input moments JSON file (default: bath moments)")
    analyze.add_argument("--out", required=True, help="report JSON path")
    analyze.set_defaults(handler=cmd_analyze)

    sweep = sub.add_parser("sweep", help="evaluate a scenario over a grid, write CSV")
    sweep.add_argument("--scenario", required=True, choices=("fig1", "fig2"))
    sweep.add_argument("--grid", required=True, help="VAR:START:STOP:COUNT[:log]")
    sweep.add_argument("--out", required=True, help="CSV path")
    sweep.add_argument("--workers", type=int, default=1, help="parallel workers")
    for flag in ("gamma1", "gamma2", "xi", "g-script", "g-minus", "g-plus", "n1", "n2"):
        sweep.add_argument(f"--{flag}", type=float, default=None)
    sweep.set_defaults(handler=cmd_sweep)

    boundary = sub.add_parser("boundary", help="separability line and Duan grid")
    boundary.add_argument("--kappa", type=float, default=1.0)
    boundary.add_argument("--omega", type=float, default=1.0)
    boundary.add_argument("--gamma-m", type=float, default=0.01)
    boundary.add_argument("--g-script", type=float, default=None)
    boundary.add_argument("--xi", type=float, default=None)
    boundary.add_argument("--g-plus", type=float, default=None)
    boundary.add_argument("--g-minus", type=float, default=None)
    boundary.add_argument(
        "--grid",
        action="append",
        default=[],
        help="one n_o and one n_m grid, VAR:START:STOP:COUNT[:log]",
    )
    boundary.add_argument("--out", required=True, help="report JSON path")
    boundary.add_argument("--out-csv", default=None, help="grid CSV path (default: derived)")
    boundary.set_defaults(handler=cmd_boundary)

    verify = sub.add_parser("verify", help="run the seeded verification suites")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--tol", type=float, default=None, help="override residual thresholds")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except StabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BosonetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
