"""End-to-end acceptance checks, one per shipped guarantee.

Each test prints a single PASS/FAIL line so the whole gate can be read
off a plain pytest -v run. Tolerances are fixed here on purpose; do not
loosen them to make a failing build green.
"""

import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from bosonet.budget import budget_via_spectrum, compute_budget
from bosonet.network import (
    BathSpec,
    InputMoments,
    NetworkSpec,
    beam_splitter,
    build_state_space,
    check_physical_realizability,
)
from bosonet.scenarios import (
    ParametricParams,
    ThreeModeParams,
    TwoModeParams,
    duan_quantity,
    parametric_optimum,
    parametric_variance_check,
    two_mode_squeezing_power,
)
from bosonet.suites import (
    DEFAULT_SEED,
    random_network,
    random_three_mode,
    suite_boundary_flip,
    suite_g_opt,
    suite_steady_physics,
)


def verdict(name, ok, detail):
    print(f"{name}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


def exchange_pair(g, gamma1, gamma2):
    return build_state_space(
        NetworkSpec(
            2, [BathSpec(gamma1), BathSpec(gamma2)], [beam_splitter(g, 0, 1)]
        )
    )


def squeeze_params(g_script, xi, gamma=1.0, n1=0.0, n2=0.0):
    return TwoModeParams(
        g_plus=g_script * math.sinh(xi),
        g_minus=g_script * math.cosh(xi),
        gamma1=gamma,
        gamma2=gamma,
        n1=n1,
        n2=n2,
    )


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "bosonet", *args], capture_output=True, text=True
    )


def test_criterion_01_ccr_sum_rule():
    started = time.monotonic()
    rng = np.random.default_rng(DEFAULT_SEED)
    worst_completeness = 0.0
    worst_pr = 0.0
    for _ in range(100):
        ss = build_state_space(random_network(rng))
        budget = compute_budget(ss)
        total = budget.per_channel_k.sum(axis=0)
        worst_completeness = max(
            worst_completeness, float(np.abs(total - np.eye(ss.n_modes)).max())
        )
        worst_pr = max(worst_pr, check_physical_realizability(ss).residual)
    elapsed = time.monotonic() - started
    ok = worst_completeness < 1e-9 and worst_pr < 1e-12 and elapsed < 10.0
    assert verdict(
        "criterion 01 ccr sum rule",
        ok,
        f"completeness {worst_completeness:.2e}, pr {worst_pr:.2e}, {elapsed:.1f}s",
    )


def test_criterion_02_route_agreement():
    started = time.monotonic()
    rng = np.random.default_rng(DEFAULT_SEED)
    worst = 0.0
    for index in range(100):
        ss = build_state_space(random_network(rng, nonpassive=(index % 3 == 0)))
        direct = compute_budget(ss)
        spectral = budget_via_spectrum(ss, abs_tol=1e-7)
        worst = max(
            worst, float(np.abs(direct.per_channel_w - spectral.per_channel_w).max())
        )
    elapsed = time.monotonic() - started
    ok = worst <= 1e-6 and elapsed < 60.0
    assert verdict(
        "criterion 02 route agreement",
        ok,
        f"max entrywise gap {worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_03_closed_form_transfer():
    worst = 0.0
    for g in (0.1, 0.5, 1.0, 3.0, 10.0):
        for gamma1, gamma2 in (
            (1.0, 1.0),
            (4.0, 1.0),
            (0.2, 5.0),
            (2.0, 2.0),
            (1.0, 0.1),
        ):
            budget = compute_budget(exchange_pair(g, gamma1, gamma2))
            s = gamma1 + gamma2
            d = gamma1 * gamma2 + 4.0 * g * g
            expected = 4.0 * g * g * gamma2 / (s * d)
            worst = max(worst, abs(budget.transfer[0, 1] - expected))
    balanced = float(compute_budget(exchange_pair(0.5, 1.0, 1.0)).transfer[0, 1])
    ok = worst < 1e-12 and abs(balanced - 0.25) < 1e-15
    assert verdict(
        "criterion 03 closed-form transfer",
        ok,
        f"25-point max error {worst:.2e}, balanced value {balanced!r}",
    )


def test_criterion_04_dissipative_bound_and_saturation():
    worst_slack = math.inf
    for g_script in np.geomspace(0.1, 50.0, 20):
        for xi in np.linspace(0.0, 1.5, 20):
            for n1, n2 in ((0.0, 0.0), (0.3, 1.7)):
                result = two_mode_squeezing_power(
                    squeeze_params(float(g_script), float(xi), n1=n1, n2=n2)
                )
                worst_slack = min(worst_slack, result.sum - 1.0)
    strong = two_mode_squeezing_power(squeeze_params(50.0, 0.5)).sum
    floor = 1.0 + math.exp(-2.0 * 0.5)
    ok = worst_slack >= -1e-9 and strong <= 1.02
    assert verdict(
        "criterion 04 dissipative bound",
        ok,
        f"grid min slack {worst_slack:.2e}, strong-coupling sum {strong!r} "
        f"(hyperbolic-frame floor 1+e^-2xi = {floor!r})",
    )


def test_criterion_05_parametric_optimum_and_grid():
    opt = parametric_optimum(4.0, 1.0)
    optimum_ok = (
        abs(opt.delta_eta_star - 5.0 / 3.0) < 1e-9
        and abs(opt.min_value - 0.9) < 1e-9
        and abs(opt.numeric_min_value - opt.min_value) < 1e-9
    )
    min_slack = math.inf
    for gamma1, gamma2 in ((1.0, 1.0), (4.0, 1.0), (0.5, 2.0)):
        s = gamma1 + gamma2
        for de in np.linspace(-0.9 * s, 0.9 * s, 13):
            check = parametric_variance_check(
                ParametricParams(
                    g_plus=0.0,
                    g_minus=3.0,
                    gamma1=gamma1,
                    gamma2=gamma2,
                    eta1=float(de) / 2.0,
                    eta2=-float(de) / 2.0,
                )
            )
            min_slack = min(
                min_slack,
                check.sum_y - check.sum_y_bound,
                check.sum_x - check.sum_x_bound,
            )
    ok = optimum_ok and min_slack >= -1e-9
    assert verdict(
        "criterion 05 parametric optimum",
        ok,
        f"optimum ({opt.delta_eta_star!r}, {opt.min_value!r}), "
        f"grid min slack {min_slack:.2e}",
    )


def test_criterion_06_duan_route_equivalence():
    rng = np.random.default_rng(DEFAULT_SEED)
    worst = 0.0
    for _ in range(50):
        result = duan_quantity(random_three_mode(rng))
        worst = max(worst, abs(result.direct - result.budget))
    edge = duan_quantity(
        ThreeModeParams(g_script=0.0, omega=1.0, kappa=1.0, gamma_m=0.01)
    )
    ok = worst <= 1e-8 and abs(edge.direct - 1.0) <= 1e-10
    assert verdict(
        "criterion 06 duan routes",
        ok,
        f"50-set max route gap {worst:.2e}, uncoupled vacuum {edge.direct!r}",
    )


def test_criterion_07_boundary_intercept_and_flips():
    from bosonet.scenarios import boundary_line

    formula_ok = all(
        boundary_line(0.7, xi).n_o_intercept == 0.5 * (math.exp(2.0 * xi) - 1.0)
        for xi in (0.1, 0.5, 1.2)
    )
    flips = suite_boundary_flip(np.random.default_rng([DEFAULT_SEED, 7]))
    ok = formula_ok and flips.passed
    assert verdict(
        "criterion 07 separability boundary",
        ok,
        f"intercept formula exact: {formula_ok}, verdict flips: {flips.stats}",
    )


def test_criterion_08_optimal_coupling_formula():
    result = suite_g_opt(np.random.default_rng([DEFAULT_SEED, 8]))
    ok = result.passed and result.stats["min_eta_ratio"] >= 0.99
    assert verdict(
        "criterion 08 optimal coupling",
        ok,
        f"min formula/numeric efficiency ratio {result.stats['min_eta_ratio']:.4f}",
    )


def test_criterion_09_steady_state_physics():
    result = suite_steady_physics(np.random.default_rng([DEFAULT_SEED, 9]))
    ok = result.passed
    assert verdict(
        "criterion 09 steady-state physics",
        ok,
        f"cov min eig {result.stats['min_covariance_eigenvalue']:.2e}, "
        f"heisenberg min {result.stats['min_heisenberg_product']:.4f}, "
        f"decomposition gap {result.stats['max_decomposition_diff']:.2e}",
    )


def test_criterion_10_determinism(tmp_path):
    outputs = []
    for run in range(2):
        verify = run_cli("verify")
        fig1 = tmp_path / f"fig1_{run}.csv"
        fig2 = tmp_path / f"fig2_{run}.csv"
        bnd = tmp_path / f"b_{run}.json"
        ok_codes = verify.returncode == 0
        ok_codes &= (
            run_cli(
                "sweep",
                "--scenario",
                "fig1",
                "--grid",
                "g_script:0.5:30:12:log",
                "--out",
                str(fig1),
            ).returncode
            == 0
        )
        ok_codes &= (
            run_cli(
                "sweep",
                "--scenario",
                "fig2",
                "--grid",
                "delta_eta:-4:4:17",
                "--workers",
                "2",
                "--out",
                str(fig2),
            ).returncode
            == 0
        )
        ok_codes &= (
            run_cli(
                "boundary",
                "--g-script",
                "0.8",
                "--xi",
                "0.5",
                "--grid",
                "n_o:0:1:3",
                "--grid",
                "n_m:0:0.4:3",
                "--out",
                str(bnd),
            ).returncode
            == 0
        )
        assert ok_codes
        outputs.append(
            (
                verify.stdout,
                fig1.read_bytes(),
                fig2.read_bytes(),
                bnd.read_bytes(),
                (tmp_path / f"b_{run}.csv").read_bytes(),
            )
        )
    ok = outputs[0] == outputs[1]
    assert verdict(
        "criterion 10 determinism",
        ok,
        "verify stdout, both sweeps, and boundary outputs byte-identical",
    )
