import math
from dataclasses import replace

import numpy as np
import pytest

from bosonet.errors import ApplicabilityError, FrameError, StabilityError
from bosonet.network import build_state_space, is_passive
from bosonet.scenarios import (
    FIG1_HEADER,
    FIG2_HEADER,
    FIG3_HEADER,
    ParametricParams,
    ThreeModeParams,
    TwoModeParams,
    boundary_line,
    duan_quantity,
    fig1_point,
    fig2_point,
    fig3_point,
    optimal_coupling,
    parametric_blocks,
    parametric_bound,
    parametric_network,
    parametric_optimum,
    parametric_variance_check,
    separability_boundary,
    three_mode_budget,
    three_mode_frame_network,
    three_mode_physical_network,
    two_mode_network,
    two_mode_squeezing_power,
)


def squeeze_params(g_script, xi, gamma1=1.0, gamma2=1.0, n1=0.0, n2=0.0):
    return TwoModeParams(
        g_plus=g_script * math.sinh(xi),
        g_minus=g_script * math.cosh(xi),
        gamma1=gamma1,
        gamma2=gamma2,
        n1=n1,
        n2=n2,
    )


THREE_MODE = ThreeModeParams(
    g_script=1.0, omega=1.0, kappa=1.0, gamma_m=0.01, xi=0.5
)


class TestTwoModeParams:
    def test_frame_parameters(self):
        p = TwoModeParams(g_plus=0.5, g_minus=1.0, gamma1=1.0, gamma2=1.0)
        assert abs(p.g_script - math.sqrt(0.75)) < 1e-15
        assert abs(p.xi - math.atanh(0.5)) < 1e-15

    def test_no_frame_when_squeeze_dominates(self):
        p = TwoModeParams(g_plus=1.0, g_minus=0.5, gamma1=1.0, gamma2=1.0)
        with pytest.raises(FrameError, match="g_plus = 1 must be below"):
            p.g_script
        with pytest.raises(FrameError):
            two_mode_squeezing_power(p)

    def test_network_matches_params(self):
        p = TwoModeParams(g_plus=0.3, g_minus=0.8, gamma1=2.0, gamma2=0.5)
        spec = two_mode_network(p)
        assert spec.n_modes == 2
        assert not is_passive(spec)
        kinds = sorted(c.kind for c in spec.couplings)
        assert kinds == ["beam_splitter", "two_mode_squeeze"]


class TestSqueezingPower:
    def test_no_squeeze_gives_vacuum_noise(self):
        result = two_mode_squeezing_power(
            TwoModeParams(g_plus=0.0, g_minus=1.0, gamma1=1.0, gamma2=1.0)
        )
        assert abs(result.norm_var1 - 1.0) < 1e-12
        assert abs(result.norm_var2 - 1.0) < 1e-12
        assert abs(result.sum - 2.0) < 1e-12

    def test_weak_damping_reference_point(self):
        result = two_mode_squeezing_power(
            TwoModeParams(g_plus=0.5, g_minus=1.0, gamma1=0.1, gamma2=0.1)
        )
        assert result.sum == pytest.approx(1.3355481727574756, abs=1e-13)
        assert result.norm_var1 == pytest.approx(0.667774086378738, abs=1e-13)
        assert result.norm_var2 == pytest.approx(0.6677740863787375, abs=1e-13)
        assert result.alpha_normalized_variance == pytest.approx(
            1.9966777408637868, abs=1e-13
        )
        assert result.sum > 1.0
        assert result.slack > 0.0

    def test_strong_coupling_approaches_its_floor(self):
        result = two_mode_squeezing_power(squeeze_params(50.0, 0.5))
        floor = 1.0 + math.exp(-1.0)
        assert result.sum == pytest.approx(1.3679426469067515, abs=1e-13)
        assert result.sum > floor
        assert result.sum - floor < 1e-4

    def test_sum_decreases_with_coupling_and_respects_floor(self):
        xi = 0.7
        floor = 1.0 + math.exp(-2.0 * xi)
        sums = [
            two_mode_squeezing_power(squeeze_params(g, xi)).sum
            for g in np.geomspace(0.2, 40.0, 12)
        ]
        assert all(s >= floor - 1e-12 for s in sums)
        assert all(a > b for a, b in zip(sums, sums[1:]))

    def test_bound_is_never_violated_for_thermal_inputs(self):
        result = two_mode_squeezing_power(
            squeeze_params(2.0, 0.8, gamma1=0.3, gamma2=1.7, n1=0.3, n2=1.7)
        )
        assert result.slack >= -1e-12
        assert result.sum >= result.bound - 1e-12


class TestParametricBound:
    def test_balanced_no_split(self):
        p = ParametricParams(g_plus=0.0, g_minus=1.0, gamma1=1.0, gamma2=1.0)
        assert parametric_bound(p) == 1.0

    def test_balanced_with_split(self):
        p = ParametricParams(
            g_plus=0.0, g_minus=1.0, gamma1=1.0, gamma2=1.0, eta1=1.0
        )
        assert abs(parametric_bound(p) - 4.0 / 3.0) < 1e-15

    def test_unbalanced_optimum_value(self):
        p = ParametricParams(
            g_plus=0.0,
            g_minus=3.0,
            gamma1=4.0,
            gamma2=1.0,
            eta1=5.0 / 6.0,
            eta2=-5.0 / 6.0,
        )
        assert abs(parametric_bound(p) - 0.9) < 1e-12

    def test_split_at_stability_edge_rejected(self):
        p = ParametricParams(
            g_plus=0.0, g_minus=1.0, gamma1=1.0, gamma2=1.0, eta1=2.0
        )
        with pytest.raises(StabilityError):
            parametric_bound(p)


class TestParametricOptimum:
    def test_equal_rates(self):
        opt = parametric_optimum(1.0, 1.0)
        assert abs(opt.delta_eta_star) < 1e-12
        assert abs(opt.min_value - 1.0) < 1e-12

    def test_four_to_one(self):
        opt = parametric_optimum(4.0, 1.0)
        assert abs(opt.delta_eta_star - 5.0 / 3.0) < 1e-12
        assert abs(opt.min_value - 0.9) < 1e-12
        assert abs(opt.numeric_min_value - 0.9) < 1e-9

    def test_extreme_asymmetry_approaches_half(self):
        opt = parametric_optimum(1.0e4, 1.0)
        assert abs(opt.min_value - (0.5 + 100.0 / 10001.0)) < 1e-12


class TestParametricVarianceCheck:
    def test_zero_split_reduces_to_squeezing_power(self):
        two_mode = two_mode_squeezing_power(
            TwoModeParams(g_plus=0.5, g_minus=1.0, gamma1=0.1, gamma2=0.1)
        )
        check = parametric_variance_check(
            ParametricParams(g_plus=0.5, g_minus=1.0, gamma1=0.1, gamma2=0.1)
        )
        assert abs(check.sum_x - two_mode.sum) < 1e-12
        assert abs(check.ratio_x1 - two_mode.norm_var1) < 1e-12
        assert abs(check.ratio_y1 - two_mode.alpha_normalized_variance) < 1e-12
        assert check.min_slack >= -1e-9

    def test_balanced_sweep_respects_split_bound(self):
        for de in np.linspace(-1.8, 1.8, 13):
            p = ParametricParams(
                g_plus=0.0,
                g_minus=3.0,
                gamma1=1.0,
                gamma2=1.0,
                eta1=de / 2.0,
                eta2=-de / 2.0,
            )
            check = parametric_variance_check(p)
            assert abs(check.sum_y_bound - 4.0 / (4.0 - de * de) * (4.0 - 0.0 * de) / 4.0) < 1e-12
            assert check.min_slack >= -1e-9
            assert check.sum_y >= check.sum_y_bound - 1e-9
            assert check.sum_x >= check.sum_x_bound - 1e-9

    def test_x_and_y_bounds_mirror_under_split_sign(self):
        p = ParametricParams(
            g_plus=0.0, g_minus=3.0, gamma1=4.0, gamma2=1.0, eta1=0.9
        )
        q = ParametricParams(
            g_plus=0.0, g_minus=3.0, gamma1=4.0, gamma2=1.0, eta2=0.9
        )
        cp, cq = parametric_variance_check(p), parametric_variance_check(q)
        assert abs(cp.sum_y_bound - cq.sum_x_bound) < 1e-12
        assert abs(cp.sum_x_bound - cq.sum_y_bound) < 1e-12

    def test_unstable_block_is_named(self):
        p = ParametricParams(
            g_plus=0.0, g_minus=0.0, gamma1=1.0, gamma2=1.0, eta1=2.0
        )
        with pytest.raises(StabilityError, match=r"\('X1', 'Y2'\)"):
            parametric_variance_check(p)

    def test_blocks_split_the_quadratures(self):
        p = ParametricParams(
            g_plus=0.0, g_minus=3.0, gamma1=4.0, gamma2=1.0, eta1=0.5
        )
        first, second = parametric_blocks(p)
        assert first.labels == ("X1", "Y2")
        assert second.labels == ("X2", "Y1")
        assert first.drift.shape == (2, 2)
        assert abs(first.drift[0, 0] - (-(4.0 - 0.5) / 2.0)) < 1e-14
        assert abs(second.drift[0, 0] - (-(1.0 + 0.0) / 2.0)) < 1e-14
        assert np.allclose(first.noise, np.diag([4.0, 1.0]) / 2.0)


class TestThreeModeBudget:
    def test_no_coupling_leaves_optical_mode_alone(self):
        budget = three_mode_budget(
            ThreeModeParams(g_script=0.0, omega=1.0, kappa=1.0, gamma_m=0.01)
        )
        assert abs(budget.transfer[0, 0] - 1.0) < 1e-12
        assert budget.eta_e == pytest.approx(0.0, abs=1e-12)

    def test_no_mechanical_exchange_decouples_third_mode(self):
        budget = three_mode_budget(replace(THREE_MODE, omega=0.0))
        assert np.abs(budget.transfer[2] - np.array([0.0, 0.0, 1.0])).max() < 1e-12

    def test_reference_extraction_efficiency(self):
        budget = three_mode_budget(THREE_MODE)
        assert budget.eta_e == pytest.approx(1.9417429974751599, abs=1e-12)
        assert 0.0 < budget.eta_e < 2.0

    def test_transfer_rows_sum_to_one(self):
        budget = three_mode_budget(THREE_MODE)
        assert np.abs(budget.transfer.sum(axis=1) - 1.0).max() < 1e-10

    def test_frame_network_is_passive(self):
        assert is_passive(three_mode_frame_network(THREE_MODE))
        assert not is_passive(three_mode_physical_network(THREE_MODE))


class TestDuanQuantity:
    def test_uncoupled_vacuum_sits_on_the_classical_edge(self):
        # exactly on the boundary, so the verdict bit is left unchecked
        result = duan_quantity(
            ThreeModeParams(g_script=0.0, omega=1.0, kappa=1.0, gamma_m=0.01)
        )
        assert abs(result.direct - 1.0) < 1e-10
        assert abs(result.budget - 1.0) < 1e-10

    def test_no_squeeze_never_entangles(self):
        for g in (0.3, 1.0, 2.0):
            result = duan_quantity(
                ThreeModeParams(g_script=g, omega=1.0, kappa=1.0, gamma_m=0.01)
            )
            assert result.direct >= 1.0 - 1e-10

    def test_reference_point_via_both_routes(self):
        result = duan_quantity(THREE_MODE)
        assert result.direct == pytest.approx(0.3862921656672832, abs=1e-12)
        assert abs(result.direct - result.budget) < 1e-8
        assert result.entangled
        assert result.pairing == "x_sigma_p_delta"

    def test_hot_baths_destroy_entanglement(self):
        result = duan_quantity(replace(THREE_MODE, n_o=2.0, n_m=2.0))
        assert not result.entangled
        assert abs(result.direct - result.budget) < 1e-8


class TestBoundary:
    def test_no_squeeze_is_degenerate(self):
        line = boundary_line(1.0, 0.0)
        assert line.degenerate
        assert line.n_o_intercept == 0.0
        assert line.n_m_intercept == 0.0

    def test_reference_line(self):
        line = boundary_line(1.0, 0.5)
        assert line.slope == pytest.approx(-0.36787944117144233, abs=1e-15)
        assert line.n_o_intercept == pytest.approx(0.8591409142295225, abs=1e-15)
        assert line.n_m_intercept == pytest.approx(0.31606027941427883, abs=1e-15)
        assert abs(line.n_m_at(0.0) - line.n_m_intercept) < 1e-15
        assert abs(line.n_m_at(line.n_o_intercept)) < 1e-15

    def test_optical_intercept_formula(self):
        for xi in (0.1, 0.5, 1.2):
            line = boundary_line(0.7, xi)
            assert line.n_o_intercept == 0.5 * (math.exp(2.0 * xi) - 1.0)

    def test_vanishing_efficiency_flattens_the_line(self):
        line = boundary_line(0.0, 0.5)
        assert line.slope == 0.0
        assert line.n_m_intercept == 0.0

    def test_efficiency_domain(self):
        with pytest.raises(ApplicabilityError):
            boundary_line(2.0, 0.5)
        with pytest.raises(ApplicabilityError):
            boundary_line(-0.1, 0.5)

    def test_scheme_boundary_uses_its_own_efficiency(self):
        line = separability_boundary(THREE_MODE)
        budget = three_mode_budget(THREE_MODE)
        assert line.eta_e == budget.eta_e
        assert line.xi == THREE_MODE.xi

    def test_line_separates_duan_outcomes(self):
        line = separability_boundary(THREE_MODE)
        n_o = 0.3
        edge = line.n_m_at(n_o)
        below = duan_quantity(replace(THREE_MODE, n_o=n_o, n_m=max(edge - 0.05, 0.0)))
        above = duan_quantity(replace(THREE_MODE, n_o=n_o, n_m=edge + 0.05))
        assert below.entangled
        assert not above.entangled


class TestOptimalCoupling:
    def test_reference_formula_value(self):
        opt = optimal_coupling(1.0, 1.0, 0.01)
        assert opt.g_formula == pytest.approx(1.057371263440564, abs=1e-12)
        expected = math.sqrt(0.5 * math.sqrt(1.0 + 4.0))
        assert abs(opt.g_formula - expected) < 1e-12

    def test_formula_tracks_numeric_optimum(self):
        opt = optimal_coupling(1.0, 1.0, 0.001)
        ratio = opt.eta_e_formula / opt.eta_e_numeric
        assert ratio >= 0.99
        assert opt.eta_e_numeric <= 2.0

    def test_weak_exchange_limit(self):
        opt = optimal_coupling(1.0, 0.001, 0.01)
        assert opt.g_formula < 0.05


class TestSidebandConstruction:
    def test_from_sidebands_matches_frame_parameters(self):
        p = ThreeModeParams.from_sidebands(
            g_plus=0.5, g_minus=1.0, omega=1.0, kappa=1.0, gamma_m=0.01
        )
        assert abs(p.g_script - math.sqrt(0.75)) < 1e-12
        assert abs(p.xi - math.atanh(0.5)) < 1e-12

    def test_from_sidebands_rejects_dominant_squeeze(self):
        with pytest.raises(FrameError):
            ThreeModeParams.from_sidebands(
                g_plus=1.0, g_minus=0.5, omega=1.0, kappa=1.0, gamma_m=0.01
            )


class TestRowHelpers:
    def test_header_constants(self):
        assert FIG1_HEADER == (
            "g_script",
            "xi",
            "gamma1",
            "gamma2",
            "norm_var1",
            "norm_var2",
            "sum",
        )
        assert FIG2_HEADER == ("delta_eta", "gamma1", "gamma2", "bound", "direct_sum")
        assert FIG3_HEADER == ("n_o", "n_m", "duan_direct", "duan_budget", "entangled")

    def test_fig1_row(self):
        row = fig1_point(50.0, 0.5, 1.0, 1.0)
        assert len(row) == len(FIG1_HEADER)
        assert row[0] == 50.0
        assert row[6] == pytest.approx(1.3679426469067515, abs=1e-13)

    def test_fig2_row(self):
        row = fig2_point(5.0 / 3.0, 4.0, 1.0, g_minus=3.0)
        assert len(row) == len(FIG2_HEADER)
        assert row[3] == pytest.approx(0.9, abs=1e-12)
        assert row[4] >= row[3] - 1e-9

    def test_fig3_row(self):
        row = fig3_point(THREE_MODE, 0.0, 0.0)
        assert len(row) == len(FIG3_HEADER)
        assert row[2] == pytest.approx(0.3862921656672832, abs=1e-12)
        assert row[4] is True
