"""Per-channel commutator accounting for stable networks.

Each input channel's vacuum fluctuations are tracked through the
network by a channel-resolved Lyapunov equation; the annihilation-sector
blocks K_i sum to the identity (the output modes stay canonical), and
their diagonals say what fraction of each mode's commutator each
channel supplies. A frequency-domain route computes the same objects by
integrating the resolvent, which gives an independent cross-check of
the time-domain solve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ApplicabilityError, DimensionError, NumericsError
from .linalg import TOL, integrate_spectrum, require_stable, solve_lyapunov
from .network import StateSpace, passive_state_space

_IMAG_LEAK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CommutatorBudget:
    """Channel-resolved commutator shares.

    per_channel_w[i] is the full doubled-space solution for channel i,
    per_channel_k[i] its annihilation block K_i, and transfer[i, j] =
    (K_j)_{ii} is the share of mode i's commutator supplied by channel
    j. Rows of ``transfer`` sum to one for a stable network.
    """

    per_channel_w: np.ndarray
    per_channel_k: np.ndarray
    transfer: np.ndarray
    gammas: np.ndarray
    passive: bool

    @property
    def n_modes(self) -> int:
        return int(self.transfer.shape[0])


def _budget_from_kernels(ws: np.ndarray, gammas: np.ndarray, passive: bool) -> CommutatorBudget:
    n = gammas.shape[0]
    ks = ws[:, :n, :n]
    transfer = np.empty((n, n))
    for j in range(n):
        diag = np.diag(ks[j])
        leak = float(np.abs(diag.imag).max(initial=0.0))
        if leak > _IMAG_LEAK_TOL:
            raise NumericsError(
                "commutator shares picked up an imaginary part", estimate=leak
            )
        transfer[:, j] = diag.real
    return CommutatorBudget(
        per_channel_w=ws,
        per_channel_k=ks,
        transfer=transfer,
        gammas=gammas,
        passive=passive,
    )


def compute_budget(ss: StateSpace) -> CommutatorBudget:
    """Solve one Lyapunov equation per input channel.

    Channel i feeds the signed vacuum source gamma_i (e_i e_i^H -
    e_{N+i} e_{N+i}^H); the solution's annihilation block is that
    channel's contribution to the commutator matrix.
    """
    n = ss.n_modes
    gammas = ss.gammas
    ws = np.empty((n, 2 * n, 2 * n), dtype=complex)
    for i in range(n):
        source = np.zeros((2 * n, 2 * n), dtype=complex)
        source[i, i] = gammas[i]
        source[n + i, n + i] = -gammas[i]
        ws[i] = solve_lyapunov(ss.drift, source)
    return _budget_from_kernels(ws, gammas, passive_state_space(ss))


def budget_via_spectrum(
    ss: StateSpace, abs_tol: float = TOL.quadrature_abs
) -> CommutatorBudget:
    """Frequency-domain route: integrate the resolvent over the line.

    Computes (1/2pi) int T(w) S_j T(w)^H dw with T = (-iw - A)^{-1} D
    and S_j the channel-j signed vacuum source, for every channel in one
    batched pass. Drift eigenvalues seed integration breakpoints so that
    narrow resonances are not stepped over.
    """
    n = ss.n_modes
    spectrum = require_stable(ss.drift)
    eye = np.eye(2 * n, dtype=complex)

    def kernel(omegas: np.ndarray) -> np.ndarray:
        shift = -1j * omegas[:, None, None] * eye - ss.drift
        t = np.linalg.solve(shift, np.broadcast_to(ss.input, shift.shape))
        upper = t[:, :, :n]
        lower = t[:, :, n:]
        s1 = np.einsum("bij,bkj->bjik", upper, upper.conj())
        s2 = np.einsum("bij,bkj->bjik", lower, lower.conj())
        return s1 - s2

    breakpoints = []
    for lam in spectrum:
        center = -lam.imag
        width = max(abs(lam.real), 1e-6)
        breakpoints.extend(
            [center - 3 * width, center - width, center, center + width, center + 3 * width]
        )
    ws = integrate_spectrum(kernel, abs_tol=abs_tol, breakpoints=breakpoints)
    return _budget_from_kernels(ws, ss.gammas, passive_state_space(ss))


@dataclass(frozen=True)
class SumRuleReport:
    completeness_residual: float
    metric_residual: float
    gamma_rule_residuals: tuple[float, ...] | None
    positivity_min_eigs: tuple[float, ...] | None
    passed: bool


def verify_sum_rules(
    budget: CommutatorBudget,
    completeness_tol: float = 1e-9,
    metric_tol: float = 1e-9,
    gamma_tol: float = 1e-9,
    positivity_floor: float = -1e-10,
) -> SumRuleReport:
    """Check the exact identities the channel decomposition must satisfy.

    Completeness: sum_j K_j = I. Metric: sum_j W_j reproduces the full
    commutator metric. For passive networks two more hold: the damping
    rule sum_j gamma_j (K_i)_{jj} = gamma_i, and positivity of each K_i.
    """
    n = budget.n_modes
    k_sum = budget.per_channel_k.sum(axis=0)
    completeness = float(np.abs(k_sum - np.eye(n)).max())
    w_sum = budget.per_channel_w.sum(axis=0)
    sigma = np.diag(np.concatenate([np.ones(n), -np.ones(n)]))
    metric_residual = float(np.abs(w_sum - sigma).max())
    gamma_rows: tuple[float, ...] | None = None
    min_eigs: tuple[float, ...] | None = None
    ok = completeness <= completeness_tol and metric_residual <= metric_tol
    if budget.passive:
        # transfer[j, i] = (K_i)_{jj}, so channel i's rule reads along column i
        weighted = budget.gammas @ budget.transfer
        gamma_rows = tuple(float(abs(weighted[i] - budget.gammas[i])) for i in range(n))
        min_eigs = tuple(
            float(np.linalg.eigvalsh(budget.per_channel_k[i]).min()) for i in range(n)
        )
        ok = ok and max(gamma_rows) <= gamma_tol and min(min_eigs) >= positivity_floor
    return SumRuleReport(
        completeness_residual=completeness,
        metric_residual=metric_residual,
        gamma_rule_residuals=gamma_rows,
        positivity_min_eigs=min_eigs,
        passed=ok,
    )


@dataclass(frozen=True)
class ReciprocityReport:
    residuals: np.ndarray
    max_residual: float
    passed: bool


def verify_reciprocity(budget: CommutatorBudget, tol: float = 1e-10) -> ReciprocityReport:
    """Check detailed balance of shares: gamma_j I_ji = gamma_i I_ij.

    Holds for any two-mode passive network and for larger passive
    networks with real coupling amplitudes; with complex loops the flux
    pattern can be chiral and the check is expected to fail.
    """
    g = budget.gammas
    # entry (i, j) compares gamma_i I_ij with gamma_j I_ji
    flux = g[:, None] * budget.transfer
    residuals = np.abs(flux - flux.T)
    worst = float(residuals.max())
    return ReciprocityReport(residuals=residuals, max_residual=worst, passed=worst <= tol)


@dataclass(frozen=True)
class IxBoundReport:
    i_x: float
    i_x_reverse: float
    bound: float
    slack: float
    diagonal_sum: float
    diagonal_slack: float
    passed: bool


def two_mode_ix_bound(budget: CommutatorBudget) -> IxBoundReport:
    """Exchange-fraction bound for passive two-mode networks.

    The normalized cross share i_x = I_12 / gamma_2 (per unit source
    rate) never exceeds 1 / (gamma_1 + gamma_2); the reverse direction
    obeys the same bound by reciprocity. Equivalently the diagonal
    shares satisfy I_11 + I_22 >= 1.
    """
    if budget.n_modes != 2:
        raise ApplicabilityError("the exchange bound is a two-mode statement")
    if not budget.passive:
        raise ApplicabilityError("the exchange bound needs a passive network")
    g1, g2 = budget.gammas
    i_x = float(budget.transfer[0, 1]) / g2
    i_x_rev = float(budget.transfer[1, 0]) / g1
    bound = 1.0 / (g1 + g2)
    slack = bound - max(i_x, i_x_rev)
    diagonal_sum = float(budget.transfer[0, 0] + budget.transfer[1, 1])
    diagonal_slack = diagonal_sum - 1.0
    return IxBoundReport(
        i_x=i_x,
        i_x_reverse=i_x_rev,
        bound=bound,
        slack=slack,
        diagonal_sum=diagonal_sum,
        diagonal_slack=diagonal_slack,
        passed=slack >= -1e-12 and diagonal_slack >= -1e-12,
    )


def budget_report(budget: CommutatorBudget) -> dict:
    """JSON-ready summary of the budget and its identity checks."""
    rules = verify_sum_rules(budget)
    recip = verify_reciprocity(budget)
    return {
        "I": [[float(x) for x in row] for row in budget.transfer],
        "sum_rule_residual": rules.completeness_residual,
        "metric_residual": rules.metric_residual,
        "gamma_rule_residuals": (
            list(rules.gamma_rule_residuals)
            if rules.gamma_rule_residuals is not None
            else None
        ),
        "reciprocity_residuals": [[float(x) for x in row] for row in recip.residuals],
        "positivity_min_eigs": (
            list(rules.positivity_min_eigs)
            if rules.positivity_min_eigs is not None
            else None
        ),
        "passive": budget.passive,
    }
