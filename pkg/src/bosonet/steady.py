"""Steady-state second moments and quadrature variances.

The stationary covariance in the doubled basis solves A V + V A^H +
D N D^H = 0 with N the symmetrized input noise matrix. Quadrature
variances for X(theta) = (a exp(-i theta) + adag exp(i theta)) / sqrt 2
follow from the per-mode normal and anomalous second moments; the
minimizing angle has the closed form used below.

variance_decomposition splits a mode's variance over input channels
using the commutator-budget shares. That split is exact for thermal
inputs into passive networks, and for anomalous inputs only when the
doubled drift is real (then the phase-sensitive transfer collapses onto
the same shares); outside those regimes it refuses rather than
approximates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ApplicabilityError, DimensionError, NumericsError
from .linalg import solve_lyapunov
from .network import InputMoments, StateSpace, passive_state_space
from .budget import CommutatorBudget

_HERMITICITY_LEAK = 1e-9


@dataclass(frozen=True, eq=False)
class CovarianceState:
    """Stationary symmetrized covariance in the doubled basis."""

    v: np.ndarray
    n_modes: int

    def nu(self, mode: int) -> float:
        """Symmetrized number moment <{a, adag}>/2 of one mode."""
        self._check(mode)
        return float(self.v[mode, mode].real)

    def mu(self, mode: int) -> complex:
        """Anomalous moment <a a> of one mode."""
        self._check(mode)
        return complex(self.v[mode, self.n_modes + mode])

    def mode_block(self, mode: int) -> np.ndarray:
        """2x2 (X, Y) covariance of one mode at theta = 0."""
        nu = self.nu(mode)
        mu = self.mu(mode)
        return np.array(
            [[nu + mu.real, mu.imag], [mu.imag, nu - mu.real]]
        )

    def quadrature_matrix(self) -> np.ndarray:
        """Full 2N x 2N real covariance in the (X_1..X_N, Y_1..Y_N) basis."""
        n = self.n_modes
        eye = np.eye(n)
        u = np.block([[eye, eye], [-1j * eye, 1j * eye]]) / math.sqrt(2.0)
        vq = u @ self.v @ u.conj().T
        leak = float(np.abs(vq.imag).max())
        if leak > _HERMITICITY_LEAK:
            raise NumericsError(
                "quadrature covariance picked up an imaginary part", estimate=leak
            )
        return vq.real

    def _check(self, mode: int) -> None:
        if not 0 <= mode < self.n_modes:
            raise DimensionError(f"mode {mode} out of range for {self.n_modes} modes")


def steady_covariance(ss: StateSpace, inputs: InputMoments) -> CovarianceState:
    """Solve the stationary Lyapunov equation for the given inputs."""
    if inputs.n_channels != ss.n_modes:
        raise DimensionError(
            f"{inputs.n_channels} input channels for {ss.n_modes} modes"
        )
    q = ss.input @ inputs.noise_matrix() @ ss.input.conj().T
    v = solve_lyapunov(ss.drift, q)
    return CovarianceState(v=v, n_modes=ss.n_modes)


@dataclass(frozen=True)
class QuadratureVariance:
    mode: int
    theta: float
    value: float


def quadrature_variance(state: CovarianceState, mode: int, theta: float) -> float:
    """Variance of X_mode(theta) from the mode's 2x2 quadrature block."""
    block = state.mode_block(mode)
    c, s = math.cos(theta), math.sin(theta)
    return float(c * c * block[0, 0] + s * s * block[1, 1] + 2 * s * c * block[0, 1])


def min_quadrature_variance(state: CovarianceState, mode: int) -> QuadratureVariance:
    """The quietest quadrature of one mode.

    The variance over angle is nu + |mu| cos(2 theta + arg mu), so the
    minimum nu - |mu| sits where the cosine hits -1; the angle is
    reported in [0, pi).
    """
    nu = state.nu(mode)
    mu = state.mu(mode)
    if mu == 0:
        return QuadratureVariance(mode=mode, theta=0.0, value=float(nu))
    theta = 0.5 * math.atan2(-mu.imag, -mu.real) % math.pi
    return QuadratureVariance(mode=mode, theta=float(theta), value=float(nu - abs(mu)))


def variance_decomposition(
    ss: StateSpace,
    budget: CommutatorBudget,
    inputs: InputMoments,
    theta: float = 0.0,
) -> np.ndarray:
    """All mode variances at one angle as I-weighted input sums.

    Returns the array of Delta X_i(theta)^2 computed as
    sum_j I_ij (n_j + 1/2 + Re(m_j exp(-2 i theta))), which must match
    the covariance route when it applies.

    Exactness requires uncorrelated channels and either a passive
    network with thermal inputs, or a real doubled drift when anomalous
    inputs are present.
    """
    if inputs.n_channels != ss.n_modes:
        raise DimensionError("input moments do not match the network size")
    if inputs.normal_cross is not None or inputs.anomalous_cross is not None:
        raise ApplicabilityError(
            "the channel split assumes uncorrelated input channels"
        )
    anomalous_present = bool(np.abs(inputs.anomalous).max(initial=0.0) > 1e-14)
    if not passive_state_space(ss):
        raise ApplicabilityError(
            "the channel split holds for passive networks only; re-express the "
            "dynamics in a frame where the drift is passive first"
        )
    drift_imag = float(np.abs(ss.drift.imag).max())
    if anomalous_present and drift_imag > 1e-12 * max(1.0, float(np.abs(ss.drift).max())):
        raise ApplicabilityError(
            "anomalous inputs split exactly only when the drift is real; "
            "rotate the mode phases into that gauge first"
        )
    noise = (
        inputs.occupancy
        + 0.5
        + (inputs.anomalous * np.exp(-2j * theta)).real
    )
    return budget.transfer @ noise
