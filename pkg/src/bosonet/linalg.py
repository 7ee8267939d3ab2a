"""Dense complex linear algebra for small stable systems.

Everything operates on plain numpy arrays of dimension order ten:
spectra for stability tests, Lyapunov solves via Kronecker
vectorization, adaptive Gauss-Kronrod quadrature over the real
frequency axis, and a golden-section scalar optimizer. Default
tolerances live in a single constants record so the rest of the
package never hard-codes them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DimensionError, NumericsError, StabilityError, ValidationError

MAX_SPECTRUM_DIM = 64


@dataclass(frozen=True)
class Tolerances:
    """Default numerical tolerances used across the package."""

    lyapunov_residual: float = 1e-10
    quadrature_abs: float = 1e-8
    hermiticity: float = 1e-12
    realizability: float = 1e-12


TOL = Tolerances()


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermitian_defect(m) -> float:
    """Max-norm distance of a square matrix from its own adjoint."""
    a = _as_square(m)
    return float(np.abs(a - a.conj().T).max(initial=0.0))


def eigenvalues(m) -> np.ndarray:
    """Spectrum of a square matrix, sorted by real part, descending.

    Ties in the real part are broken by descending imaginary part so
    the ordering is deterministic. Multiplicities are preserved.
    """
    a = _as_square(m)
    if a.shape[0] > MAX_SPECTRUM_DIM:
        raise DimensionError(
            f"spectrum limited to dimension {MAX_SPECTRUM_DIM}, got {a.shape[0]}"
        )
    try:
        vals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise NumericsError(f"eigenvalue iteration did not converge: {exc}") from exc
    order = np.lexsort((-vals.imag, -vals.real))
    return vals[order]


def is_stable(m, margin: float = 0.0) -> bool:
    """True iff every eigenvalue of ``m`` has real part below ``-margin``."""
    if margin < 0:
        raise ValidationError("stability margin must be nonnegative")
    return bool(eigenvalues(m)[0].real < -margin)


def require_stable(m, context: str = "drift") -> np.ndarray:
    """Return the spectrum of ``m``, raising if it is not strictly stable."""
    vals = eigenvalues(m)
    top = vals[0]
    if top.real >= 0:
        raise StabilityError(
            f"{context} is not strictly stable: eigenvalue "
            f"{top.real:+.6g}{top.imag:+.6g}j has nonnegative real part",
            eigenvalue=complex(top),
        )
    return vals


def solve_lyapunov(a, q, residual_tol: float | None = None) -> np.ndarray:
    """Solve a W + W a^H + q = 0 for Hermitian q and strictly stable a.

    Uses the Kronecker-vectorized linear system, which is exact up to
    roundoff at these dimensions. The result is symmetrized and the
    residual is verified against ``residual_tol`` (relative to
    max(1, ||q||_max)).

    Raises:
        StabilityError: if ``a`` has an eigenvalue with nonnegative
            real part (the offending eigenvalue is attached).
        ValidationError: if ``q`` is not Hermitian within tolerance.
        NumericsError: if the linear system is singular or the residual
            check fails.
    """
    am = _as_square(a)
    qm = _as_square(q)
    if am.shape != qm.shape:
        raise DimensionError(f"shape mismatch: a is {am.shape}, q is {qm.shape}")
    qscale = max(1.0, float(np.abs(qm).max(initial=0.0)))
    if hermitian_defect(qm) > TOL.hermiticity * qscale:
        raise ValidationError("q must be Hermitian within tolerance")
    require_stable(am)
    n = am.shape[0]
    eye = np.eye(n)
    system = np.kron(eye, am) + np.kron(am.conj(), eye)
    try:
        vec = np.linalg.solve(system, -qm.reshape(-1, order="F"))
    except np.linalg.LinAlgError as exc:
        raise NumericsError(f"singular Lyapunov system: {exc}") from exc
    w = vec.reshape((n, n), order="F")
    w = 0.5 * (w + w.conj().T)
    tol = TOL.lyapunov_residual if residual_tol is None else residual_tol
    residual = float(np.abs(am @ w + w @ am.conj().T + qm).max())
    if residual > tol * qscale:
        raise NumericsError(
            f"Lyapunov residual {residual:.3e} exceeds {tol:.1e} * {qscale:.3g}",
            estimate=residual,
        )
    return w


# 15-point Kronrod extension of the 7-point Gauss rule, nodes ascending.
_GK_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_GK_WEIGHTS = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
# Embedded Gauss-7 weights, zero at Kronrod-only nodes.
_G7_WEIGHTS = np.array([
    0.0, 0.129484966168870, 0.0, 0.279705391489277, 0.0,
    0.381830050505119, 0.0, 0.417959183673469, 0.0,
    0.381830050505119, 0.0, 0.279705391489277, 0.0,
    0.129484966168870, 0.0,
])


def _omega_to_t(omega: float) -> float:
    # inverse of omega = t / (1 - t^2) on (-1, 1)
    if omega == 0.0:
        return 0.0
    return (-1.0 + math.sqrt(1.0 + 4.0 * omega * omega)) / (2.0 * omega)


def _gk_panels(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray):
    """Evaluate the mapped integrand on a batch of panels.

    Returns (kronrod values, per-panel entrywise error estimates).
    """
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    t = mid[:, None] + half[:, None] * _GK_NODES[None, :]
    omega = t / (1.0 - t * t)
    jac = (1.0 + t * t) / (1.0 - t * t) ** 2
    flat = np.asarray(f(omega.reshape(-1)))
    if flat.shape[0] != omega.size:
        raise NumericsError(
            "integrand must be vectorized over its frequency argument"
        )
    tail = flat.shape[1:]
    vals = flat.reshape(t.shape + tail) * jac.reshape(t.shape + (1,) * len(tail))
    k15 = np.einsum("pk...,k->p...", vals, _GK_WEIGHTS) * half.reshape(
        (-1,) + (1,) * len(tail)
    )
    g7 = np.einsum("pk...,k->p...", vals, _G7_WEIGHTS) * half.reshape(
        (-1,) + (1,) * len(tail)
    )
    return k15, np.abs(k15 - g7)


def integrate_spectrum(
    f: Callable[[np.ndarray], np.ndarray],
    abs_tol: float = TOL.quadrature_abs,
    breakpoints: Iterable[float] | None = None,
    max_panels: int = 8192,
) -> np.ndarray:
    """Adaptive quadrature of (1/2pi) * integral of f over the real line.

    ``f`` must accept a 1-d array of frequencies and return an array
    whose leading axis matches it; trailing axes (matrix entries) are
    integrated entrywise. The real line is mapped to (-1, 1) through
    omega = t/(1-t^2), so Lorentzian tails need no manual cutoff, and
    a Gauss-Kronrod 7/15 pair is refined until the estimated absolute
    error is at most ``abs_tol`` per entry.

    ``breakpoints`` (frequencies, not mapped coordinates) seed panel
    edges near known narrow features such as resonances; without them
    a feature much narrower than the initial uniform panels can escape
    the error estimate entirely.
    """
    edges = set(np.linspace(-1.0, 1.0, 17))
    if breakpoints is not None:
        for omega in breakpoints:
            t = _omega_to_t(float(omega))
            edges.add(min(max(t, -1.0 + 1e-12), 1.0 - 1e-12))
    grid = sorted(edges)
    lo = np.array(grid[:-1])
    hi = np.array(grid[1:])
    keep = hi - lo > 1e-15
    panels_lo = list(lo[keep])
    panels_hi = list(hi[keep])
    vals, errs = _gk_panels(f, np.array(panels_lo), np.array(panels_hi))
    vals = list(vals)
    errs = list(errs)

    raw_tol = abs_tol * 2.0 * math.pi
    while True:
        total_err = float(np.max(sum(errs)))
        if total_err <= raw_tol:
            break
        threshold = raw_tol / (2.0 * len(panels_lo))
        offenders = [
            i for i in range(len(panels_lo)) if float(np.max(errs[i])) > threshold
        ]
        if not offenders:
            offenders = [int(np.argmax([float(np.max(e)) for e in errs]))]
        if len(panels_lo) + len(offenders) > max_panels:
            raise NumericsError(
                f"quadrature did not converge below {abs_tol:.1e} within "
                f"{max_panels} panels",
                estimate=total_err / (2.0 * math.pi),
            )
        new_lo, new_hi = [], []
        for i in offenders:
            mid = 0.5 * (panels_lo[i] + panels_hi[i])
            new_lo.extend([panels_lo[i], mid])
            new_hi.extend([mid, panels_hi[i]])
        new_vals, new_errs = _gk_panels(f, np.array(new_lo), np.array(new_hi))
        for i in sorted(offenders, reverse=True):
            del panels_lo[i], panels_hi[i], vals[i], errs[i]
        panels_lo.extend(new_lo)
        panels_hi.extend(new_hi)
        vals.extend(new_vals)
        errs.extend(new_errs)

    return sum(vals) / (2.0 * math.pi)


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-6,
    max_iter: int = 400,
) -> tuple[float, float]:
    """Bracketed golden-section maximization of a unimodal scalar function.

    Returns (argmax, max value). The bracket is shrunk until its width
    falls below ``rel_tol`` relative to the bracket magnitude.
    """
    if not hi > lo:
        raise ValidationError("golden-section bracket must have hi > lo")
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(max_iter):
        if b - a <= rel_tol * max(1.0, abs(a), abs(b)):
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fn(d)
    x = 0.5 * (a + b)
    return x, fn(x)


def golden_section_min(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-6,
    max_iter: int = 400,
) -> tuple[float, float]:
    x, neg = golden_section_max(lambda t: -fn(t), lo, hi, rel_tol, max_iter)
    return x, -neg
