"""Declarative bosonic network descriptions and their state-space form.

A network is a set of damped modes, each tied to exactly one input
channel, plus bilinear couplings. Dynamics are expressed in the doubled
basis [a_1..a_N, adag_1..adag_N]: the drift matrix carries the
conjugation symmetry [[P, Q], [conj Q, conj P]] and the input matrix is
diag(sqrt gamma) on both sectors, so preservation of the canonical
commutators holds by construction and is re-checkable as a residual.

Frame changes (hyperbolic mode mixing, mode rotations) are represented
by exact symplectic transforms; input moments are mapped through the
same congruence rather than through hand-written formulas.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, FrameError, NumericsError, ValidationError
from .linalg import TOL, hermitian_defect

COUPLING_KINDS = (
    "beam_splitter",
    "two_mode_squeeze",
    "detuning",
    "degenerate_parametric",
)
_TWO_MODE_KINDS = ("beam_splitter", "two_mode_squeeze")

DOUBLED_ORDERING = "a[0..N-1], adag[0..N-1]"

# |m| <= sqrt(n (n+1)) for a stationary physical bath; engineered frame
# inputs may exceed it, so violations only warn.
_PHYSICALITY_SLACK = 1e-9


def _warn_if_unphysical(occupancy: float, anomalous: complex, context: str) -> None:
    bound = math.sqrt(occupancy * (occupancy + 1.0))
    if abs(anomalous) > bound + _PHYSICALITY_SLACK:
        warnings.warn(
            f"{context}: |m| = {abs(anomalous):.6g} exceeds the thermal "
            f"physicality bound sqrt(n(n+1)) = {bound:.6g}; treating as an "
            "engineered input",
            stacklevel=3,
        )


@dataclass(frozen=True)
class BathSpec:
    """One mode's input channel: damping rate and stationary moments.

    gamma is the damping rate, occupancy the thermal quantum number n,
    and anomalous the stationary <a_in a_in> correlator amplitude m.
    """

    gamma: float
    occupancy: float = 0.0
    anomalous: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "occupancy", float(self.occupancy))
        object.__setattr__(self, "anomalous", complex(self.anomalous))
        if not self.gamma > 0:
            raise ValidationError(f"bath gamma must be positive, got {self.gamma}")
        if self.occupancy < 0:
            raise ValidationError(
                f"bath occupancy must be nonnegative, got {self.occupancy}"
            )
        _warn_if_unphysical(self.occupancy, self.anomalous, "bath moments")


@dataclass(frozen=True)
class CouplingTerm:
    """A bilinear Hamiltonian term.

    kind selects the operator content: beam_splitter is
    g adag_i a_j + h.c., two_mode_squeeze is G adag_i adag_j + h.c.,
    detuning is Delta adag_i a_i (real Delta), and
    degenerate_parametric is lam a_i^2 + conj(lam) adag_i^2.
    """

    kind: str
    amplitude: complex
    modes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "modes", tuple(int(i) for i in self.modes))
        if self.kind not in COUPLING_KINDS:
            raise ValidationError(
                f"unknown coupling kind {self.kind!r}; expected one of "
                f"{COUPLING_KINDS}"
            )
        arity = 2 if self.kind in _TWO_MODE_KINDS else 1
        if len(self.modes) != arity:
            raise ValidationError(
                f"{self.kind} takes {arity} mode index(es), got {self.modes}"
            )
        if arity == 2 and self.modes[0] == self.modes[1]:
            raise ValidationError(f"{self.kind} needs two distinct modes")
        if any(i < 0 for i in self.modes):
            raise ValidationError(f"mode indices must be nonnegative: {self.modes}")
        if self.kind == "detuning" and self.amplitude.imag != 0.0:
            raise ValidationError("detuning amplitude must be real")


def beam_splitter(amplitude, i, j) -> CouplingTerm:
    return CouplingTerm("beam_splitter", amplitude, (i, j))


def two_mode_squeeze(amplitude, i, j) -> CouplingTerm:
    return CouplingTerm("two_mode_squeeze", amplitude, (i, j))


def detuning(amplitude, i) -> CouplingTerm:
    return CouplingTerm("detuning", amplitude, (i,))


def degenerate_parametric(amplitude, i) -> CouplingTerm:
    return CouplingTerm("degenerate_parametric", amplitude, (i,))


@dataclass(frozen=True)
class NetworkSpec:
    """Declarative network: modes, one bath per mode, couplings."""

    n_modes: int
    baths: tuple[BathSpec, ...]
    couplings: tuple[CouplingTerm, ...] = ()
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "baths", tuple(self.baths))
        object.__setattr__(self, "couplings", tuple(self.couplings))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        if self.n_modes < 1:
            raise ValidationError("a network needs at least one mode")
        if len(self.baths) != self.n_modes:
            raise ValidationError(
                f"need exactly one bath per mode: {self.n_modes} modes, "
                f"{len(self.baths)} baths"
            )
        for c in self.couplings:
            if any(i >= self.n_modes for i in c.modes):
                raise ValidationError(
                    f"coupling {c.kind} references mode {max(c.modes)} but the "
                    f"network has {self.n_modes} modes"
                )
        if self.labels is not None and len(self.labels) != self.n_modes:
            raise ValidationError("labels, when given, must name every mode")

    @property
    def gammas(self) -> np.ndarray:
        return np.array([b.gamma for b in self.baths])


def is_passive(spec: NetworkSpec) -> bool:
    """True iff the network conserves particle number.

    Passive networks have no squeeze or parametric terms, hence no
    annihilation/creation mixing in the drift.
    """
    return not any(
        c.kind in ("two_mode_squeeze", "degenerate_parametric")
        for c in spec.couplings
    )


def network_to_json(spec: NetworkSpec) -> dict:
    """Serialize to the documented JSON layout (0-based mode indices)."""
    return {
        "modes": spec.n_modes,
        "baths": [
            {
                "gamma": b.gamma,
                "n": b.occupancy,
                "m_re": b.anomalous.real,
                "m_im": b.anomalous.imag,
            }
            for b in spec.baths
        ],
        "couplings": [
            {
                "kind": c.kind,
                "amp_re": c.amplitude.real,
                "amp_im": c.amplitude.imag,
                "modes": list(c.modes),
            }
            for c in spec.couplings
        ],
    }


def _require_keys(obj: dict, keys: Sequence[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: expected an object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ValidationError(f"{where}: missing key(s) {missing}")
    unknown = [k for k in obj if k not in keys]
    if unknown:
        raise ValidationError(f"{where}: unknown key(s) {unknown}")


def _number(obj: dict, key: str, where: str) -> float:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(f"{where}: {key} must be a number, got {v!r}")
    return float(v)


def network_from_json(doc: dict) -> NetworkSpec:
    """Parse the documented JSON layout, reporting the offending field."""
    _require_keys(doc, ("modes", "baths", "couplings"), "network spec")
    modes = doc["modes"]
    if isinstance(modes, bool) or not isinstance(modes, int):
        raise ValidationError(f"network spec: modes must be an integer, got {modes!r}")
    if not isinstance(doc["baths"], list) or not isinstance(doc["couplings"], list):
        raise ValidationError("network spec: baths and couplings must be arrays")
    baths = []
    for k, b in enumerate(doc["baths"]):
        where = f"baths[{k}]"
        _require_keys(b, ("gamma", "n", "m_re", "m_im"), where)
        baths.append(
            BathSpec(
                gamma=_number(b, "gamma", where),
                occupancy=_number(b, "n", where),
                anomalous=complex(_number(b, "m_re", where), _number(b, "m_im", where)),
            )
        )
    couplings = []
    for k, c in enumerate(doc["couplings"]):
        where = f"couplings[{k}]"
        _require_keys(c, ("kind", "amp_re", "amp_im", "modes"), where)
        idx = c["modes"]
        if not isinstance(idx, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in idx
        ):
            raise ValidationError(f"{where}: modes must be an array of integers")
        couplings.append(
            CouplingTerm(
                kind=c["kind"] if isinstance(c["kind"], str) else "",
                amplitude=complex(
                    _number(c, "amp_re", where), _number(c, "amp_im", where)
                ),
                modes=tuple(idx),
            )
        )
    return NetworkSpec(n_modes=modes, baths=tuple(baths), couplings=tuple(couplings))


@dataclass(frozen=True, eq=False)
class StateSpace:
    """Doubled-space drift and input matrices plus index bookkeeping."""

    drift: np.ndarray
    input: np.ndarray
    sigma: np.ndarray
    n_modes: int
    ordering: str = DOUBLED_ORDERING

    @property
    def gammas(self) -> np.ndarray:
        d = np.diag(self.input).real[: self.n_modes]
        return d * d


def metric(n_modes: int) -> np.ndarray:
    """The commutator metric diag(I_N, -I_N)."""
    return np.diag(np.concatenate([np.ones(n_modes), -np.ones(n_modes)]))


def build_state_space(spec: NetworkSpec) -> StateSpace:
    """Assemble the Heisenberg-Langevin drift and input matrices.

    Hamiltonian terms enter the annihilation sector as -i times their
    coefficient; the creation sector follows from conjugation symmetry.
    """
    n = spec.n_modes
    ann = np.zeros((n, n), dtype=complex)  # a <- a
    mix = np.zeros((n, n), dtype=complex)  # a <- adag
    for i, b in enumerate(spec.baths):
        ann[i, i] -= 0.5 * b.gamma
    for c in spec.couplings:
        if c.kind == "beam_splitter":
            i, j = c.modes
            ann[i, j] += -1j * c.amplitude
            ann[j, i] += -1j * c.amplitude.conjugate()
        elif c.kind == "two_mode_squeeze":
            i, j = c.modes
            mix[i, j] += -1j * c.amplitude
            mix[j, i] += -1j * c.amplitude
        elif c.kind == "detuning":
            (i,) = c.modes
            ann[i, i] += -1j * c.amplitude.real
        else:  # degenerate_parametric
            (i,) = c.modes
            mix[i, i] += -2j * c.amplitude.conjugate()
    drift = np.block([[ann, mix], [mix.conj(), ann.conj()]])
    root = np.sqrt(spec.gammas)
    inp = np.diag(np.concatenate([root, root])).astype(complex)
    return StateSpace(drift=drift, input=inp, sigma=metric(n), n_modes=n)


def passive_state_space(ss: StateSpace) -> bool:
    """True iff the drift has no annihilation/creation mixing block."""
    n = ss.n_modes
    return bool(np.all(ss.drift[:n, n:] == 0))


@dataclass(frozen=True)
class RealizabilityReport:
    residual: float
    tol: float
    passed: bool


def check_physical_realizability(
    ss: StateSpace, tol: float = TOL.realizability
) -> RealizabilityReport:
    """Residual of the commutator-preservation identity.

    Evaluates A sigma + sigma A^H + D sigma D^H, which vanishes exactly
    when the dynamics preserves canonical commutation relations.
    """
    r = (
        ss.drift @ ss.sigma
        + ss.sigma @ ss.drift.conj().T
        + ss.input @ ss.sigma @ ss.input.conj().T
    )
    residual = float(np.abs(r).max())
    return RealizabilityReport(residual=residual, tol=tol, passed=residual <= tol)


@dataclass(frozen=True, eq=False)
class InputMoments:
    """Stationary white-noise second moments, one set per input channel.

    occupancy[j] is <adag_j,in a_j,in>, anomalous[j] is <a_j,in a_j,in>.
    Optional cross-channel correlators carry the off-diagonal parts of
    the full matrices (Hermitian normal part, symmetric anomalous part)
    with zero diagonals.
    """

    occupancy: np.ndarray
    anomalous: np.ndarray
    normal_cross: np.ndarray | None = None
    anomalous_cross: np.ndarray | None = None

    def __post_init__(self):
        occ = np.atleast_1d(np.asarray(self.occupancy, dtype=float)).copy()
        ano = np.atleast_1d(np.asarray(self.anomalous, dtype=complex)).copy()
        if occ.shape != ano.shape or occ.ndim != 1:
            raise DimensionError(
                "occupancy and anomalous must be 1-d and the same length"
            )
        if np.any(occ < -1e-9):
            raise ValidationError("channel occupancies must be nonnegative")
        occ = np.maximum(occ, 0.0)
        object.__setattr__(self, "occupancy", occ)
        object.__setattr__(self, "anomalous", ano)
        n = occ.shape[0]
        for name in ("normal_cross", "anomalous_cross"):
            m = getattr(self, name)
            if m is None:
                continue
            m = np.asarray(m, dtype=complex)
            if m.shape != (n, n):
                raise DimensionError(f"{name} must be ({n}, {n})")
            if np.abs(np.diag(m)).max(initial=0.0) > 1e-10:
                raise ValidationError(f"{name} must have zero diagonal")
            defect = (
                hermitian_defect(m)
                if name == "normal_cross"
                else float(np.abs(m - m.T).max())
            )
            if defect > 1e-10:
                kindname = "Hermitian" if name == "normal_cross" else "symmetric"
                raise ValidationError(f"{name} must be {kindname}")
            object.__setattr__(self, name, m)
        for j in range(n):
            _warn_if_unphysical(occ[j], ano[j], f"input channel {j}")

    @classmethod
    def vacuum(cls, n_channels: int) -> "InputMoments":
        return cls(np.zeros(n_channels), np.zeros(n_channels, dtype=complex))

    @classmethod
    def thermal(cls, occupancies: Iterable[float]) -> "InputMoments":
        occ = np.asarray(list(occupancies), dtype=float)
        return cls(occ, np.zeros_like(occ, dtype=complex))

    @classmethod
    def from_baths(cls, spec: NetworkSpec) -> "InputMoments":
        return cls(
            np.array([b.occupancy for b in spec.baths]),
            np.array([b.anomalous for b in spec.baths]),
        )

    @classmethod
    def from_correlators(cls, normal: np.ndarray, anomalous: np.ndarray) -> "InputMoments":
        """Split full correlator matrices into per-channel and cross parts."""
        cn = np.asarray(normal, dtype=complex)
        cm = np.asarray(anomalous, dtype=complex)
        if cn.shape != cm.shape or cn.ndim != 2 or cn.shape[0] != cn.shape[1]:
            raise DimensionError("correlator matrices must be square and matching")
        diag_imag = float(np.abs(np.diag(cn).imag).max(initial=0.0))
        if diag_imag > 1e-9:
            raise ValidationError("normal correlator diagonal must be real")
        occ = np.diag(cn).real
        ano = np.diag(cm)
        cn_off = cn - np.diag(np.diag(cn))
        cm_off = cm - np.diag(np.diag(cm))
        return cls(
            occ,
            ano,
            normal_cross=cn_off if np.abs(cn_off).max(initial=0.0) > 1e-14 else None,
            anomalous_cross=cm_off if np.abs(cm_off).max(initial=0.0) > 1e-14 else None,
        )

    @property
    def n_channels(self) -> int:
        return int(self.occupancy.shape[0])

    def normal_matrix(self) -> np.ndarray:
        """Full <adag_j,in a_k,in> matrix."""
        m = np.diag(self.occupancy).astype(complex)
        if self.normal_cross is not None:
            m = m + self.normal_cross
        return m

    def anomalous_matrix(self) -> np.ndarray:
        """Full <a_j,in a_k,in> matrix."""
        m = np.diag(self.anomalous)
        if self.anomalous_cross is not None:
            m = m + self.anomalous_cross
        return m

    def noise_matrix(self) -> np.ndarray:
        """Symmetrized doubled-basis noise moment matrix.

        The vacuum contribution is 1/2 per quadrature, so this feeds the
        steady-state Lyapunov equation directly.
        """
        n = self.n_channels
        cn = self.normal_matrix()
        cm = self.anomalous_matrix()
        half = 0.5 * np.eye(n)
        return np.block([[half + cn.T, cm], [cm.conj(), half + cn]])


@dataclass(frozen=True, eq=False)
class MomentTransform:
    """A change of frame xi' = matrix @ xi in the doubled basis.

    The matrix must respect the doubled conjugation structure and
    preserve the commutator metric (symplectic condition), which is
    validated at construction. Input moments are mapped through the
    matrix congruence, never through per-case formulas.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise DimensionError("transform matrix must be square of even dimension")
        object.__setattr__(self, "matrix", m)
        n = m.shape[0] // 2
        structure = max(
            float(np.abs(m[n:, n:] - m[:n, :n].conj()).max(initial=0.0)),
            float(np.abs(m[n:, :n] - m[:n, n:].conj()).max(initial=0.0)),
        )
        if structure > 1e-12:
            raise ValidationError("transform breaks the doubled conjugation structure")
        sig = metric(n)
        if float(np.abs(m @ sig @ m.conj().T - sig).max()) > 1e-10:
            raise ValidationError("transform does not preserve the commutator metric")

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2

    @classmethod
    def identity(cls, n_modes: int) -> "MomentTransform":
        return cls(np.eye(2 * n_modes, dtype=complex))

    @classmethod
    def bogoliubov(cls, n_modes: int, mode: int, xi: float) -> "MomentTransform":
        """alpha = cosh(xi) a + sinh(xi) adag on one mode."""
        p = np.eye(n_modes, dtype=complex)
        q = np.zeros((n_modes, n_modes), dtype=complex)
        p[mode, mode] = math.cosh(xi)
        q[mode, mode] = math.sinh(xi)
        return cls(np.block([[p, q], [q.conj(), p.conj()]]))

    @classmethod
    def two_mode_bogoliubov(
        cls, n_modes: int, mode_a: int, mode_b: int, xi: float
    ) -> "MomentTransform":
        """alpha_a = cosh(xi) a_a + sinh(xi) adag_b, and b <-> a."""
        if mode_a == mode_b:
            raise ValidationError("two-mode hyperbolic mixing needs distinct modes")
        p = np.eye(n_modes, dtype=complex)
        q = np.zeros((n_modes, n_modes), dtype=complex)
        p[mode_a, mode_a] = math.cosh(xi)
        p[mode_b, mode_b] = math.cosh(xi)
        q[mode_a, mode_b] = math.sinh(xi)
        q[mode_b, mode_a] = math.sinh(xi)
        return cls(np.block([[p, q], [q.conj(), p.conj()]]))

    @classmethod
    def mixer(cls, n_modes: int, mode_a: int, mode_b: int) -> "MomentTransform":
        """Sum/difference mixing: a' = (a+b)/sqrt2, b' = (a-b)/sqrt2."""
        if mode_a == mode_b:
            raise ValidationError("mixing needs distinct modes")
        p = np.eye(n_modes, dtype=complex)
        r = 1.0 / math.sqrt(2.0)
        p[mode_a, mode_a] = r
        p[mode_a, mode_b] = r
        p[mode_b, mode_a] = r
        p[mode_b, mode_b] = -r
        q = np.zeros((n_modes, n_modes), dtype=complex)
        return cls(np.block([[p, q], [q, p.conj()]]))

    @classmethod
    def rotation(cls, n_modes: int, mode: int, phi: float) -> "MomentTransform":
        """xi'_mode = exp(i phi) xi_mode."""
        p = np.eye(n_modes, dtype=complex)
        p[mode, mode] = cmath.exp(1j * phi)
        q = np.zeros((n_modes, n_modes), dtype=complex)
        return cls(np.block([[p, q], [q, p.conj()]]))

    def compose(self, inner: "MomentTransform") -> "MomentTransform":
        """The transform applying ``inner`` first, then this one."""
        return MomentTransform(self.matrix @ inner.matrix)

    def inverse(self) -> "MomentTransform":
        sig = metric(self.n_modes)
        return MomentTransform(sig @ self.matrix.conj().T @ sig)

    def apply_to_drift(self, drift: np.ndarray) -> np.ndarray:
        return self.matrix @ drift @ self.inverse().matrix

    def apply_to_covariance(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v @ self.matrix.conj().T

    def apply_to_inputs(self, inputs: InputMoments) -> InputMoments:
        """Map input moments into the new frame.

        Valid when the transform only mixes channels of equal damping
        (then the input matrix commutes with the transform and the new
        frame keeps the standard one-bath-per-mode form).
        """
        n = self.n_modes
        if inputs.n_channels != n:
            raise DimensionError("input moments do not match the transform size")
        out = self.matrix @ inputs.noise_matrix() @ self.matrix.conj().T
        cn = out[n:, n:] - 0.5 * np.eye(n)
        cm = out[:n, n:]
        checks = max(
            float(np.abs(out[:n, :n] - (0.5 * np.eye(n) + cn.T)).max()),
            float(np.abs(out[n:, :n] - cm.conj()).max()),
            float(np.abs(cm - cm.T).max()),
        )
        if checks > 1e-10:
            raise NumericsError(
                "transformed noise matrix lost its doubled structure",
                estimate=checks,
            )
        return InputMoments.from_correlators(cn, cm)


def _canonical_coupling_key(kind: str, modes: tuple[int, ...]):
    if kind in _TWO_MODE_KINDS and modes[0] > modes[1]:
        return kind, (modes[1], modes[0]), True
    return kind, modes, False


def _merge_couplings(raw: Iterable[CouplingTerm]) -> tuple[CouplingTerm, ...]:
    """Accumulate amplitudes on canonical (kind, modes) slots, drop zeros."""
    acc: dict = {}
    scale = 0.0
    for c in raw:
        kind, modes, flipped = _canonical_coupling_key(c.kind, c.modes)
        amp = c.amplitude
        if flipped and kind == "beam_splitter":
            amp = amp.conjugate()
        acc[(kind, modes)] = acc.get((kind, modes), 0j) + amp
        scale = max(scale, abs(acc[(kind, modes)]))
    keep = []
    cutoff = 1e-12 * max(1.0, scale)
    for (kind, modes), amp in acc.items():
        if abs(amp) <= cutoff:
            continue
        if kind == "detuning":
            amp = complex(amp.real, 0.0)
        keep.append(CouplingTerm(kind, amp, modes))
    return tuple(keep)


def _rewrite_for_mode_map(
    spec: NetworkSpec, mode: int, on_self: dict
) -> list[CouplingTerm]:
    """Rewrite couplings under a_mode = sum of new-mode operators.

    ``on_self`` gives the rewrite of each original term touching the
    mode as a list of (kind, amplitude, modes) replacement terms; terms
    not touching the mode pass through unchanged.
    """
    out = []
    for c in spec.couplings:
        if mode not in c.modes:
            out.append(c)
            continue
        for kind, amp, modes in on_self[c.kind](c):
            out.append(CouplingTerm(kind, amp, modes))
    return out


def bogoliubov_frame(
    spec: NetworkSpec, mode: int, xi: float | None = None
) -> tuple[NetworkSpec, MomentTransform]:
    """Re-express the network in a hyperbolic frame on one mode.

    The new mode is alpha = cosh(xi) a + sinh(xi) adag. When ``xi`` is
    omitted it is derived from the couplings touching the mode: a
    beam-splitter amplitude G_minus paired with a squeeze amplitude
    G_plus on the same partner turns into a pure beam splitter of
    amplitude sqrt(G_minus^2 - G_plus^2) at xi = arctanh(G_plus/G_minus).

    Returns the rewritten spec (bath moments included, mapped through
    the exact symplectic congruence) and the transform itself. The
    frame composes additively in xi.
    """
    if not 0 <= mode < spec.n_modes:
        raise DimensionError(f"mode {mode} out of range for {spec.n_modes} modes")
    if xi is None:
        xi = _derive_frame_parameter(spec, mode)
    c, s = math.cosh(xi), math.sinh(xi)

    def _bs(term: CouplingTerm):
        g = term.amplitude
        i, j = term.modes
        if j == mode and i != mode:
            return [
                ("beam_splitter", g * c, (i, mode)),
                ("two_mode_squeeze", -g * s, (i, mode)),
            ]
        if i == mode and j != mode:
            return [
                ("beam_splitter", g * c, (mode, j)),
                ("two_mode_squeeze", -g.conjugate() * s, (mode, j)),
            ]
        raise ValidationError("beam splitter cannot touch the same mode twice")

    def _tms(term: CouplingTerm):
        g = term.amplitude
        i, j = term.modes
        other = i if j == mode else j
        return [
            ("two_mode_squeeze", g * c, (other, mode)),
            ("beam_splitter", -g * s, (other, mode)),
        ]

    def _det(term: CouplingTerm):
        delta = term.amplitude.real
        return [
            ("detuning", delta * math.cosh(2 * xi), (mode,)),
            ("degenerate_parametric", -delta * c * s, (mode,)),
        ]

    def _dp(term: CouplingTerm):
        lam = term.amplitude
        return [
            ("degenerate_parametric", lam * c * c + lam.conjugate() * s * s, (mode,)),
            ("detuning", -2.0 * math.sinh(2 * xi) * lam.real, (mode,)),
        ]

    rewritten = _rewrite_for_mode_map(
        spec,
        mode,
        {
            "beam_splitter": _bs,
            "two_mode_squeeze": _tms,
            "detuning": _det,
            "degenerate_parametric": _dp,
        },
    )
    transform = MomentTransform.bogoliubov(spec.n_modes, mode, xi)
    return _respec_with(spec, rewritten, transform), transform


def rotate_mode(
    spec: NetworkSpec, mode: int, phi: float
) -> tuple[NetworkSpec, MomentTransform]:
    """Re-express the network with a_mode = exp(i phi) b_mode.

    A quarter turn (phi = -pi/2) turns a real beam-splitter amplitude
    into a real drift block, the gauge in which quadrature families
    close on themselves.
    """
    if not 0 <= mode < spec.n_modes:
        raise DimensionError(f"mode {mode} out of range for {spec.n_modes} modes")
    ph = cmath.exp(1j * phi)

    def _bs(term: CouplingTerm):
        g = term.amplitude
        i, j = term.modes
        if j == mode:
            return [("beam_splitter", g * ph, (i, j))]
        return [("beam_splitter", g * ph.conjugate(), (i, j))]

    def _tms(term: CouplingTerm):
        # G adag_i adag_mode picks up the conjugate phase from adag_mode
        return [("two_mode_squeeze", term.amplitude * ph.conjugate(), term.modes)]

    def _det(term: CouplingTerm):
        return [("detuning", term.amplitude, term.modes)]

    def _dp(term: CouplingTerm):
        return [("degenerate_parametric", term.amplitude * ph * ph, term.modes)]

    rewritten = _rewrite_for_mode_map(
        spec,
        mode,
        {
            "beam_splitter": _bs,
            "two_mode_squeeze": _tms,
            "detuning": _det,
            "degenerate_parametric": _dp,
        },
    )
    transform = MomentTransform.rotation(spec.n_modes, mode, -phi)
    return _respec_with(spec, rewritten, transform), transform


def _respec_with(
    spec: NetworkSpec, couplings: list[CouplingTerm], transform: MomentTransform
) -> NetworkSpec:
    moments = transform.apply_to_inputs(InputMoments.from_baths(spec))
    if moments.normal_cross is not None or moments.anomalous_cross is not None:
        raise NumericsError("single-mode frame change produced cross correlators")
    baths = tuple(
        BathSpec(b.gamma, moments.occupancy[i], moments.anomalous[i])
        for i, b in enumerate(spec.baths)
    )
    return NetworkSpec(
        n_modes=spec.n_modes,
        baths=baths,
        couplings=_merge_couplings(couplings),
        labels=spec.labels,
    )


def _derive_frame_parameter(spec: NetworkSpec, mode: int) -> float:
    bs_amp = 0j
    tms_amp = 0j
    partners = set()
    for c in spec.couplings:
        if mode not in c.modes or c.kind not in _TWO_MODE_KINDS:
            continue
        other = c.modes[0] if c.modes[1] == mode else c.modes[1]
        partners.add(other)
        if c.kind == "beam_splitter":
            # orient as (partner, mode): g adag_partner a_mode
            amp = c.amplitude if c.modes[1] == mode else c.amplitude.conjugate()
            bs_amp += amp
        else:
            tms_amp += c.amplitude
    if len(partners) != 1:
        raise ValidationError(
            "cannot derive the frame parameter: the mode must couple to exactly "
            "one partner; pass xi explicitly"
        )
    scale = max(abs(bs_amp), abs(tms_amp), 1.0)
    if abs(bs_amp.imag) > 1e-12 * scale or abs(tms_amp.imag) > 1e-12 * scale:
        raise ValidationError(
            "cannot derive the frame parameter from complex amplitudes; "
            "pass xi explicitly"
        )
    g_minus, g_plus = bs_amp.real, tms_amp.real
    if abs(g_plus) >= abs(g_minus):
        raise FrameError(
            f"no hyperbolic frame: |squeeze amplitude| = {abs(g_plus):.6g} is not "
            f"below |beam-splitter amplitude| = {abs(g_minus):.6g}"
        )
    return math.atanh(g_plus / g_minus)
