"""Field quantization in a confined region with deformed mode amplitudes.

Expanding the vector potential with the confined-oscillator pair (B, B^dag)
leaves an operator-valued commutator between the field and its conjugate
momentum.  Pairing B with its non-adjoint dual B^dag_f = f(n)^{-1} a^dag
restores a c-number commutator; the price is a deformed scalar product
<psi, phi>_F = <psi, F phi> with the positive diagonal metric
F(n) = prod_{j=0..n} f^2(j), under which B and B^dag_f are mutual adjoints.
The same F(n) rescales the propagator (by F(0)) and each order of the
scattering expansion (by F(n)), quantifying the intensity-dependent
coupling induced by confinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import DeformationFunction, ladder_operators

__all__ = [
    "MetricOperator",
    "DeformedPair",
    "build_dual_pair",
    "deformed_inner_product",
    "transported_ladder",
    "FieldMode",
    "ModeRegistry",
    "mode_orthonormality_residual",
    "FieldCommutatorCheck",
    "field_commutator_check",
    "propagator_scale",
    "smatrix_scale",
    "log_smatrix_scale",
]

MAX_MODES = 32


def _log_metric_diagonal(f: DeformationFunction, dim: int) -> np.ndarray:
    j = np.arange(dim, dtype=float)
    return np.cumsum(np.log(f.gamma * j + f.alpha))


@dataclass(frozen=True)
class MetricOperator:
    """Positive diagonal metric F(n) = prod_{j<=n} f^2(j) and its square root T.

    The product over shifted arguments terminates because f is 1 on negative
    arguments, leaving F(0) = f^2(0) = alpha.
    """

    F_diag: np.ndarray
    T_diag: np.ndarray

    @classmethod
    def from_deformation(cls, f: DeformationFunction, dim: int) -> "MetricOperator":
        log_F = _log_metric_diagonal(f, dim)
        if log_F[-1] > 700.0:
            raise OverflowError(
                f"metric overflows doubles at dim={dim}: log10 F = {log_F[-1] / math.log(10):.1f}"
            )
        F = np.exp(log_F)
        return cls(F_diag=F, T_diag=np.sqrt(F))

    @property
    def dim(self) -> int:
        return self.F_diag.size


@dataclass(frozen=True)
class DeformedPair:
    """Canonical non-adjoint pair B = a f(n), B^dag_f = f(n)^{-1} a^dag.

    [B, B^dag_f] is the identity on the interior block, and B^dag_f equals
    F^{-1} B^dag F, i.e. the adjoint of B under the deformed scalar product.
    """

    B: np.ndarray
    B_dual_dagger: np.ndarray
    f: DeformationFunction

    @property
    def dim(self) -> int:
        return self.B.shape[0]


def build_dual_pair(f: DeformationFunction, dim: int) -> DeformedPair:
    a, a_dag, _ = ladder_operators(dim)
    fvals = f(np.arange(dim))
    B = a * fvals[np.newaxis, :]
    B_dual_dagger = (1.0 / fvals)[:, np.newaxis] * a_dag
    return DeformedPair(B=B, B_dual_dagger=B_dual_dagger, f=f)


def deformed_inner_product(psi, phi, metric: MetricOperator) -> complex:
    """Sesquilinear product <psi, phi>_F = sum_n F(n) conj(psi_n) phi_n."""
    psi = np.asarray(psi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    if psi.shape != phi.shape or psi.shape != (metric.dim,):
        raise ValueError(
            f"dimension mismatch: psi {psi.shape}, phi {phi.shape}, metric {metric.dim}"
        )
    return complex(np.sum(psi.conj() * metric.F_diag * phi))


def transported_ladder(f: DeformationFunction, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Similarity transports T^{-1} a T and T^{-1} a^dag T of the undeformed pair."""
    metric = MetricOperator.from_deformation(f, dim)
    a, a_dag, _ = ladder_operators(dim)
    Tinv = (1.0 / metric.T_diag)[:, np.newaxis]
    T = metric.T_diag[np.newaxis, :]
    return Tinv * a * T, Tinv * a_dag * T


@dataclass(frozen=True)
class FieldMode:
    """One standing-wave mode of the confined field.

    The spatial profile is a sine vanishing at the walls; omega_k is the
    mode frequency in units where the propagation speed is 1.
    """

    k_index: int
    omega_k: float
    polarization: int = 1
    fock_dim: int = 16

    def __post_init__(self) -> None:
        if self.omega_k <= 0:
            raise ValueError("mode frequency must be positive")
        if self.fock_dim < 4:
            raise ValueError("fock_dim must be >= 4")
        if self.polarization not in (1, 2):
            raise ValueError("polarization must be 1 or 2")

    def profile(self, x, half_width: float):
        x = np.asarray(x, dtype=float)
        out = np.where(
            np.abs(x) <= half_width,
            np.sqrt(1.0 / half_width)
            * np.sin(self.k_index * np.pi * (x + half_width) / (2.0 * half_width)),
            0.0,
        )
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class ModeRegistry:
    """A finite set of modes sharing one confinement region."""

    half_width: float
    volume: float
    modes: tuple[FieldMode, ...] = field(default_factory=tuple)

    @classmethod
    def build(
        cls,
        half_width: float,
        n_modes: int,
        fock_dim: int = 16,
        volume: float | None = None,
        polarization: int = 1,
    ) -> "ModeRegistry":
        if n_modes < 1 or n_modes > MAX_MODES:
            raise ValueError(f"n_modes must be in 1..{MAX_MODES}")
        if half_width <= 0:
            raise ValueError("half_width must be positive")
        # unit transverse area: the quantization volume defaults to the well length
        vol = 2.0 * half_width if volume is None else volume
        modes = tuple(
            FieldMode(
                k_index=k,
                omega_k=k * np.pi / (2.0 * half_width),
                polarization=polarization,
                fock_dim=fock_dim,
            )
            for k in range(1, n_modes + 1)
        )
        return cls(half_width=half_width, volume=vol, modes=modes)


def mode_orthonormality_residual(registry: ModeRegistry, n_grid: int = 4097) -> float:
    """Max deviation of the discretized spatial inner products from identity."""
    x = np.linspace(-registry.half_width, registry.half_width, n_grid)
    profiles = np.array([m.profile(x, registry.half_width) for m in registry.modes])
    gram = np.array(
        [[np.trapezoid(profiles[i] * profiles[j], x) for j in range(len(profiles))]
         for i in range(len(profiles))]
    )
    return float(np.abs(gram - np.eye(len(profiles))).max())


@dataclass(frozen=True)
class FieldCommutatorCheck:
    """Equal-time commutator of the field with its conjugate momentum.

    For each sample pair (r, r'), delta_partial is the finite-mode partial
    sum of the transverse delta function (the c-number the commutator must
    equal, divided by -i).  number_coefficients holds, per mode, the
    interior diagonal of [B, B^dag]: the operator-valued weight h(n) that
    appears when the self-adjoint pair is used instead of the dual pair.
    canonical_deviation bounds |[B, B^dag_f] - 1| on the interior, and
    max_vs_undeformed is the worst difference between the dual-pair
    commutator evaluation and the identical computation with undeformed
    amplitudes.
    """

    pairs: tuple[tuple[float, float], ...]
    delta_partial: np.ndarray
    number_coefficients: tuple[np.ndarray, ...]
    canonical_deviation: float
    max_vs_undeformed: float


def field_commutator_check(
    registry: ModeRegistry,
    pairs,
    f: DeformationFunction,
) -> FieldCommutatorCheck:
    """Compare both amplitude choices for the field commutator on sample points."""
    if len(registry.modes) > MAX_MODES:
        raise ValueError(f"too many modes (max {MAX_MODES})")
    pairs = tuple((float(r), float(rp)) for r, rp in pairs)

    number_coeffs = []
    canonical_dev = 0.0
    vs_undeformed = 0.0
    dual_interior = []
    for mode in registry.modes:
        a, a_dag, _ = ladder_operators(mode.fock_dim)
        fvals = f(np.arange(mode.fock_dim))
        B = a * fvals[np.newaxis, :]
        B_dag = fvals[:, np.newaxis] * a_dag
        B_dual = (1.0 / fvals)[:, np.newaxis] * a_dag
        interior = slice(0, mode.fock_dim - 1)
        self_adjoint = np.real(np.diag(B @ B_dag - B_dag @ B))[interior]
        dual = np.real(np.diag(B @ B_dual - B_dual @ B))[interior]
        undeformed = np.real(np.diag(a @ a_dag - a_dag @ a))[interior]
        number_coeffs.append(self_adjoint.copy())
        dual_interior.append(dual)
        canonical_dev = max(canonical_dev, float(np.abs(dual - 1.0).max()))
        vs_undeformed = max(vs_undeformed, float(np.abs(dual - undeformed).max()))

    geom = np.zeros(len(pairs))
    for i, (r, rp) in enumerate(pairs):
        s = 0.0
        for mode in registry.modes:
            u_r = mode.profile(r, registry.half_width)
            u_rp = mode.profile(rp, registry.half_width)
            s += 2.0 * u_r * u_rp  # real profiles: u u'* + u* u'
        geom[i] = s / (2.0 * registry.volume)

    return FieldCommutatorCheck(
        pairs=pairs,
        delta_partial=geom,
        number_coefficients=tuple(number_coeffs),
        canonical_deviation=canonical_dev,
        max_vs_undeformed=vs_undeformed,
    )


def propagator_scale(f: DeformationFunction) -> float:
    """Multiplicative factor F(0) = alpha on the confined-region propagator.

    Tends to 1 as the walls recede (gamma -> 0).
    """
    return float(f.squared(0))


def log_smatrix_scale(f: DeformationFunction, n: int) -> float:
    """log F(n) = sum_{j=0..n} log f^2(j)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    j = np.arange(n + 1, dtype=float)
    return float(np.log(f.gamma * j + f.alpha).sum())


def smatrix_scale(f: DeformationFunction, n: int) -> float:
    """Scattering-amplitude factor F(n) for a transition touching level n.

    Strictly increasing in n whenever gamma > 0: the effective coupling
    grows with the excitation number.
    """
    log_F = log_smatrix_scale(f, n)
    if log_F > 700.0:
        raise OverflowError(
            f"F({n}) overflows doubles: log10 F = {log_F / math.log(10):.2f}"
        )
    return math.exp(log_F)
