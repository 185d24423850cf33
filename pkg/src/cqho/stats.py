"""Photon statistics and quadrature squeezing on number-basis states.

Every observable is evaluated as a direct matrix sandwich <psi|M|psi> so the
same code path works for any state, not just nonlinear coherent states.
States are zero-padded before the sandwich to keep truncation-edge artifacts
below coefficient tails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DeformationFunction, deform_ladder, ladder_operators
from .spectrum import derive_params
from .states import FockState, build_nlcs, eigenvalue_residual

__all__ = [
    "mandel_parameter",
    "quadrature_operator",
    "quadrature_squeezing",
    "deformed_squeezing",
    "SweepSpec",
    "SweepPoint",
    "run_sweep",
    "figure_series",
    "FIGURE_DEFAULTS",
]

PAD = 8


def _padded(state: FockState, min_dim: int = 4) -> np.ndarray:
    dim = max(state.dim + PAD, min_dim)
    vec = np.zeros(dim, dtype=complex)
    vec[: state.dim] = state.coefficients
    return vec


def _variance(psi: np.ndarray, op: np.ndarray) -> float:
    mean = np.vdot(psi, op @ psi)
    second = np.vdot(psi, op @ (op @ psi))
    return float((second - mean * mean).real)


def mandel_parameter(state: FockState) -> float:
    """((Delta n)^2 - <n>) / <n>; zero for Poissonian number statistics,
    negative for sub-Poissonian."""
    psi = _padded(state)
    _, _, n_op = ladder_operators(psi.size)
    mean = float(np.vdot(psi, n_op @ psi).real)
    if mean <= 1e-12:
        raise ValueError("Mandel parameter is undefined on (near-)vacuum input")
    return (_variance(psi, n_op) - mean) / mean


def quadrature_operator(
    low: np.ndarray, raise_: np.ndarray, phi: float, which: str
) -> np.ndarray:
    """Rotated quadrature (low e^{i phi} +- raise e^{-i phi}) / (2 or 2i)."""
    if which == "X":
        return 0.5 * (low * np.exp(1j * phi) + raise_ * np.exp(-1j * phi))
    if which == "Y":
        return (low * np.exp(1j * phi) - raise_ * np.exp(-1j * phi)) / 2j
    raise ValueError(f"which must be 'X' or 'Y', got {which!r}")


def quadrature_squeezing(state: FockState, phi: float, which: str = "X") -> float:
    """Squeezing parameter s = 4 (Delta O)^2 - 1 of the undeformed quadrature.

    phi in radians.  s < 0 signals squeezing below the vacuum variance 1/4;
    vacuum and ordinary coherent states give exactly zero.
    """
    psi = _padded(state)
    a, a_dag, _ = ladder_operators(psi.size)
    op = quadrature_operator(a, a_dag, phi, which)
    return 4.0 * _variance(psi, op) - 1.0


def deformed_squeezing(
    state: FockState, f: DeformationFunction, phi: float, which: str = "X"
) -> float:
    """Deformed squeezing parameter S = 4 (Delta O_A)^2 - <(n+1)f^2(n+1)> + <n f^2(n)>.

    The subtracted expectation is the state average of the deformed-pair
    commutator, so S < 0 means the variance is below the commutator bound.
    On an exact eigenstate of A the variance saturates the bound and S = 0.
    """
    psi = _padded(state)
    a, _, _ = ladder_operators(psi.size)
    A, A_dag = deform_ladder(a, f)
    op = quadrature_operator(A, A_dag, phi, which)
    n = np.arange(psi.size, dtype=float)
    comm_diag = (n + 1) * f.squared(n + 1) - n * f.squared(n)
    bound = float((np.abs(psi) ** 2 * comm_diag).sum())
    return 4.0 * _variance(psi, op) - bound


@dataclass(frozen=True)
class SweepSpec:
    """One observable swept over one variable with everything else pinned.

    variable is 'a_over_l0', 'phi' (degrees) or 'beta_sq'; observable is
    'mandel', 's_X', 's_Y', 'S_XA' or 'S_YA'.  The half-width grid is
    logarithmic by default, the others linear.
    """

    variable: str
    lo: float
    hi: float
    count: int
    observable: str
    beta_sq: float = 1.0
    a_over_l0: float = 1.0
    phi_deg: float = 0.0
    m: float = 1.0
    omega: float = 1.0

    VARIABLES = ("a_over_l0", "phi", "beta_sq")
    OBSERVABLES = ("mandel", "s_X", "s_Y", "S_XA", "S_YA")

    def __post_init__(self) -> None:
        if self.variable not in self.VARIABLES:
            raise ValueError(f"variable must be one of {self.VARIABLES}")
        if self.observable not in self.OBSERVABLES:
            raise ValueError(f"observable must be one of {self.OBSERVABLES}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.count > 1 and not self.lo < self.hi:
            raise ValueError("range must satisfy lo < hi")
        if self.variable == "a_over_l0" and self.lo <= 0:
            raise ValueError("a_over_l0 must be positive")

    def grid(self) -> np.ndarray:
        if self.count == 1:
            return np.asarray([self.lo], dtype=float)
        if self.variable == "a_over_l0":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class SweepPoint:
    x: float
    value: float
    fock_dim: int
    residual: float


def _evaluate(spec: SweepSpec, x: float) -> SweepPoint:
    a_over_l0 = x if spec.variable == "a_over_l0" else spec.a_over_l0
    beta_sq = x if spec.variable == "beta_sq" else spec.beta_sq
    phi_deg = x if spec.variable == "phi" else spec.phi_deg
    params = derive_params(a_over_l0 / (spec.m * spec.omega), spec.m, spec.omega)
    f = params.deformation()
    state = build_nlcs(f, np.sqrt(beta_sq))
    residual = eigenvalue_residual(state, f)
    phi = np.radians(phi_deg)
    if spec.observable == "mandel":
        value = mandel_parameter(state)
    elif spec.observable in ("s_X", "s_Y"):
        value = quadrature_squeezing(state, phi, spec.observable[-1])
    else:
        value = deformed_squeezing(state, f, phi, spec.observable[-2])
    return SweepPoint(x=float(x), value=value, fock_dim=state.dim, residual=residual)


def run_sweep(spec: SweepSpec) -> list[SweepPoint]:
    """Evaluate the spec on its grid; deterministic for a fixed spec."""
    return [_evaluate(spec, x) for x in spec.grid()]


# Default series behind the four bundled report sweeps: the Mandel parameter
# and plain squeezing versus well width, squeezing versus quadrature phase,
# and the deformed squeezing parameter versus well width.
FIGURE_DEFAULTS = {
    1: {"series": ("beta_sq", (0.5, 1.0, 1.5)), "observable": "mandel",
        "variable": "a_over_l0", "lo": 0.3, "hi": 10.0},
    2: {"series": ("a_over_l0", (0.5, 1.0, 2.5)), "observable": "s_X",
        "variable": "phi", "lo": 0.0, "hi": 360.0, "beta_sq": 4.0},
    3: {"series": ("phi_deg", (90.0, 100.0, 110.0)), "observable": "s_X",
        "variable": "a_over_l0", "lo": 0.3, "hi": 10.0, "beta_sq": 1.0},
    4: {"series": ("beta_sq", (1.0, 1.5, 2.5)), "observable": "S_XA",
        "variable": "a_over_l0", "lo": 0.3, "hi": 10.0},
}


def figure_series(
    which: int,
    points: int = 200,
    series_values: tuple[float, ...] | None = None,
    beta_sq: float | None = None,
    phi_deg: float = 0.0,
    m: float = 1.0,
    omega: float = 1.0,
) -> tuple[str, list[tuple[float, list[SweepPoint]]]]:
    """Sweep bundle for one of the four bundled reports.

    Returns the series parameter name and, per series value, the sweep rows.
    beta_sq overrides the pinned amplitude of the phase and width sweeps;
    it is ignored when the series itself runs over beta_sq.
    """
    if which not in FIGURE_DEFAULTS:
        raise ValueError(f"figure index must be 1..4, got {which}")
    cfg = FIGURE_DEFAULTS[which]
    series_name, defaults = cfg["series"]
    values = tuple(series_values) if series_values is not None else defaults
    pinned_beta_sq = beta_sq if beta_sq is not None else cfg.get("beta_sq", 1.0)
    out = []
    for v in values:
        kwargs = dict(
            variable=cfg["variable"], lo=cfg["lo"], hi=cfg["hi"], count=points,
            observable=cfg["observable"], m=m, omega=omega,
            beta_sq=pinned_beta_sq, phi_deg=phi_deg,
        )
        kwargs[series_name] = v
        out.append((float(v), run_sweep(SweepSpec(**kwargs))))
    return series_name, out
