"""Ladder operators on a truncated number-state basis.

Everything here is a dense complex matrix of shape (dim, dim) acting on the
states |0>, ..., |dim-1>.  Deformed operators are built from the undeformed
pair by a number-operator-dependent rescaling f(n) = sqrt(gamma*n + alpha).
Units are hbar = 1 throughout.

Finite truncation necessarily breaks ladder identities in the last basis
row/column, so every operator-identity contract in this module applies to
the interior block only (indices n <= dim-2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DeformationFunction",
    "ladder_operators",
    "deform_ladder",
    "commutator",
    "deformed_commutator_diagonal",
    "ladder_from_spectrum",
    "excitation_levels",
    "f_hamiltonian",
    "f_hamiltonian_level",
    "heisenberg_evolve",
    "heisenberg_phase",
    "heisenberg_closed_form",
]


@dataclass(frozen=True)
class DeformationFunction:
    """Number-dependent rescaling f(n) = sqrt(gamma*n + alpha).

    gamma >= 0 and alpha >= 1 guarantee f(n) >= 1 for every n >= 0; the
    undeformed oscillator is gamma=0, alpha=1 (f identical to 1).  Negative
    arguments, which occur when f is composed with shifted number operators,
    evaluate to ``negative_arg_value`` (1 by convention, so formally infinite
    products over shifted arguments terminate).
    """

    gamma: float
    alpha: float
    negative_arg_value: float = 1.0

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")

    def __call__(self, n):
        n = np.asarray(n, dtype=float)
        val = np.sqrt(np.maximum(self.gamma * n + self.alpha, 0.0))
        out = np.where(n < 0, self.negative_arg_value, val)
        return out if out.ndim else float(out)

    def squared(self, n):
        n = np.asarray(n, dtype=float)
        out = np.where(n < 0, self.negative_arg_value**2, self.gamma * n + self.alpha)
        return out if out.ndim else float(out)

    @property
    def is_identity(self) -> bool:
        return self.gamma == 0.0 and self.alpha == 1.0

    @classmethod
    def identity(cls) -> "DeformationFunction":
        return cls(gamma=0.0, alpha=1.0)


def _check_dim(dim: int) -> None:
    if not isinstance(dim, (int, np.integer)) or dim < 2:
        raise ValueError(f"truncation dimension must be an integer >= 2, got {dim!r}")


def _check_square_match(*ops: np.ndarray) -> int:
    dims = {op.shape for op in ops}
    if len(dims) != 1 or any(s[0] != s[1] for s in dims):
        raise ValueError(f"operators must be square with matching shape, got {sorted(dims)}")
    return ops[0].shape[0]


def ladder_operators(dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Undeformed annihilation, creation and number operators.

    a|n> = sqrt(n)|n-1>, a^dag|n> = sqrt(n+1)|n+1> for n < dim-1, and the
    number operator is returned as the exact matrix product a^dag @ a.
    """
    _check_dim(dim)
    a = np.zeros((dim, dim), dtype=complex)
    sub = np.sqrt(np.arange(1, dim, dtype=float))
    a[np.arange(dim - 1), np.arange(1, dim)] = sub
    a_dag = a.conj().T.copy()
    return a, a_dag, a_dag @ a


def deform_ladder(a: np.ndarray, f: DeformationFunction) -> tuple[np.ndarray, np.ndarray]:
    """Deformed pair A = a f(n), A^dag = f(n) a^dag from an annihilation operator.

    A^dag is the exact conjugate transpose of A for real f.
    """
    dim = _check_square_match(a)
    fvals = f(np.arange(dim))
    A = a * fvals[np.newaxis, :]
    A_dag = fvals[:, np.newaxis] * a.conj().T
    return A, A_dag


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Matrix commutator [x, y]."""
    _check_square_match(x, y)
    return x @ y - y @ x


def deformed_commutator_diagonal(f: DeformationFunction, n) -> np.ndarray:
    """Closed form of <n|[A, A^dag]|n> away from the truncation edge.

    Equals (n+1) f^2(n+1) - n f^2(n), which for f^2(n) = gamma*n + alpha
    reduces to gamma*(2n+1) + alpha.
    """
    n = np.asarray(n, dtype=float)
    return (n + 1) * f.squared(n + 1) - n * f.squared(n)


def ladder_from_spectrum(levels) -> tuple[np.ndarray, np.ndarray]:
    """Ladder pair generated by a strictly increasing energy spectrum.

    The spectrum is first shifted so the lowest level is zero; the pair is
    then A = sum_i sqrt(E_i)|i-1><i| and its conjugate transpose, so that
    A annihilates |0> and diag([A, A^dag]) reproduces the level gaps on the
    interior block.
    """
    levels = np.asarray(levels, dtype=float)
    if levels.ndim != 1 or levels.size < 2:
        raise ValueError("spectrum must be a 1-d sequence of at least two levels")
    if not np.all(np.diff(levels) > 0):
        raise ValueError("spectrum must be strictly increasing")
    shifted = levels - levels[0]
    dim = shifted.size
    A = np.zeros((dim, dim), dtype=complex)
    A[np.arange(dim - 1), np.arange(1, dim)] = np.sqrt(shifted[1:])
    return A, A.conj().T.copy()


def excitation_levels(A: np.ndarray, A_dag: np.ndarray) -> np.ndarray:
    """Excitation spectrum of a ladder pair: the diagonal of A^dag A.

    This is the spectrum with the ground level at zero that regenerates the
    pair through :func:`ladder_from_spectrum`; for A = a f(n) it equals
    n f^2(n).
    """
    _check_square_match(A, A_dag)
    return np.real(np.diag(A_dag @ A)).copy()


def f_hamiltonian(A: np.ndarray, A_dag: np.ndarray, omega_eff: float) -> np.ndarray:
    """Symmetrized oscillator Hamiltonian H = (omega_eff/2)(A A^dag + A^dag A).

    Diagonal in the number basis, with interior level n equal to
    (omega_eff/2) [(n+1) f^2(n+1) + n f^2(n)].
    """
    if omega_eff <= 0:
        raise ValueError(f"effective frequency must be positive, got {omega_eff}")
    _check_square_match(A, A_dag)
    return 0.5 * omega_eff * (A @ A_dag + A_dag @ A)


def f_hamiltonian_level(f: DeformationFunction, n, omega_eff: float = 1.0) -> np.ndarray:
    """Closed form of the interior spectrum of :func:`f_hamiltonian`."""
    n = np.asarray(n, dtype=float)
    return 0.5 * omega_eff * ((n + 1) * f.squared(n + 1) + n * f.squared(n))


def _diagonal_of(H: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    d = np.diag(H)
    off = H - np.diag(d)
    if np.abs(off).max() > tol * max(1.0, np.abs(d).max()):
        raise ValueError("Hamiltonian must be diagonal in the number basis")
    if np.abs(d.imag).max() > tol * max(1.0, np.abs(d.real).max()):
        raise ValueError("Hamiltonian diagonal must be real")
    return d.real


def heisenberg_evolve(A: np.ndarray, H: np.ndarray, t: float) -> np.ndarray:
    """Heisenberg evolution exp(iHt) A exp(-iHt) for a diagonal Hamiltonian.

    Applied as exact per-entry phases exp(i (E_m - E_n) t), so the cost is
    O(dim^2) and the evolution is exactly unitary.
    """
    _check_square_match(A, H)
    energies = _diagonal_of(H)
    phase = np.exp(1j * energies * t)
    return phase[:, np.newaxis] * A * phase.conj()[np.newaxis, :]


def heisenberg_phase(f: DeformationFunction, n) -> np.ndarray:
    """Frequency shift G(n) = ((n+2) f^2(n+2) - n f^2(n)) / 2 of the evolved pair."""
    n = np.asarray(n, dtype=float)
    return 0.5 * ((n + 2) * f.squared(n + 2) - n * f.squared(n))


def heisenberg_closed_form(
    A: np.ndarray, f: DeformationFunction, omega_eff: float, t: float
) -> np.ndarray:
    """Closed-form evolution exp(-i omega_eff G(n) t) A of a deformed pair.

    Matches :func:`heisenberg_evolve` under the symmetrized Hamiltonian on
    the interior block.
    """
    dim = _check_square_match(A)
    G = heisenberg_phase(f, np.arange(dim))
    return np.exp(-1j * omega_eff * G * t)[:, np.newaxis] * A
