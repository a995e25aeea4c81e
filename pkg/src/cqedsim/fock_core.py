"""Dense linear algebra on a truncated single-mode Fock space.

States are 1-D complex numpy arrays and operators are square complex
arrays. Everything is built at a fixed truncation ``dim``; products are
exact matrix products on the truncated space, so ``[a, a^dagger]`` is the
identity except for its last diagonal entry, which equals ``-(dim - 1)``.

Units: hbar = 1 throughout, so ``evolve`` computes ``exp(-i H t) psi``.
"""

from __future__ import annotations

import math
import warnings
from typing import Sequence

import numpy as np

from .errors import (
    ContractViolationError,
    DimensionMismatchError,
    InvalidDimensionError,
    TruncationWarning,
)

HERMITIAN_ATOL = 1e-10


def _check_dim(dim: int) -> int:
    if int(dim) != dim or dim < 1:
        raise InvalidDimensionError(f"basis size must be a positive integer, got {dim!r}")
    return int(dim)


def ladder_operators(dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(a, a_dagger, number)`` on a ``dim``-level Fock space.

    ``a`` carries ``sqrt(n)`` at ``(n-1, n)``; ``number`` is exactly
    ``diag(0, 1, ..., dim-1)`` rather than the product ``a_dagger @ a`` so the
    diagonal is free of rounding.
    """
    dim = _check_dim(dim)
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)
    a_dag = a.conj().T.copy()
    number = np.diag(np.arange(dim, dtype=float)).astype(complex)
    return a, a_dag, number


def number_state(n: int, dim: int) -> np.ndarray:
    dim = _check_dim(dim)
    if not 0 <= n < dim:
        raise InvalidDimensionError(f"occupation {n} outside truncated basis of size {dim}")
    psi = np.zeros(dim, dtype=complex)
    psi[n] = 1.0
    return psi


def coherent_state(alpha: complex, dim: int) -> np.ndarray:
    """Truncated coherent state ``exp(-|alpha|^2/2) sum alpha^n/sqrt(n!) |n>``.

    No renormalization is applied after truncation, so ``1 - norm`` measures
    the weight lost to the cutoff. A ``TruncationWarning`` is issued when
    ``|alpha|^2 + 6|alpha| + 10 > dim`` and alpha is nonzero.
    """
    dim = _check_dim(dim)
    alpha = complex(alpha)
    r = abs(alpha)
    if r == 0.0:
        return number_state(0, dim)  # the vacuum loses nothing to the cutoff
    if r * r + 6 * r + 10 > dim:
        warnings.warn(
            f"dim={dim} may be too small for a coherent state with |alpha|={r:.3g}",
            TruncationWarning,
            stacklevel=2,
        )
    # log-space magnitudes avoid overflow of alpha^n and n! separately
    n = np.arange(dim)
    log_mag = -0.5 * r * r + n * math.log(r) - 0.5 * np.array([math.lgamma(k + 1) for k in n])
    phase = np.exp(1j * n * np.angle(alpha))
    return np.exp(log_mag) * phase


def dagger(A: np.ndarray) -> np.ndarray:
    return np.conj(A).T


def is_hermitian(A: np.ndarray, atol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(A - dagger(A)), initial=0.0) <= atol)


def _same_shape(A: np.ndarray, B: np.ndarray) -> None:
    if A.shape != B.shape:
        raise DimensionMismatchError(f"shape mismatch: {A.shape} vs {B.shape}")


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    _same_shape(A, B)
    return A @ B - B @ A


def expectation(psi: np.ndarray, A: np.ndarray) -> complex:
    """``<psi|A|psi>`` (no normalization is applied)."""
    psi = np.asarray(psi)
    A = np.asarray(A)
    if A.shape != (psi.size, psi.size):
        raise DimensionMismatchError(f"operator {A.shape} does not act on a state of size {psi.size}")
    return complex(np.vdot(psi, A @ psi))


def norm(psi: np.ndarray) -> float:
    return float(np.linalg.norm(psi))


def fidelity(psi: np.ndarray, phi: np.ndarray) -> float:
    """``|<psi|phi>|^2`` for (assumed normalized) pure states."""
    _same_shape(np.asarray(psi), np.asarray(phi))
    return float(abs(np.vdot(psi, phi)) ** 2)


def tensor(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor as the slow (major) index.

    Both operands must be of the same kind: two kets or two operators.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    if A.ndim != B.ndim or A.ndim not in (1, 2):
        raise DimensionMismatchError("tensor needs two states or two operators")
    return np.kron(A, B)


def composite_labels(left: Sequence[str], right: Sequence[str]) -> list[str]:
    """Basis labels of ``tensor(left, right)``, e.g. ``["e⊗0", "e⊗1", ...]``."""
    return [f"{l}⊗{r}" for l in left for r in right]


def fock_labels(dim: int) -> list[str]:
    return [str(n) for n in range(_check_dim(dim))]


def _eigh_checked(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionMismatchError(f"generator must be square, got {H.shape}")
    scale = max(1.0, float(np.max(np.abs(H), initial=0.0)))
    if not is_hermitian(H, HERMITIAN_ATOL * scale):
        raise ContractViolationError("time evolution requires a hermitian generator")
    # symmetrize so rounding-level asymmetry never reaches the eigensolver
    return np.linalg.eigh(0.5 * (H + dagger(H)))


def propagator(H: np.ndarray, t: float) -> np.ndarray:
    """``exp(-i H t)`` built from the hermitian eigendecomposition of ``H``."""
    evals, evecs = _eigh_checked(H)
    return (evecs * np.exp(-1j * evals * t)) @ dagger(evecs)


def evolve(H: np.ndarray, psi0: np.ndarray, t: float) -> np.ndarray:
    """Return ``exp(-i H t) psi0``; ``t == 0`` returns a copy of ``psi0``."""
    psi0 = np.asarray(psi0, dtype=complex)
    if np.asarray(H).shape != (psi0.size, psi0.size):
        raise DimensionMismatchError(f"generator {np.shape(H)} does not act on a state of size {psi0.size}")
    evals, evecs = _eigh_checked(H)
    if t == 0:
        return psi0.copy()
    coeffs = dagger(evecs) @ psi0
    return evecs @ (np.exp(-1j * evals * t) * coeffs)


def evolve_series(H: np.ndarray, psi0: np.ndarray, times: Sequence[float]) -> np.ndarray:
    """Evolve ``psi0`` to every time in ``times`` with one diagonalization.

    Returns an array of shape ``(len(times), dim)``.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if np.asarray(H).shape != (psi0.size, psi0.size):
        raise DimensionMismatchError(f"generator {np.shape(H)} does not act on a state of size {psi0.size}")
    evals, evecs = _eigh_checked(H)
    coeffs = dagger(evecs) @ psi0
    times = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.outer(times, evals))
    return (phases * coeffs) @ evecs.T
