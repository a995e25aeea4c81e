"""Large-detuning (dispersive) atom-cavity dynamics and cat-state generation.

The effective Hamiltonian ``chi (sigma_+ sigma_- + a^dagger a sigma_z)`` is
diagonal in the bare basis: ``|e,n>`` has energy ``chi (n+1)`` and ``|g,n>``
has energy ``-chi n``. A coherent field therefore rotates in phase space by
``+chi t`` when the atom is in ``|g>`` and by ``-chi t`` when it is in
``|e>``. Kets use the layout of :mod:`cqedsim.jaynes_cummings`.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidDimensionError, RegimeWarning, TruncationWarning
from .fock_core import coherent_state, ladder_operators, tensor
from .jaynes_cummings import SIGMA_MINUS, SIGMA_PLUS, SIGMA_Z

REGIME_THRESHOLD = 0.3


@dataclass(frozen=True)
class DispersiveParams:
    chi: float
    field_dim: int

    def __post_init__(self):
        if not (math.isfinite(self.chi) and self.chi != 0):
            raise DomainError("chi must be finite and nonzero")
        if int(self.field_dim) != self.field_dim or self.field_dim < 2:
            raise InvalidDimensionError("field_dim must be an integer >= 2")


def dispersive_shift(lam: float, Delta: float) -> float:
    """``chi = lam^2 / Delta``; warns when ``|lam / Delta| >= 0.3``."""
    if Delta == 0:
        raise DomainError("dispersive shift undefined at zero detuning")
    if abs(lam / Delta) >= REGIME_THRESHOLD:
        warnings.warn(f"|lam/Delta| = {abs(lam / Delta):.3g} is not small; dispersive approximation is poor",
                      RegimeWarning, stacklevel=2)
    return lam * lam / Delta


def _diagonal_energies(p: DispersiveParams) -> np.ndarray:
    n = np.arange(p.field_dim, dtype=float)
    return np.concatenate([p.chi * (n + 1), -p.chi * n])


def effective_hamiltonian(p: DispersiveParams) -> np.ndarray:
    _, _, num = ladder_operators(p.field_dim)
    return p.chi * (tensor(SIGMA_PLUS @ SIGMA_MINUS, np.eye(p.field_dim)) + tensor(SIGMA_Z, num))


def dispersive_evolve(psi: np.ndarray, p: DispersiveParams, t: float) -> np.ndarray:
    """Apply ``exp(-i H_eff t)`` as closed-form phases on each bare basis vector."""
    psi = np.asarray(psi, dtype=complex)
    if psi.size != 2 * p.field_dim:
        raise InvalidDimensionError(f"state size {psi.size} does not match 2*field_dim={2 * p.field_dim}")
    return np.exp(-1j * _diagonal_energies(p) * t) * psi


def balanced_atom(phi: float) -> np.ndarray:
    """``(|g> + e^{i phi}|e>) / sqrt(2)`` in ``(e, g)`` order."""
    return np.array([cmath.exp(1j * phi), 1.0]) / math.sqrt(2)


def cat_entangle(alpha: complex, phi: float, p: DispersiveParams, t: float) -> np.ndarray:
    """Balanced atom times ``|alpha>`` after dispersive evolution for time ``t``.

    Built directly as
    ``(|g>|alpha e^{i chi t}> + e^{-i(chi t - phi)} |e>|alpha e^{-i chi t}>) / sqrt(2)``.
    """
    theta = p.chi * t
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g_branch = coherent_state(alpha * cmath.exp(1j * theta), p.field_dim)
        e_branch = coherent_state(alpha * cmath.exp(-1j * theta), p.field_dim)
    if abs(alpha) ** 2 + 6 * abs(alpha) + 10 > p.field_dim:
        warnings.warn("field_dim may be too small for this alpha", TruncationWarning, stacklevel=2)
    weight = cmath.exp(-1j * (theta - phi))
    return np.concatenate([weight * e_branch, g_branch]) / math.sqrt(2)


def reduced_atom_density(psi: np.ndarray) -> np.ndarray:
    """Partial trace over the field, returning the 2x2 atomic density matrix."""
    psi = np.asarray(psi, dtype=complex)
    m = psi.reshape(2, psi.size // 2)
    return m @ m.conj().T


def reduced_atom_purity(psi: np.ndarray) -> float:
    rho = reduced_atom_density(psi)
    return float(np.trace(rho @ rho).real)


def branch_overlap(psi: np.ndarray) -> complex:
    """Inner product of the normalized field branches conditioned on ``|g>`` and ``|e>``."""
    psi = np.asarray(psi, dtype=complex)
    half = psi.size // 2
    e_branch, g_branch = psi[:half], psi[half:]
    return complex(np.vdot(g_branch, e_branch) / (np.linalg.norm(g_branch) * np.linalg.norm(e_branch)))


def coherent_overlap(beta: complex, gamma: complex) -> complex:
    """``<beta|gamma>`` for untruncated coherent states."""
    beta, gamma = complex(beta), complex(gamma)
    return cmath.exp(-0.5 * abs(beta) ** 2 - 0.5 * abs(gamma) ** 2 + beta.conjugate() * gamma)


def field_mean(psi: np.ndarray, atom: int) -> complex:
    """``<a>`` of the field branch attached to atomic level ``atom`` (0 = e, 1 = g)."""
    psi = np.asarray(psi, dtype=complex)
    half = psi.size // 2
    branch = psi[atom * half:(atom + 1) * half]
    a, _, _ = ladder_operators(half)
    return complex(np.vdot(branch, a @ branch) / np.vdot(branch, branch).real)

