"""Perturbation theory for an atom driven by a classical field ``E0 cos(omega t)``.

Conventions (hbar = 1): the coupling is ``H_int_lk(t) = -M_lk cos(omega t)``
with ``M_lk = (d . E0)_lk``. Interaction-picture amplitudes obey

    dC_l/dt = -i sum_k C_k H_int_lk(t) exp(i omega_lk t),  omega_lk = E_l - E_k.

The field is switched on at ``t = 0``; all integrals start there.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid, solve_ivp, trapezoid

from .errors import ContractViolationError, DomainError, IntegrationError, PerturbationBreakdownWarning


@dataclass(frozen=True)
class DriveSpec:
    """Two-level drive. ``omega_fi`` is signed: ``E_f - E_i``."""

    M: complex
    omega: float
    omega_fi: float

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError("drive frequency omega must be positive")
        if not np.isfinite(self.M):
            raise DomainError("coupling M must be finite")

    @property
    def detuning(self) -> float:
        return self.omega - self.omega_fi


@dataclass(frozen=True)
class LevelSystem:
    energies: tuple[float, ...]
    couplings: np.ndarray
    initial: int = 0

    def __post_init__(self):
        object.__setattr__(self, "energies", tuple(float(e) for e in self.energies))
        M = np.asarray(self.couplings, dtype=complex)
        object.__setattr__(self, "couplings", M)
        n = len(self.energies)
        if M.shape != (n, n):
            raise ContractViolationError(f"couplings must be {n}x{n}, got {M.shape}")
        if np.max(np.abs(M - M.conj().T), initial=0.0) > 1e-12:
            raise ContractViolationError("couplings must be hermitian")
        if np.max(np.abs(np.diag(M)), initial=0.0) > 0:
            raise ContractViolationError("dipole couplings vanish on the diagonal (parity)")
        if not 0 <= self.initial < n:
            raise ContractViolationError("initial level index out of range")

    @property
    def size(self) -> int:
        return len(self.energies)

    def scaled(self, s: float) -> "LevelSystem":
        return LevelSystem(self.energies, s * self.couplings, self.initial)


def two_level_system(d: DriveSpec) -> LevelSystem:
    """Levels ``|i> = 0`` and ``|f> = 1`` matching a ``DriveSpec``."""
    couplings = np.array([[0, np.conj(d.M)], [d.M, 0]], dtype=complex)
    return LevelSystem((0.0, d.omega_fi), couplings, initial=0)


def _phase_integral(w: float, t: float) -> complex:
    # int_0^t exp(i w s) ds, written so that w -> 0 needs no special case
    return t * np.exp(0.5j * w * t) * np.sinc(w * t / (2 * np.pi))


def _warn_if_unphysical(p: float) -> None:
    if not 0.0 <= p <= 1.0 + 1e-9:
        warnings.warn(f"perturbative probability {p:.4g} outside [0, 1]: perturbation theory has broken down",
                      PerturbationBreakdownWarning, stacklevel=3)


def first_order_amplitude(d: DriveSpec, t: float) -> complex:
    """Full first-order amplitude, resonant and anti-resonant terms.

        C = (M/2) [ (e^{i(w+w_fi)t} - 1)/(w+w_fi) - (e^{-i Delta t} - 1)/Delta ]

    with ``Delta = w - w_fi``. Vanishing denominators take their limits.
    """
    if t < 0:
        raise DomainError("t must be >= 0")
    c = 0.5j * d.M * (_phase_integral(d.omega_fi + d.omega, t) + _phase_integral(d.omega_fi - d.omega, t))
    _warn_if_unphysical(abs(c) ** 2)
    return complex(c)


def rwa_transition_probability(d: DriveSpec, t: float) -> float:
    """``|M|^2 sin^2(Delta t / 2) / Delta^2``, equal to ``|M|^2 t^2 / 4`` at resonance."""
    if t < 0:
        raise DomainError("t must be >= 0")
    p = float(abs(d.M) ** 2 * (0.5 * t * np.sinc(d.detuning * t / (2 * np.pi))) ** 2)
    _warn_if_unphysical(p)
    return p


def _coupling_matrix(sys: LevelSystem, omega: float, s: np.ndarray) -> np.ndarray:
    # H_int_lk(s) exp(i w_lk s) on a time grid; shape (len(s), n, n)
    E = np.asarray(sys.energies)
    w = E[:, None] - E[None, :]
    return -sys.couplings[None] * np.cos(omega * s)[:, None, None] * np.exp(1j * w[None] * s[:, None, None])


def _second_order_trapezoid(sys: LevelSystem, omega: float, f: int, t: float, steps: int) -> complex:
    s = np.linspace(0.0, t, steps + 1)
    K = _coupling_matrix(sys, omega, s)
    inner = cumulative_trapezoid(K[:, :, sys.initial], s, axis=0, initial=0.0)
    outer = np.einsum("tl,tl->t", K[:, f, :], inner)
    return complex(-trapezoid(outer, s))


def second_order_amplitude(sys: LevelSystem, omega: float, f: int, t: float, steps: int = 2000) -> complex:
    """Second-order amplitude by nested trapezoid quadrature.

    ``C_f^(2)(t) = -sum_l int_0^t dt' K_fl(t') int_0^t' dt'' K_li(t'')`` with
    ``K_lk(s) = H_int_lk(s) exp(i w_lk s)``. The trapezoid rule at ``steps``
    and ``2 steps`` is combined by one Richardson step.
    """
    if steps < 100:
        raise DomainError("steps must be >= 100")
    if t < 0:
        raise DomainError("t must be >= 0")
    if not 0 <= f < sys.size:
        raise ContractViolationError("final level index out of range")
    coarse = _second_order_trapezoid(sys, omega, f, t, steps)
    fine = _second_order_trapezoid(sys, omega, f, t, 2 * steps)
    return (4 * fine - coarse) / 3


def amplitude_ode_oracle(sys: LevelSystem, omega: float, t: float | Sequence[float],
                         tol: float = 1e-10) -> np.ndarray:
    """Integrate the coupled amplitude equations with adaptive Dormand-Prince 4(5).

    ``t`` may be a single time (returns shape ``(n,)``) or an increasing
    sequence of times (returns shape ``(len(t), n)``).
    """
    if tol > 1e-8:
        raise DomainError("oracle tolerance must be <= 1e-8")
    times = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise DomainError("times must be non-negative and increasing")
    E = np.asarray(sys.energies)
    w = E[:, None] - E[None, :]
    M = sys.couplings

    def rhs(s, c):
        return 1j * np.cos(omega * s) * ((M * np.exp(1j * w * s)) @ c)

    c0 = np.zeros(sys.size, dtype=complex)
    c0[sys.initial] = 1.0
    t_end = float(times[-1])
    if t_end == 0.0:
        out = np.tile(c0, (times.size, 1))
    else:
        sol = solve_ivp(rhs, (0.0, t_end), c0, method="RK45", t_eval=times,
                        rtol=tol, atol=tol)
        if not sol.success:
            raise IntegrationError(f"amplitude integration failed: {sol.message}")
        out = sol.y.T
    return out[0] if np.ndim(t) == 0 else out
