"""Single-mode field observables and cavity mode counting.

This is the only module that carries SI constants. The field operator of a
standing-wave mode polarized along x is ``E0 * sin(k z) * (a + a^dagger)``
with ``E0 = sqrt(hbar omega / (V epsilon0))``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.constants as sc

from .errors import DomainError, InvalidDimensionError, TruncationWarning
from .fock_core import expectation, ladder_operators


@dataclass(frozen=True)
class PhysicalConstants:
    """Constants in SI units. Defaults are CODATA 2018 (via scipy)."""

    c: float = sc.c
    epsilon0: float = sc.epsilon_0
    mu0: float = sc.mu_0
    hbar: float = sc.hbar
    k_B: float = sc.k

    def __post_init__(self):
        for name in ("c", "epsilon0", "mu0", "hbar", "k_B"):
            if not getattr(self, name) > 0:
                raise DomainError(f"physical constant {name} must be positive")
        if abs(self.c**2 * self.mu0 * self.epsilon0 - 1.0) > 1e-9:
            raise DomainError("constants violate c^2 mu0 epsilon0 = 1")


# c = epsilon0 = mu0 = hbar = k_B = 1, for unit-free tests
NATURAL_UNITS = PhysicalConstants(c=1.0, epsilon0=1.0, mu0=1.0, hbar=1.0, k_B=1.0)


@dataclass(frozen=True)
class ModeSpec:
    L: float
    V: float
    omega: float
    z: float
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        problems = []
        if not self.L > 0:
            problems.append("L > 0")
        if not self.V > 0:
            problems.append("V > 0")
        if not self.omega > 0:
            problems.append("omega > 0")
        if not 0 <= self.z <= self.L:
            problems.append("0 <= z <= L")
        if problems:
            raise DomainError("invalid ModeSpec, need " + ", ".join(problems))

    @property
    def k(self) -> float:
        return self.omega / self.constants.c

    @classmethod
    def cavity_mode(cls, L: float, index: int, z: float, V: float | None = None,
                    constants: PhysicalConstants | None = None) -> "ModeSpec":
        """The ``index``-th standing-wave mode of a cavity of length ``L``.

        ``V`` defaults to ``L**3``.
        """
        constants = constants or PhysicalConstants()
        if index < 1:
            raise DomainError("cavity mode index starts at 1")
        omega = constants.c * index * math.pi / L
        return cls(L=L, V=L**3 if V is None else V, omega=omega, z=z, constants=constants)


def field_amplitudes(m: ModeSpec) -> tuple[float, float]:
    """Electric and magnetic field per photon, ``(E0, B0)``."""
    c = m.constants
    E0 = math.sqrt(c.hbar * m.omega / (m.V * c.epsilon0))
    B0 = (c.mu0 / m.k) * math.sqrt(c.epsilon0 * c.hbar * m.omega**3 / m.V)
    return E0, B0


def _mode_factor(m: ModeSpec) -> float:
    E0, _ = field_amplitudes(m)
    return E0 * math.sin(m.k * m.z)


def electric_field_operator(m: ModeSpec, dim: int) -> np.ndarray:
    if dim < 2:
        raise InvalidDimensionError("field operator needs dim >= 2")
    a, a_dag, _ = ladder_operators(dim)
    return _mode_factor(m) * (a + a_dag)


def number_field_commutator(m: ModeSpec, dim: int) -> np.ndarray:
    """``E0 sin(kz) (a^dagger - a)``; agrees with ``[n, E_x]`` on the leading block."""
    if dim < 2:
        raise InvalidDimensionError("field operator needs dim >= 2")
    a, a_dag, _ = ladder_operators(dim)
    return _mode_factor(m) * (a_dag - a)


def field_statistics(psi: np.ndarray, m: ModeSpec) -> tuple[float, float]:
    """Mean and variance of ``E_x`` in state ``psi``.

    Warns when ``psi`` has weight on the last basis vector, where the
    truncated ``E_x @ E_x`` is wrong.
    """
    psi = np.asarray(psi, dtype=complex)
    dim = psi.size
    if abs(psi[-1]) > 1e-8:
        warnings.warn("state has support at the truncation edge; <E_x^2> is corrupted",
                      TruncationWarning, stacklevel=2)
    E = electric_field_operator(m, dim)
    mean = expectation(psi, E).real
    # ||E psi||^2 instead of <psi|E E|psi> keeps the variance non-negative
    mean_sq = float(np.vdot(E @ psi, E @ psi).real)
    return mean, max(mean_sq - mean * mean, 0.0)


def cavity_frequencies(L: float, count: int,
                       constants: PhysicalConstants | None = None) -> list[tuple[float, float]]:
    """``[(k_n, omega_n)]`` for ``n = 1..count`` with ``k_n = n pi / L``."""
    if count < 1:
        raise DomainError("count must be >= 1")
    if not L > 0:
        raise DomainError("L must be positive")
    c = (constants or PhysicalConstants()).c
    return [(n * math.pi / L, c * n * math.pi / L) for n in range(1, count + 1)]


def mode_density(omega: float, constants: PhysicalConstants | None = None) -> float:
    """Modes per unit volume per unit angular frequency, ``omega^2 / (pi^2 c^3)``.

    Both polarizations are included.
    """
    if omega < 0:
        raise DomainError("omega must be >= 0")
    c = (constants or PhysicalConstants()).c
    return omega**2 / (math.pi**2 * c**3)


def count_box_modes(L: float, omega_lo: float, omega_hi: float,
                    constants: PhysicalConstants | None = None) -> int:
    """Count periodic-box modes with ``omega_lo <= omega < omega_hi``.

    Enumerates integer triples ``m`` with ``k = 2 pi |m| / L`` and counts two
    polarizations per triple. This is the discrete count that ``mode_density``
    approximates for large boxes.
    """
    c = (constants or PhysicalConstants()).c
    scale = L / (2 * math.pi * c)
    r_lo, r_hi = omega_lo * scale, omega_hi * scale
    m_max = int(math.floor(r_hi)) + 1
    mx, my = np.meshgrid(np.arange(-m_max, m_max + 1), np.arange(-m_max, m_max + 1), indexing="ij")
    rho2 = (mx**2 + my**2).astype(np.int64).ravel()

    def inside(r2: float) -> np.ndarray:
        # number of integers mz with rho2 + mz^2 < r2
        rest = r2 - rho2
        out = np.zeros_like(rho2)
        ok = rest > 0
        root = np.sqrt(rest[ok])
        top = np.ceil(root).astype(np.int64) - 1
        out[ok] = 2 * top + 1
        return out

    return int(2 * (inside(r_hi**2).sum() - inside(r_lo**2).sum()))
