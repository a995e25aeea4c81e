"""Jaynes-Cummings model of a two-level atom in a single cavity mode.

Atom-field kets are arrays of length ``2 * field_dim`` with index
``atom * field_dim + n``, where atom 0 is ``|e>`` and atom 1 is ``|g>``
(the atom is the major tensor factor). hbar = 1.

Within each block ``{|e,n>, |g,n+1>}`` the Hamiltonian is

    [[n w + w0/2,        lam sqrt(n+1)],
     [lam sqrt(n+1),     (n+1) w - w0/2]]

whose eigenvalues are ``(n + 1/2) w +/- Omega_n / 2`` with
``Omega_n = sqrt(Delta^2 + 4 lam^2 (n+1))`` and ``Delta = w0 - w``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ContractViolationError, DegenerateBlockWarning, DomainError, InvalidDimensionError
from .fock_core import ladder_operators, tensor

EXCITED = 0
GROUND = 1
ATOM_LABELS = ("e", "g")

SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |e><g|
SIGMA_MINUS = SIGMA_PLUS.T.copy()                       # |g><e|
SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)          # |e><e| - |g><g|


@dataclass(frozen=True)
class JCParams:
    omega: float
    omega0: float
    lam: float

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError("field frequency omega must be positive")
        if not self.omega0 > 0:
            raise DomainError("atomic frequency omega0 must be positive")
        if not self.lam >= 0:
            raise DomainError("coupling lam must be non-negative")

    @property
    def detuning(self) -> float:
        return self.omega0 - self.omega


@dataclass(frozen=True)
class DressedPair:
    """Dressed doublet of block ``n``.

    ``plus_state`` and ``minus_state`` are 2-vectors in the bare block basis
    ``(|e,n>, |g,n+1>)``. ``degenerate`` marks the ``lam = Delta = 0`` case,
    where any basis diagonalizes the block and the bare one is returned.
    """

    n: int
    E_plus: float
    E_minus: float
    Phi_n: float
    plus_state: np.ndarray
    minus_state: np.ndarray
    degenerate: bool = False


def atom_field_state(atom: np.ndarray, field: np.ndarray) -> np.ndarray:
    """``atom ⊗ field`` with atom amplitudes ordered ``(e, g)``."""
    return tensor(np.asarray(atom, dtype=complex), np.asarray(field, dtype=complex))


def atom_operator(op: np.ndarray, field_dim: int) -> np.ndarray:
    return tensor(op, np.eye(field_dim, dtype=complex))


def field_operator(op: np.ndarray) -> np.ndarray:
    return tensor(np.eye(2, dtype=complex), op)


def emission_absorption_elements(n: int, coupling: complex) -> tuple[complex, complex]:
    """``(<b,n-1|H|a,n>, <b,n+1|H|a,n>) = (-g sqrt(n), g sqrt(n+1))``."""
    if n < 0:
        raise DomainError("photon number must be >= 0")
    return -coupling * math.sqrt(n), coupling * math.sqrt(n + 1)


def squared_emission_absorption(n: int, coupling_sq=Fraction(1)):
    """Squared moduli ``(|absorption|^2, |emission|^2) = (g^2 n, g^2 (n+1))``.

    Works in whatever number type ``coupling_sq`` has, so a ``Fraction``
    gives exact rates.
    """
    if n < 0:
        raise DomainError("photon number must be >= 0")
    return coupling_sq * n, coupling_sq * (n + 1)


def emission_absorption_ratio(n: int) -> Fraction:
    """Stimulated-emission to absorption rate ratio, exactly ``(n+1)/n``."""
    if n < 1:
        raise DomainError("absorption vanishes at n = 0; the ratio is undefined")
    absorption, emission = squared_emission_absorption(n)
    return Fraction(emission) / Fraction(absorption)


def lorentzian(x: float, width: float) -> float:
    """Unit-area Lorentzian with full width at half maximum ``width``."""
    half = 0.5 * width
    return half / (math.pi * (x * x + half * half))


def golden_rule_rate(coupling: complex, lineshape_width: float, omega: float, omega_fi: float) -> float:
    """``(pi/2) |g|^2 L(omega - omega_fi)`` with ``L`` standing in for the delta function."""
    if not lineshape_width > 0:
        raise DomainError("lineshape width must be positive")
    return 0.5 * math.pi * abs(coupling) ** 2 * lorentzian(omega - omega_fi, lineshape_width)


def jc_block(n: int, p: JCParams) -> np.ndarray:
    if n < 0:
        raise DomainError("block index must be >= 0")
    g = p.lam * math.sqrt(n + 1)
    return np.array([[n * p.omega + 0.5 * p.omega0, g],
                     [g, (n + 1) * p.omega - 0.5 * p.omega0]])


def rabi_frequency(n: int, p: JCParams) -> float:
    if n < 0:
        raise DomainError("block index must be >= 0")
    # hypot keeps Omega_n(0) = 2 lam sqrt(n+1) and Omega_n = |Delta| at lam = 0 exact
    return math.hypot(p.detuning, 2 * p.lam * math.sqrt(n + 1))


def dressed_modes(n: int, p: JCParams) -> DressedPair:
    omega_n = rabi_frequency(n, p)
    centre = (n + 0.5) * p.omega
    degenerate = p.lam == 0 and p.detuning == 0
    if degenerate:
        warnings.warn(f"block {n} is fully degenerate; returning the bare basis",
                      DegenerateBlockWarning, stacklevel=2)
    phi = math.atan2(2 * p.lam * math.sqrt(n + 1), p.detuning)
    c, s = math.cos(0.5 * phi), math.sin(0.5 * phi)
    return DressedPair(
        n=n,
        E_plus=centre + 0.5 * omega_n,
        E_minus=centre - 0.5 * omega_n,
        Phi_n=phi,
        plus_state=np.array([c, s]),
        minus_state=np.array([-s, c]),
        degenerate=degenerate,
    )


def jc_hamiltonian(p: JCParams, field_dim: int) -> np.ndarray:
    """``w0/2 sigma_z + w a^dagger a + lam (sigma_+ a + sigma_- a^dagger)``."""
    if field_dim < 2:
        raise InvalidDimensionError("field_dim must be >= 2")
    a, a_dag, num = ladder_operators(field_dim)
    eye = np.eye(field_dim)
    return (0.5 * p.omega0 * tensor(SIGMA_Z, eye)
            + p.omega * tensor(np.eye(2), num)
            + p.lam * (tensor(SIGMA_PLUS, a) + tensor(SIGMA_MINUS, a_dag)))


def excitation_number(field_dim: int) -> np.ndarray:
    """``sigma_+ sigma_- + a^dagger a``, conserved by the JC Hamiltonian."""
    _, _, num = ladder_operators(field_dim)
    return tensor(SIGMA_PLUS @ SIGMA_MINUS, np.eye(field_dim)) + tensor(np.eye(2), num)


def evolve_dressed(p: JCParams, C: np.ndarray, t: float | np.ndarray,
                   field_dim: int | None = None) -> np.ndarray:
    """Evolve ``|e> ⊗ sum_n C_n |n>`` by expanding in the dressed states.

    Each ``|e,n>`` splits into ``cos(Phi_n/2)|n,+> - sin(Phi_n/2)|n,->`` and
    the dressed states pick up ``exp(-i E_+/- t)``. Block ``n`` reaches
    ``|g,n+1>``, so the output needs ``field_dim >= len(C) + 1`` (the
    default). ``t`` may be an array, in which case the result has shape
    ``(len(t), 2 * field_dim)``.
    """
    C = np.asarray(C, dtype=complex)
    if abs(np.vdot(C, C).real - 1.0) > 1e-10:
        raise ContractViolationError("field amplitudes must be normalized to 1e-10")
    nmax = C.size
    field_dim = nmax + 1 if field_dim is None else field_dim
    if field_dim < nmax + 1:
        raise InvalidDimensionError(f"field_dim must be at least len(C) + 1 = {nmax + 1}")
    times = np.atleast_1d(np.asarray(t, dtype=float))

    pairs = [dressed_modes(n, p) for n in range(nmax)] if p.lam > 0 or p.detuning != 0 else None
    if pairs is None:
        # lam = Delta = 0: |e,n> is itself stationary at energy (n + 1/2) w
        n = np.arange(nmax)
        out = np.zeros((times.size, 2 * field_dim), dtype=complex)
        out[:, :nmax] = C * np.exp(-1j * np.outer(times, (n + 0.5) * p.omega))
        return out[0] if np.ndim(t) == 0 else out

    c = np.array([math.cos(0.5 * q.Phi_n) for q in pairs])
    s = np.array([math.sin(0.5 * q.Phi_n) for q in pairs])
    e_plus = np.array([q.E_plus for q in pairs])
    e_minus = np.array([q.E_minus for q in pairs])
    ph_plus = np.exp(-1j * np.outer(times, e_plus))
    ph_minus = np.exp(-1j * np.outer(times, e_minus))
    # amplitude on |n,+> is C c e^{-iE+t}, on |n,-> is -C s e^{-iE-t}
    amp_plus = C * c * ph_plus
    amp_minus = -C * s * ph_minus
    out = np.zeros((times.size, 2 * field_dim), dtype=complex)
    out[:, :nmax] = c * amp_plus - s * amp_minus                              # |e,n>
    out[:, field_dim + 1:field_dim + 1 + nmax] = s * amp_plus + c * amp_minus  # |g,n+1>
    return out[0] if np.ndim(t) == 0 else out


def atomic_inversion(psi: np.ndarray) -> float | np.ndarray:
    """``<sigma_z> = P(e) - P(g)``; accepts one state or a stack of states."""
    psi = np.asarray(psi)
    half = psi.shape[-1] // 2
    prob = np.abs(psi) ** 2
    inv = prob[..., :half].sum(axis=-1) - prob[..., half:].sum(axis=-1)
    return float(inv) if psi.ndim == 1 else inv
