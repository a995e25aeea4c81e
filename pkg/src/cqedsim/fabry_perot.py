"""Classical Fabry-Perot cavity response.

With round-trip phase ``phi`` the internal field is

    E_cav / E_in = sqrt(1 - R1) / (1 + e^{i phi} sqrt(R1 R2))

so resonance (maximum internal power) sits at odd multiples of pi. Mirrors
are lossless: each is the real orthogonal 2x2 transform
``[[sqrt(R), sqrt(1-R)], [sqrt(1-R), -sqrt(R)]]``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NearSingularWarning

POLE_TOL = 1e-12


def _check_reflectivity(R: float, name: str = "R") -> None:
    if not 0.0 <= R <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {R!r}")


@dataclass(frozen=True)
class CavitySpec:
    R1: float
    R2: float
    phi: float = math.pi
    E_in: complex = 1.0

    def __post_init__(self):
        _check_reflectivity(self.R1, "R1")
        _check_reflectivity(self.R2, "R2")


def mirror_transform(R: float) -> np.ndarray:
    _check_reflectivity(R)
    r, t = math.sqrt(R), math.sqrt(1.0 - R)
    return np.array([[r, t], [t, -r]])


def _denominator(R1: float, R2: float, phi):
    return 1.0 + np.exp(1j * np.asarray(phi)) * math.sqrt(R1 * R2)


def cavity_gain(spec: CavitySpec) -> complex:
    """``E_cav / E_in``. Near the pole the denominator is clamped to ``1e-12`` in magnitude."""
    den = complex(_denominator(spec.R1, spec.R2, spec.phi))
    if abs(den) < POLE_TOL:
        warnings.warn(f"|1 + e^(i phi) sqrt(R1 R2)| = {abs(den):.3g} is at the pole; clamped to {POLE_TOL:g}",
                      NearSingularWarning, stacklevel=2)
        den = POLE_TOL * (cmath.exp(1j * cmath.phase(den)) if den != 0 else 1.0)
    return math.sqrt(1.0 - spec.R1) / den


def cavity_field(spec: CavitySpec) -> complex:
    return cavity_gain(spec) * spec.E_in


def power_ratio(spec: CavitySpec) -> float:
    """``P_cav / P_in = (1 - R1) / |1 + e^{i phi} sqrt(R1 R2)|^2``."""
    return abs(cavity_gain(spec)) ** 2


def peak_power_ratio(R1: float, R2: float) -> float:
    """Resonant maximum ``(1 - R1) / (1 - sqrt(R1 R2))^2``, reached at ``phi = pi``."""
    _check_reflectivity(R1, "R1")
    _check_reflectivity(R2, "R2")
    return (1.0 - R1) / (1.0 - math.sqrt(R1 * R2)) ** 2


def frequency_sweep(spec: CavitySpec, phi_min: float, phi_max: float, points: int,
                    endpoint: bool = True) -> np.ndarray:
    """Power ratio on a uniform phase grid; returns rows ``(phi, power_ratio)``.

    The grid includes both ends. With ``endpoint=False`` the last point is
    dropped, which samples one full period without repeating it when
    ``phi_max - phi_min`` is ``2 pi``.
    """
    if points < 2:
        raise DomainError("a sweep needs at least 2 points")
    if endpoint:
        phis = np.linspace(phi_min, phi_max, points)
    else:
        phis = np.linspace(phi_min, phi_max, points + 1)[:-1]
    den = _denominator(spec.R1, spec.R2, phis)
    if np.min(np.abs(den)) < POLE_TOL:
        warnings.warn("sweep crosses the cavity pole; affected points clamped", NearSingularWarning, stacklevel=2)
        den = np.where(np.abs(den) < POLE_TOL, POLE_TOL, den)
    power = (1.0 - spec.R1) / np.abs(den) ** 2
    return np.column_stack([phis, power])


def round_trip_series(spec: CavitySpec, terms: int) -> complex:
    """Partial sum of the internal field over ``terms`` round trips, per unit input.

    Term ``k`` is ``sqrt(1 - R1) (-e^{i phi} sqrt(R1 R2))^k``; the geometric
    series sums to ``cavity_gain``.
    """
    if terms < 1:
        raise DomainError("need at least one term")
    q = -cmath.exp(1j * spec.phi) * math.sqrt(spec.R1 * spec.R2)
    k = np.arange(terms)
    return complex(math.sqrt(1.0 - spec.R1) * np.sum(q**k))


def series_error_bound(spec: CavitySpec, terms: int) -> float:
    """Tail bound ``r^terms / (1 - r)`` with ``r = sqrt(R1 R2)``."""
    r = math.sqrt(spec.R1 * spec.R2)
    return r**terms / (1.0 - r)
