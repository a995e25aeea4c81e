"""Thermal single-mode field, parametrized by ``x = hbar omega / (k_B T)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidDimensionError


def _check_x(x: float) -> float:
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"hbar*omega/(k_B*T) must be positive and finite (x > 0), got {x!r}")
    return float(x)


@dataclass(frozen=True)
class ThermalSpec:
    x: float
    dim: int

    def __post_init__(self):
        _check_x(self.x)
        if int(self.dim) != self.dim or self.dim < 1:
            raise InvalidDimensionError(f"dim must be a positive integer, got {self.dim!r}")


def partition_function(x: float) -> float:
    """``Tr exp(-H/kT)`` with ``E_n = hbar omega (n + 1/2)``: ``e^{-x/2} / (1 - e^{-x})``."""
    x = _check_x(x)
    return math.exp(-0.5 * x) / -math.expm1(-x)


def occupation_probabilities(spec: ThermalSpec) -> np.ndarray:
    """Boltzmann weights ``P_n = (1 - e^{-x}) e^{-n x}`` for ``n < dim``.

    The array sums to ``1 - e^{-x dim}``; the missing weight is the tail
    beyond the truncation.
    """
    ratio = math.exp(-spec.x)
    # cumulative product keeps P[n+1]/P[n] equal to e^{-x} to one rounding
    weights = np.full(spec.dim, ratio)
    weights[0] = -math.expm1(-spec.x)
    return np.cumprod(weights)


def thermal_density(spec: ThermalSpec) -> np.ndarray:
    """Diagonal thermal density matrix; off-diagonal entries are exactly zero."""
    return np.diag(occupation_probabilities(spec)).astype(complex)


def mean_photon_number(x: float) -> float:
    """Bose-Einstein occupation ``1 / (e^x - 1)``."""
    return 1.0 / math.expm1(_check_x(x))


def purity(rho: np.ndarray) -> float:
    return float(np.trace(rho @ rho).real)
