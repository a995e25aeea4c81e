"""Exception and warning types shared across the package."""


class InvalidDimensionError(ValueError):
    """A basis size or occupation index is out of range."""


class DimensionMismatchError(ValueError):
    """Operands live on Hilbert spaces of different size."""


class ContractViolationError(ValueError):
    """An input breaks a stated precondition (e.g. a non-hermitian generator)."""


class DomainError(ValueError):
    """A parameter lies outside the domain where a formula is defined."""


class IntegrationError(RuntimeError):
    """The adaptive ODE integrator failed (step-size underflow or similar)."""


class ConfigError(ValueError):
    """Scenario configuration failed validation.

    ``errors`` holds every problem found, not just the first one.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class TruncationWarning(UserWarning):
    """The Fock truncation is too small for the requested state or observable."""


class PerturbationBreakdownWarning(UserWarning):
    """A perturbative probability left [0, 1]."""


class RegimeWarning(UserWarning):
    """Parameters fall outside the regime where an approximation holds."""


class NearSingularWarning(UserWarning):
    """A denominator is close to a pole and was clamped."""


class DegenerateBlockWarning(UserWarning):
    """A 2x2 block is fully degenerate, so its eigenbasis is arbitrary."""
