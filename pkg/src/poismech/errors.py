"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An argument breaks a documented precondition (bad shape, bad index,
    non-unimodular matrix where one is required, ...)."""


class NumericDomainError(ArithmeticError):
    """Input is outside the numerical domain of an operation (e.g. a
    hamiltonian value below its attainable minimum)."""


class StiffnessError(RuntimeError):
    """Step-size control underflowed; the flow is too stiff for the
    fixed-order integrator at the requested tolerance."""


class DivergenceError(RuntimeError):
    """The integrated state left the finite floating-point range."""

    def __init__(self, message: str, last_good_time: float):
        super().__init__(message)
        self.last_good_time = last_good_time


class EstimationError(RuntimeError):
    """A statistical estimate (tail fit, asymptote fit) has too few samples
    or an ill-conditioned design."""


class ConfigError(ValueError):
    """Scenario configuration rejected; carries the offending field path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
