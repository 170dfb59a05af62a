"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A user-supplied parameter violates a documented precondition."""


class ContractViolationError(ValueError):
    """Two objects that must share a lattice or convention do not."""


class GuardBandError(RuntimeError):
    """A density reached the protective band near the box edges."""
