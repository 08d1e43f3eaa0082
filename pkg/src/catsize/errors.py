"""Exception types shared across the package."""


class CatsizeError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(CatsizeError, ValueError):
    """Invalid argument or configuration value."""


class ConfigLookupError(CatsizeError, KeyError):
    """Occupation configuration not present in a basis."""


class BasisMismatchError(CatsizeError, ValueError):
    """Operands defined over different occupation bases."""


class ContractError(CatsizeError):
    """Input violates a documented precondition (e.g. state not normalized)."""


class DegenerateCurrentError(CatsizeError):
    """Projected current matrix has no resolvable positive/negative pair."""


class InsufficientWeightError(CatsizeError):
    """A current-sign projection carries less weight than the floor."""


class UnreachableTargetError(CatsizeError):
    """Target state keeps finite weight outside the exhausted subspace chain."""


class ChainOverflowError(CatsizeError):
    """Subspace chain grew past the basis dimension; the rank tolerance failed."""
