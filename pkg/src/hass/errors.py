"""Exception types shared across the package."""


class HassError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(HassError, ValueError):
    pass


class SearchExhausted(HassError):
    """A bounded search (cofactor, resampling) ran out of candidates."""


class NonCoprimeModuli(InvalidArgument):
    pass


class UnsupportedModulus(HassError):
    pass


class BudgetExceeded(HassError):
    """An exhaustive enumeration would exceed its configured budget."""


class DimensionMismatch(InvalidArgument):
    pass


class InvalidStructure(InvalidArgument):
    pass


class NotAuthorized(HassError):
    """No run of the bundle certifies the coalition."""


class InconsistentBundle(HassError):
    pass
