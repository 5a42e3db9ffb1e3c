"""Exception types raised across the package."""


class FSCharError(Exception):
    """Base class for every error raised by fschar."""


class QueryBeyondCutoff(FSCharError):
    """A coefficient was requested above the degree to which a series is known."""


class DimensionMismatch(FSCharError, ValueError):
    pass


class UnsupportedWeight(FSCharError, ValueError):
    """The weight is outside the shapes (k0, k1, 0) / (0, k1, k2) handled by the formulas."""


class ChargeOutOfRange(FSCharError, ValueError):
    pass


class CacheMiss(FSCharError, KeyError):
    pass


class CacheCorrupt(FSCharError):
    """A cache file failed digest validation or could not be parsed."""
