"""Exception types raised by nvfix."""


class NvfixError(Exception):
    """Base class for all nvfix errors."""


class InvalidMap(NvfixError, ValueError):
    """Structurally malformed map data (bad breakpoints, bad permutation)."""


class NotSplit(NvfixError):
    """The n-valued map has no global splitting into single-valued maps."""


class NotAdmissible(NvfixError):
    """A fixed point lies on the boundary of the region."""


class MonodromyMismatch(NvfixError):
    """Source and target of a homotopy disagree in strand gluing data."""


class DistinctnessBroken(NvfixError):
    """Two strands collide somewhere along a straight-line homotopy."""

    def __init__(self, message, lam_interval=None, pair=None):
        super().__init__(message)
        self.lam_interval = lam_interval
        self.pair = pair


class NoLiftExists(NvfixError):
    """No lift of the map through the given cover."""


class Degenerate(NvfixError):
    """The map has non-isolated fixed points where isolated ones are required."""


class ParseError(NvfixError, ValueError):
    """Malformed map file or region string."""
