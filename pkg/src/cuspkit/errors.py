"""Exception hierarchy shared by every cuspkit module."""


class CuspkitError(Exception):
    """Base class for all library errors."""


class DisconnectedPair(CuspkitError):
    """No edge path joins the requested vertices."""


class EmptyTarget(CuspkitError, ValueError):
    pass


class GraphFormatError(CuspkitError, ValueError):
    """A serialized graph could not be parsed."""


class UnsupportedFamily(CuspkitError, ValueError):
    pass


class EmptyBase(CuspkitError, ValueError):
    pass


class NotLevelZero(CuspkitError, ValueError):
    pass


class NotSublinearWithinRange(CuspkitError):
    """The contraction table never satisfies the kappa threshold condition."""


class WindowTooLarge(CuspkitError, ValueError):
    pass


class NoPathsGenerated(CuspkitError):
    pass


class NotATriangle(CuspkitError, ValueError):
    pass


class RadiusExceedsPath(CuspkitError, ValueError):
    pass


class BasepointInsideHoroball(CuspkitError, ValueError):
    pass


class ConfigError(CuspkitError, ValueError):
    """Invalid experiment configuration."""
