"""Exception hierarchy shared by every module."""


class WormholeError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(WormholeError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FormatError(WormholeError, ValueError):
    """Binary file has the wrong magic, version or a truncated payload."""


class MismatchError(WormholeError, ValueError):
    """A stored artifact does not belong to the graph it is loaded against."""


class RoutingError(WormholeError):
    pass


class ExhaustedComponent(RoutingError):
    """Raised when one search tree runs out of nodes before meeting the
    other tree or touching the inner ring.

    ``side`` is ``"s"`` or ``"t"``.
    """

    def __init__(self, side, s, t):
        self.side = side
        self.s = s
        self.t = t
        super().__init__(f"search from {side} exhausted its component (s={s}, t={t})")


class Disconnected(RoutingError):
    def __init__(self, s, t):
        self.s = s
        self.t = t
        super().__init__(f"no path between {s} and {t}")
