"""Exception types raised by the engine."""


class HallforgeError(Exception):
    pass


class CapExceeded(HallforgeError):
    """A dimension vector or enumeration budget exceeds the configured cap."""


class InternalInconsistency(HallforgeError):
    """An invariant that must hold by construction was violated."""


class NotASource(HallforgeError):
    pass


class NotASink(HallforgeError):
    pass


class MultipleEdges(HallforgeError):
    pass


class MixedShift(HallforgeError):
    """A reflected indecomposable was not concentrated in a single shift."""


class UngradedClass(HallforgeError):
    pass


class ConfigError(HallforgeError):
    pass


class ParseError(HallforgeError):
    pass
