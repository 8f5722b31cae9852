"""Exception types raised by the engine."""


class SdpAbsError(Exception):
    pass


class ParseError(SdpAbsError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)


class UnsupportedAtom(SdpAbsError):
    pass


class CapExceeded(SdpAbsError):
    """Base class for configurable resource caps."""


class CnfBlowup(CapExceeded):
    pass


class NodeLimit(CapExceeded):
    pass


class CubeLimit(CapExceeded):
    pass


class UnknownLeaf(SdpAbsError):
    pass
