class CylabError(Exception):
    """Base class for every error raised by cylab."""


class InputError(CylabError, ValueError):
    """The caller passed data outside an operation's domain."""


class ShapeMismatch(InputError): ...


class InvalidModuliPoint(InputError): ...


class NotGeneralPosition(InputError): ...


class InvalidTuple(InputError): ...


class InvalidN(InputError):
    def __init__(self, n: object):
        super().__init__("n must be odd ≥ 3 (got {})".format(n))
        self.n = n


class InvalidCenter(InputError): ...


class DeadStratum(InputError): ...


class AlreadyResolved(InputError): ...


class SingularMatrix(CylabError, ArithmeticError): ...


class Indeterminate(CylabError):
    """
    The label semantics cannot decide whether a Higgs chain vanishes.

    Attributes:
        block: the first `nonzero_unknown` block map met on an uncut chain.
    """

    def __init__(self, block: object):
        super().__init__("chain passes through an undetermined block {}".format(block))
        self.block = block


class InvariantBreach(CylabError):
    """An internal contract failed. This always means a bug, never bad input."""


class NonDecreasingMeasure(InvariantBreach): ...


class StepLimitExceeded(InvariantBreach): ...


class OracleMismatch(InvariantBreach):
    def __init__(self, message: str, culprit: object = None):
        super().__init__(message if culprit is None else f"{message}: {culprit}")
        self.culprit = culprit
