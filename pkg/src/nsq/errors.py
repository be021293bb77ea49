"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class IndexRangeError(EngineError):
    """A tensor or coordinate index fell outside 1..n."""


class DimensionMismatch(EngineError):
    """Operands were built over different dimensions."""


class NotInGeneratorAlgebra(EngineError):
    """The observable is not expressible in the required generator set."""


class GaugeConditionError(EngineError):
    """A gauge term violates the symmetrized-vanishing condition."""


class RankMismatch(EngineError):
    """Tensor ranks of the operands are incompatible."""


class ParseError(EngineError):
    """Expression syntax error; carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
