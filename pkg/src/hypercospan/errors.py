"""Exception hierarchy shared by every module."""


class HypercospanError(Exception):
    """Base class for all errors raised by this package."""


class CodomainMismatch(HypercospanError):
    pass


class UnknownLabel(HypercospanError):
    pass


class IllTyped(HypercospanError):
    pass


class BoundaryMismatch(HypercospanError):
    pass


class DimensionMismatch(HypercospanError):
    pass


class UnknownBox(HypercospanError):
    pass


class UnboundBox(HypercospanError):
    pass


class TermSyntaxError(HypercospanError, SyntaxError):
    """Raised by the term parser; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class TypeMismatch(HypercospanError):
    def __init__(self, subterm, expected, found):
        super().__init__(
            f"type mismatch in {subterm}: expected {list(expected)}, found {list(found)}"
        )
        self.subterm = subterm
        self.expected = expected
        self.found = found
