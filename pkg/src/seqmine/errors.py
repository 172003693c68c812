"""Exception types raised by the seqmine package."""


class SeqMineError(Exception):
    """Base class for all seqmine errors."""


class SpmfFormatError(SeqMineError):
    """Input violates the single-item SPMF sequence format."""


class ParseError(SeqMineError):
    """Input token could not be parsed."""


class EmptyDatabaseError(SeqMineError):
    """An operation required a non-empty sequence database."""


class UnknownItemError(SeqMineError):
    """An item name is not present in the database dictionary."""


class ParameterError(SeqMineError):
    """A parameter is outside its documented range."""


class RegexSyntaxError(SeqMineError):
    """A pattern expression is malformed.

    Carries the character position of the offending token.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
