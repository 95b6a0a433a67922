"""Exception hierarchy shared by every grouptool module."""


class GroupToolError(Exception):
    """Base class for all computation failures (CLI exit code 1)."""


class UnknownGenerator(GroupToolError, KeyError):
    def __init__(self, symbol, alphabet=None):
        self.symbol = symbol
        self.alphabet = tuple(alphabet) if alphabet is not None else None
        msg = f"unknown generator {symbol!r}"
        if self.alphabet is not None:
            msg += f" (alphabet: {' '.join(self.alphabet)})"
        super().__init__(msg)

    def __str__(self):
        return self.args[0]


class AlphabetMismatch(GroupToolError, ValueError):
    pass


class OracleUnavailable(GroupToolError):
    pass


class DehnPreconditionFailed(GroupToolError):
    pass


class RadiusTooSmall(GroupToolError, ValueError):
    pass


class InvalidExtension(GroupToolError):
    pass


class HypothesisFailed(GroupToolError):
    pass


class NotAFibrationCandidate(GroupToolError):
    pass


class RuleInapplicable(GroupToolError):
    pass


class NotConclusive(GroupToolError):
    pass


class BallTooLarge(GroupToolError):
    pass


class ParseError(GroupToolError, ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)
