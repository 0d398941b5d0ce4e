"""Exception hierarchy shared by the parser, the interpolation methods and the CLI."""


class FriError(Exception):
    """Base class for every error raised by sparsefri."""


class DomainError(FriError, ValueError):
    """An argument lies outside the domain of an operation."""


class Diagnostic:
    """One parser finding, bound to a 1-based line number (0 when not line-specific)."""

    __slots__ = ("line", "message")

    def __init__(self, line, message):
        self.line = line
        self.message = message

    def __str__(self):
        if self.line:
            return f"line {self.line}: {self.message}"
        return self.message

    def __repr__(self):
        return f"Diagnostic({self.line!r}, {self.message!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Diagnostic)
            and self.line == other.line
            and self.message == other.message
        )


class FisParseError(FriError, ValueError):
    """Raised when a FIS or OBS text is malformed; carries every diagnostic found."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class DimensionMismatchError(FriError, ValueError):
    """The observation and the rule base disagree on the number of inputs."""


class MethodError(FriError):
    """An interpolation method could not produce a conclusion."""


class NotSurroundedError(MethodError):
    """No pair of rules flanks the observation (extrapolation is unsupported)."""


class DegenerateRuleError(MethodError):
    """The flanking rules coincide, so an interpolation ratio has a zero denominator."""


class UndefinedRatioError(MethodError):
    """A width, fuzziness or scale ratio has a zero denominator and a nonzero numerator."""
