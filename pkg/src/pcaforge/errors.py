"""Exception hierarchy.

Every error raised by this package derives from :class:`PcaForgeError`, so
callers can catch one type at an API boundary.  Operating-system failures
during file I/O are *not* wrapped; they propagate as the builtin ``OSError``.
"""


class PcaForgeError(Exception):
    """Base class for all package errors."""


# -- parameter validation -----------------------------------------------------

class StrengthTooSmall(PcaForgeError):
    """t < 2, or t > k."""


class AlphabetTooSmall(PcaForgeError):
    """v < 2."""


class MOutOfRange(PcaForgeError):
    """m outside [1, v^t]."""


class Overflow(PcaForgeError):
    """v^t does not fit in a 64-bit integer."""


class EpsilonOutOfRange(PcaForgeError):
    """epsilon outside [0, 1]."""


# -- tuple ranking / projection ----------------------------------------------

class SymbolOutOfRange(PcaForgeError):
    """A symbol is negative or >= v."""


class RankOutOfRange(PcaForgeError):
    """A tuple rank is outside [0, v^t)."""


class ColumnOutOfRange(PcaForgeError):
    """A projection index is outside [0, k)."""


class UnsortedColumnSet(PcaForgeError):
    """Projection columns are not strictly increasing."""


# -- bound evaluation ----------------------------------------------------------

class ROutOfRange(PcaForgeError):
    """log-binomial called with r < 0 or r > n."""


class KTooSmallForLLL(PcaForgeError):
    """The local-lemma bound and its builder need k >= 2t."""


class EpsilonZero(PcaForgeError):
    """An almost-coverage operation needs epsilon > 0."""


class SOutOfRange(PcaForgeError):
    """Orbit-deficiency parameter s outside [1, v^(t-1))."""


class MConditionViolated(PcaForgeError):
    """m exceeds the admissible range for the concatenated construction."""


class RNonPositive(PcaForgeError):
    """ln(v / epsilon^(1/(t-1))) <= 0 in the concatenated construction."""


class DomainError(PcaForgeError):
    """Argument outside the mathematical domain of an informational formula."""


class EmptyRange(PcaForgeError):
    """A sweep was requested over an empty axis range."""


# -- finite fields / group actions --------------------------------------------

class NotPrimePower(PcaForgeError):
    """v is not a prime power."""


class OrderTooLarge(PcaForgeError):
    """Field order above the supported maximum (64)."""


# -- enumeration / construction -------------------------------------------------

class CapacityExceeded(PcaForgeError):
    """An exhaustive enumeration would be too large to run."""


class IterationCap(PcaForgeError):
    """A randomized builder hit its resample/restart cap without success."""


class MNotFull(PcaForgeError):
    """Derandomized construction supports only m = v^t."""


# -- file I/O -------------------------------------------------------------------

class ParseError(PcaForgeError):
    """Malformed array file; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DimensionMismatch(PcaForgeError):
    """Declared dimensions disagree with the file body."""
