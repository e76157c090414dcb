"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class CarlitzError(Exception):
    """Base class for all library errors."""


class DomainError(CarlitzError, ValueError):
    """An argument violates the domain of the operation (e.g. |z| >= q^(-1/(q-1)))."""


class RamificationError(DomainError):
    """A q-th root would need a ramification denominator above the configured cap."""


class PrecisionExhausted(CarlitzError, ArithmeticError):
    """The requested precision cannot be certified from the available data."""


class ConsistencyError(CarlitzError, AssertionError):
    """An exact identity that must hold by construction failed; signals an arithmetic bug."""


class BudgetExceeded(CarlitzError):
    """A brute-force oracle was asked for more work than its configured budget."""
