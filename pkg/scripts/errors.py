# ---------------------------------------------------------------
# errors.py
#
# Purpose:
#   Exception hierarchy shared by the engines and the CLI, and the
#   mapping from exceptions to process exit codes.
#
# Notes:
#   - Infeasible instances and verification mismatches are values,
#     not exceptions; the CLI maps them to exit codes 3 and 1.
# ---------------------------------------------------------------

from config.settings import EXIT_BUDGET, EXIT_MISMATCH, EXIT_PARAMETER


class CrossFamError(Exception):
    """Base class for every error raised by the engine."""


class ParameterError(CrossFamError, ValueError):
    """Parameters violate a precondition of the requested operation."""


class UnsupportedLError(ParameterError):
    """The intersection spec falls in a case with no proven bound."""


class FamilyFormatError(ParameterError):
    """A family file could not be parsed or failed validation."""


class BudgetExceededError(CrossFamError, RuntimeError):
    """A search or orbit enumeration ran out of budget."""


class InvariantError(CrossFamError, RuntimeError):
    """An internal consistency check failed, e.g. a graph degree against its closed form."""


def exit_code_for(exc):
    if isinstance(exc, BudgetExceededError):
        return EXIT_BUDGET
    if isinstance(exc, InvariantError):
        return EXIT_MISMATCH
    return EXIT_PARAMETER
