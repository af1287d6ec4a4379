# -*- coding: utf-8 -*-

"""
Error hierarchy for the toolkit.

Every error carries a stable machine-readable `code` and an `exit_status`
used by the command line to pick a process exit code.
"""

# **** IMPORTS ****
import logging
from typing import Any, Dict

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** CLASSES ****
class TreewalkError(Exception):
    """
    Base class of every error raised by the toolkit.

    Attributes:
        code (str): Stable identifier written to error records.
        exit_status (int): Exit code used by the command line.
        details (dict): Extra machine-readable context.
    """
    code: str = "treewalk-error"
    exit_status: int = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_record(self) -> Dict[str, Any]:
        """Machine-readable error record."""
        record = {"error": self.code, "message": self.message}
        if self.details:
            record["details"] = {key: _jsonable(value) for key, value in self.details.items()}
        return record


# ---- input and configuration errors (exit 2) ----
class InputError(TreewalkError):
    code = "input-error"
    exit_status = 2

class InvalidVertexError(InputError):
    code = "invalid-vertex"

class IncompatibleElementsError(InputError):
    code = "incompatible-elements"

class ValidationError(InputError):
    code = "validation-error"

class ConfigError(InputError):
    code = "config-error"

class UnknownFixtureError(InputError):
    code = "unknown-fixture"

class PreconditionError(InputError):
    code = "precondition-violated"

class AutomatonSpecError(InputError):
    code = "automaton-spec-error"

class SpecSyntaxError(AutomatonSpecError):
    code = "spec-syntax-error"

class NonBijectivePermutationError(AutomatonSpecError):
    code = "non-bijective-permutation"

class DanglingTransitionError(AutomatonSpecError):
    code = "dangling-transition"

class AlphabetMismatchError(AutomatonSpecError):
    code = "alphabet-mismatch"

class DirectedSpecError(InputError):
    code = "directed-spec-error"


# ---- budget and resource errors (exit 3) ----
class BudgetError(TreewalkError):
    code = "budget-error"
    exit_status = 3

class UndecidedError(BudgetError):
    code = "undecided"

class ResourceError(BudgetError):
    code = "resource-exhausted"

class NotFiniteWithinBudgetError(BudgetError):
    code = "not-finite-within-budget"


# ---- mathematical failures (exit 4) ----
class InvariantViolationError(TreewalkError):
    code = "invariant-violation"
    exit_status = 4

class InconsistencyError(InvariantViolationError):
    code = "inconsistency"

class ReducibleChainError(InvariantViolationError):
    code = "reducible-chain"


# ---- other ----
class UnsupportedError(TreewalkError):
    code = "unsupported"

class TracePreconditionError(TreewalkError):
    code = "trace-precondition"
    exit_status = 2


# **** FUNCTIONS ****
def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_jsonable(item) for item in value]
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    return str(value)


# ****
if __name__ == "__main__":
    raise Exception("This file is not meant to run on its own.")
