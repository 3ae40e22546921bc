"""Exception types and the boolean-with-witness result used by every checker."""
from dataclasses import dataclass, field


class JJError(Exception):
    pass


class FieldMismatchError(JJError, TypeError):
    pass


class SingularMatrixError(JJError, ZeroDivisionError):
    pass


class DimensionError(JJError, ValueError):
    pass


class PreconditionError(JJError, ValueError):
    """An input fails a structural requirement; `check` carries the witness."""

    def __init__(self, message, check=None):
        super().__init__(message if check is None else f"{message}: {check}")
        self.check = check


class NotJacobiJordan(PreconditionError):
    pass


class NotPreJacobiJordan(PreconditionError):
    pass


class InvalidRepresentation(PreconditionError):
    pass


class NotRelativeRB(PreconditionError):
    pass


class TheoremViolation(JJError, AssertionError):
    """A construction that is supposed to succeed produced an invalid object."""

    def __init__(self, message, check=None):
        super().__init__(message if check is None else f"{message}: {check}")
        self.check = check


class ConstraintViolation(JJError, ValueError):
    pass


class DegreeOverflow(JJError, ValueError):
    pass


class SingularParameter(JJError, ZeroDivisionError):
    """The conjugating map of a trivial deformation is singular at this t."""

    def __init__(self, t):
        super().__init__(f"Id + t*(...) is singular at t = {t}")
        self.t = t


class BudgetExceeded(JJError, RuntimeError):
    def __init__(self, count, budget):
        super().__init__(f"{count} candidates exceed the budget of {budget}")
        self.count = count
        self.budget = budget


class ParseError(JJError, ValueError):
    def __init__(self, message, line=0, col=0):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Check:
    """Outcome of a predicate: truthy iff it holds; otherwise the first failing tuple.

    `witness` holds 0-based basis indices in lexicographic order, `value` the
    nonzero defect there and `condition` names the identity that failed.
    """

    ok: bool
    condition: str = ""
    witness: tuple = ()
    value: object = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def describe(self, labels=None):
        if self.ok:
            return "holds" if not self.condition else f"holds ({self.condition})"
        w = self.witness
        if labels is not None and w and all(isinstance(i, int) for i in w):
            w = tuple(labels[i] if i < len(labels) else i for i in w)
        return f"fails {self.condition} at {w}: {self.value}"

    def to_json(self, labels=None):
        return {
            "ok": self.ok,
            "condition": self.condition,
            "witness": [int(i) if isinstance(i, int) else str(i) for i in self.witness],
            "value": None if self.value is None else str(self.value),
            "description": self.describe(labels),
        }

    def __repr__(self):
        return f"Check({self.describe()})"


PASS = Check(True)


def all_of(*checks):
    """First failing check, or a pass."""
    for c in checks:
        if not c:
            return c
    return PASS
