from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any


class MalformedInput(ValueError):
    """Raised when a table, map or document cannot be read as a structure.

    Parameters
    ----------
    msg : str
        What is wrong with the input.
    path : str, optional
        Location of the offending field inside a document, for
        example ``payload[1][2]``.

    """

    def __init__(self, msg: str, path: str | None = None) -> None:
        self.path = path
        if path is not None:
            msg = f"{msg} (at {path})"
        super().__init__(msg)


class AxiomViolation(ValueError):
    def __init__(
        self,
        axiom: str,
        witness: Sequence[int] | None = None,
        structure: str | None = None,
    ) -> None:
        self.axiom = axiom
        self.witness = None if witness is None else tuple(int(w) for w in witness)
        msg = self.violation_msg(axiom, self.witness, structure)
        super().__init__(msg)

    @staticmethod
    def violation_msg(
        axiom: str,
        witness: tuple[int, ...] | None,
        structure: str | None,
    ) -> str:
        where = f" in {structure}" if structure else ""
        msg = f"Axiom '{axiom}' fails{where}"
        if witness is not None:
            msg += f"\n- first witness: {witness}"
        return msg


class UnsupportedStructure(TypeError):
    def __init__(self, operation: str, required: str, found: str) -> None:
        self.operation = operation
        self.required = required
        self.found = found
        msg = (
            f"{operation} needs a structure of level '{required}' or higher; "
            f"got '{found}'"
        )
        super().__init__(msg)


class PreconditionFailed(ValueError):
    def __init__(
        self,
        operation: str,
        condition: str,
        witness: Sequence[int] | None = None,
    ) -> None:
        self.operation = operation
        self.condition = condition
        self.witness = None if witness is None else tuple(int(w) for w in witness)
        msg = f"{operation} requires {condition}"
        if self.witness is not None:
            msg += f"\n- first witness: {self.witness}"
        super().__init__(msg)


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, n: int, budget: int) -> None:
        self.n = n
        self.budget = budget
        msg = (
            f"An exhaustive search over {n}! bijections exceeds the budget "
            f"of {budget}; raise 'braces.equivalence.budget' to allow it"
        )
        super().__init__(msg)


def as_index_list(values: Iterable[Any]) -> list[int]:
    """Sorted plain-int list, the form subsets take when they leave the library."""
    return sorted(int(v) for v in values)
