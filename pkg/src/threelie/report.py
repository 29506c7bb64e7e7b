"""Violation records shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


class ThreeLieError(Exception):
    """Base class for library errors."""


class PreconditionError(ThreeLieError, ValueError):
    """An operation's hypothesis does not hold; ``violations`` says where."""

    def __init__(self, message: str, violations: Optional[list] = None):
        super().__init__(message)
        self.violations = list(violations or [])


class StructuralError(ThreeLieError, ValueError):
    """Input data contradicts the invariants of its own type."""


@dataclass(frozen=True)
class Violation:
    """A basis tuple where an identity fails, with the nonzero defect.

    ``where`` holds 0-based basis indices; ``defect`` is a vector (or a
    flattened matrix) of Fractions.
    """

    check: str
    where: tuple
    defect: tuple

    def as_dict(self) -> dict:
        from .exactla import format_rational

        return {
            "check": self.check,
            "where": [list(w) if isinstance(w, tuple) else w for w in self.where],
            "defect": [format_rational(x) for x in self.defect],
        }


def collect(found: Iterable[Violation], cap: Optional[int] = None) -> list:
    """Materialize violations, stopping after ``cap`` of them when given."""
    out = []
    for v in found:
        out.append(v)
        if cap is not None and len(out) >= cap:
            break
    return out


def nonzero(check: str, where: tuple, defect: tuple) -> Iterator[Violation]:
    if any(defect):
        yield Violation(check, where, tuple(defect))
