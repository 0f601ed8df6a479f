"""Budgets and outcomes shared by every exhaustive search in the package.

Node budgets are the reproducible cap: two runs with the same budget explore
the same tree.  Wall-clock budgets exist as a safety valve but default to
infinity, because an outcome that depends on machine speed is not a result
you can diff.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from typing import Generic, Optional, TypeVar

T = TypeVar("T")

FOUND = "found"
EXHAUSTED_NONE = "exhausted_none"
INCONCLUSIVE = "inconclusive"

_ENV_NODES = "QTURAN_BUDGET_NODES"
DEFAULT_MAX_NODES = 100_000_000


def default_max_nodes() -> int:
    raw = os.environ.get(_ENV_NODES)
    if raw is not None and raw.strip():
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValueError(f"{_ENV_NODES} must be an integer, got {raw!r}") from exc
        if value <= 0:
            raise ValueError(f"{_ENV_NODES} must be positive, got {value}")
        return value
    return DEFAULT_MAX_NODES


class BudgetExceeded(Exception):
    """Raised internally when a search runs out of nodes or time."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exceeded after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = field(default_factory=default_max_nodes)
    max_seconds: float = math.inf

    def __post_init__(self):
        if self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        if not self.max_seconds > 0:
            raise ValueError("max_seconds must be positive")


@dataclass(frozen=True)
class SearchOutcome(Generic[T]):
    """Result of one exhaustive search.

    status is "found" (witness present), "exhausted_none" (the full search
    space was covered and holds no witness), or "inconclusive" (budget ran
    out first).
    """

    status: str
    witness: Optional[T]
    nodes_explored: int

    def __post_init__(self):
        if self.status not in (FOUND, EXHAUSTED_NONE, INCONCLUSIVE):
            raise ValueError(f"unknown status {self.status!r}")
        if (self.witness is not None) != (self.status == FOUND):
            raise ValueError("witness must be present exactly when status is found")

    @property
    def found(self) -> bool:
        return self.status == FOUND


class BudgetMeter:
    """Spreads one budget across the sub-searches of a composite operation."""

    def __init__(self, budget: Optional[SearchBudget] = None):
        self.budget = budget if budget is not None else SearchBudget()
        self.nodes = 0
        self._start = time.monotonic()

    @property
    def remaining_nodes(self) -> int:
        return max(self.budget.max_nodes - self.nodes, 0)

    @property
    def remaining_seconds(self) -> float:
        if self.budget.max_seconds == math.inf:
            return math.inf
        return self.budget.max_seconds - (time.monotonic() - self._start)

    def spend(self, nodes: int) -> None:
        self.nodes += nodes

    def exhausted(self) -> bool:
        if self.nodes >= self.budget.max_nodes:
            return True
        return self.remaining_seconds <= 0
