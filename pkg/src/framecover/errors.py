"""Exception types and search budgets shared across the package."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


class FramecoverError(Exception):
    pass


class ParameterError(FramecoverError, ValueError):
    """Raised when an operation is called outside its parameter range."""


class BudgetExceeded(FramecoverError):
    """An exact search hit its budget. ``best`` holds the best upper bound found, if any."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class FormatError(FramecoverError, ValueError):
    def __init__(self, message, line=None, col=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
            if col is not None:
                where += f"{col}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.col = col
        self.path = path


class InvalidBicliqueError(FramecoverError):
    def __init__(self, index, pair):
        super().__init__(f"biclique {index} joins non-adjacent vertices {pair[0]!r} and {pair[1]!r}")
        self.index = index
        self.pair = pair


@dataclass(frozen=True)
class Budget:
    """Limits for exact searches.

    ``max_vertices`` bounds covering-number and biclique enumeration, ``max_edges``
    bounds ``exact_bc``, ``max_nodes`` bounds the number of branch-and-bound nodes.
    """

    max_vertices: int = 64
    max_edges: int = 40
    max_nodes: int = 5_000_000

    @classmethod
    def from_env(cls, base=None):
        """Apply ``FRAMECOVER_BUDGET`` on top of ``base``.

        Accepted forms: a bare integer (edge budget) or ``key=value`` pairs
        separated by commas, keys ``vertices``, ``edges``, ``nodes``.
        """
        base = base or cls()
        raw = os.environ.get("FRAMECOVER_BUDGET", "").strip()
        if not raw:
            return base
        return base.updated(raw)

    def updated(self, spec):
        spec = str(spec).strip()
        if spec.isdigit():
            return replace(self, max_edges=int(spec))
        keys = {"vertices": "max_vertices", "edges": "max_edges", "nodes": "max_nodes"}
        changes = {}
        for part in spec.split(","):
            key, sep, value = part.partition("=")
            key = key.strip()
            if not sep or key not in keys:
                raise ParameterError(f"bad budget entry {part!r}")
            try:
                changes[keys[key]] = int(float(value))
            except ValueError:
                raise ParameterError(f"bad budget value {value!r}") from None
        return replace(self, **changes)


def default_budget():
    return Budget.from_env()
