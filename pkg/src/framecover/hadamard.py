"""Hadamard matrices and the two cover constructions built from them.

Vertex labels: in K_{8d} the vertices u_1..u_{4d} are ``1..4d`` and
v_1..v_{4d} are ``4d+1..8d``.  In K^-_{8d-2,8d-2} the left side is
``(0, k)`` and the right side ``(1, k)``, with u_i at ``k = i`` and v_i at
``k = 4d - 1 + i``; ``(0, k)`` and ``(1, k)`` are the removed matching.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .covers import Biclique, BicliqueCover
from .errors import ParameterError


@dataclass(frozen=True, eq=False)
class HadamardMatrix:
    """A square +1/-1 matrix; orthogonality is checked by :func:`verify_hadamard`, not here."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.int64, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ParameterError("a Hadamard matrix must be square and nonempty")
        if not np.all(np.abs(a) == 1):
            raise ParameterError("entries must be +1 or -1")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def order(self):
        return self.entries.shape[0]

    def __eq__(self, other):
        return isinstance(other, HadamardMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def to_text(self):
        return "\n".join("".join("+" if x > 0 else "-" for x in row) for row in self.entries) + "\n"


def sylvester(k):
    """Order 2^k by repeated doubling [[H, H], [H, -H]]."""
    if k < 0:
        raise ParameterError("k must be nonnegative")
    h = np.ones((1, 1), dtype=np.int64)
    for _ in range(k):
        h = np.block([[h, h], [h, -h]])
    return HadamardMatrix(h)


def verify_hadamard(h):
    n = h.order
    return bool(np.array_equal(h.entries @ h.entries.T, n * np.eye(n, dtype=np.int64)))


def is_normalized(h):
    return bool(np.all(h.entries[0] == 1) and np.all(h.entries[:, 0] == 1))


def normalize(h):
    """Flip column signs to make row 1 all +1, then row signs to make column 1 all +1."""
    a = h.entries * h.entries[0][None, :]
    a = a * a[:, 0][:, None]
    return HadamardMatrix(a)


def _quarter(h):
    n = h.order
    if n % 4 or n < 4:
        raise ParameterError(f"need a Hadamard matrix of order 4d, got order {n}")
    if not verify_hadamard(h):
        raise ParameterError("matrix is not Hadamard")
    return n // 4


def k8d_cover(h):
    """4d bicliques covering every edge of K_{8d} at least 2d times (one per column of H)."""
    d = _quarter(h)
    n = 4 * d
    a = h.entries
    bicliques = []
    for j in range(n):
        plus = [i + 1 for i in range(n) if a[i, j] > 0]
        minus = [i + 1 for i in range(n) if a[i, j] < 0]
        x = set(plus) | {n + i for i in minus}
        y = set(minus) | {n + i for i in plus}
        bicliques.append(Biclique(frozenset(x), frozenset(y)))
    return BicliqueCover(("kn", 8 * d), 2 * d, tuple(bicliques))


def kmm_minus_cover(h):
    """4d bicliques d-covering K^-_{8d-2,8d-2}, from a normalized H with its first row removed."""
    d = _quarter(h)
    if not is_normalized(h):
        raise ParameterError("kmm_minus_cover needs a normalized matrix")
    n = 4 * d
    rows = h.entries[1:]
    off = n - 1
    bicliques = []
    for j in range(n):
        x, y = set(), set()
        for i in range(n - 1):
            if rows[i, j] > 0:
                x.add((0, i + 1))
                y.add((1, off + i + 1))
            else:
                x.add((0, off + i + 1))
                y.add((1, i + 1))
        bicliques.append(Biclique(frozenset(x), frozenset(y)))
    return BicliqueCover(("kmm", 2 * n - 2), d, tuple(bicliques))

