"""Binary codes and exhaustive frameproof / secure-frameproof verification.

Rows (codewords) and positions are both 1-based, matching the ground set
``[t]``: row ``i`` of a code is the user that element ``i`` stands for in
the Kneser-graph picture, and position ``j`` is a column.

Feasible sets ``F(C)`` are never built.  Two coalitions can produce a common
word exactly when no position is undetectable for both with differing
values, so every check reduces to bit operations on the rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True, eq=False)
class BinaryCode:
    """A (v, t)-code stored as a read-only t x v 0/1 matrix."""

    rows: np.ndarray

    def __post_init__(self):
        arr = np.array(self.rows, dtype=np.uint8, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ParameterError("a code needs t >= 1 rows of length v >= 1")
        if np.any(arr > 1):
            raise ParameterError("code entries must be 0 or 1")
        arr.setflags(write=False)
        object.__setattr__(self, "rows", arr)

    @classmethod
    def from_strings(cls, words):
        words = list(words)
        if not words or len({len(w) for w in words}) != 1:
            raise ParameterError("codewords must be nonempty and of equal length")
        return cls(np.array([[int(ch) for ch in w] for w in words], dtype=np.uint8))

    @property
    def t(self):
        return self.rows.shape[0]

    @property
    def v(self):
        return self.rows.shape[1]

    @cached_property
    def masks(self):
        """Row ``i`` (1-based) as an int, position ``j`` in bit ``j - 1``."""
        return tuple(sum(int(b) << j for j, b in enumerate(row)) for row in self.rows)

    @property
    def full(self):
        return (1 << self.v) - 1

    @cached_property
    def duplicate_rows(self):
        """Pairs of 1-based row indices holding identical words."""
        seen = {}
        dups = []
        for i, m in enumerate(self.masks, start=1):
            if m in seen:
                dups.append((seen[m], i))
            else:
                seen[m] = i
        return tuple(dups)

    def words(self):
        return ["".join(str(int(b)) for b in row) for row in self.rows]

    def __eq__(self, other):
        return isinstance(other, BinaryCode) and np.array_equal(self.rows, other.rows)

    def __hash__(self):
        return hash(self.masks)

    def __repr__(self):
        return f"BinaryCode(t={self.t}, v={self.v}, rows={self.words()})"


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive check. ``witness`` is None on a pass."""

    passed: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.passed


def _members(code, c):
    members = tuple(sorted(set(int(i) for i in c)))
    if not members:
        raise ParameterError("coalitions must be nonempty")
    if members[0] < 1 or members[-1] > code.t:
        raise ParameterError(f"coalition {members} has rows outside 1..{code.t}")
    return members


def _agreement(code, members):
    """(undetectable-position mask, common values on those positions)."""
    masks = code.masks
    both = code.full
    anyone = 0
    for i in members:
        both &= masks[i - 1]
        anyone |= masks[i - 1]
    undetectable = both | (~anyone & code.full)
    return undetectable, both


def _positions(mask):
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def undetectable_positions(code, c):
    """U(C): positions (1-based) where every row of coalition ``c`` agrees."""
    u, _ = _agreement(code, _members(code, c))
    return frozenset(_positions(u))


def in_feasible_set(code, c, word):
    """Whether ``word`` (sequence of bits) agrees with ``c`` on every undetectable position."""
    if len(word) != code.v:
        raise ParameterError("word length differs from code length")
    u, vals = _agreement(code, _members(code, c))
    x = sum(int(b) << j for j, b in enumerate(word))
    return (x ^ vals) & u == 0


def feasible_sets_disjoint(code, c1, c2):
    """``(True, position)`` if F(c1) and F(c2) are disjoint, else ``(False, None)``.

    The position is the smallest one undetectable for both coalitions with
    different common values.
    """
    u1, v1 = _agreement(code, _members(code, c1))
    u2, v2 = _agreement(code, _members(code, c2))
    sep = u1 & u2 & (v1 ^ v2)
    if not sep:
        return False, None
    return True, (sep & -sep).bit_length()


def _coalitions(t, sizes):
    out = []
    for k in sizes:
        out.extend(combinations(range(1, t + 1), k))
    out.sort()
    return out


def is_sfpc(code, r, fast=False):
    """Check the r-secure-frameproof property exhaustively.

    Every pair of disjoint nonempty coalitions of size at most ``r`` must have
    disjoint feasible sets.  On failure the witness is the least offending
    pair ``(C1, C2)`` with ``C1 < C2`` as sorted tuples.

    ``fast`` inspects only coalitions of size exactly ``r``; when ``t >= 2r``
    smaller pairs extend to disjoint size-r pairs with larger feasible sets,
    so the verdict is the same (the witness may differ).
    """
    if r < 1:
        raise ParameterError("r must be positive")
    if code.t < 2:
        raise ParameterError("an SFPC check needs t >= 2")
    if r >= code.t:
        raise ParameterError(f"r={r} must be below t={code.t}")
    if fast and code.t < 2 * r:
        raise ParameterError("the size-r-only mode needs t >= 2r")
    sizes = [r] if fast else range(1, r + 1)
    coals = _coalitions(code.t, sizes)
    info = [(c, sum(1 << (i - 1) for i in c), *_agreement(code, c)) for c in coals]
    for a, (c1, m1, u1, v1) in enumerate(info):
        for c2, m2, u2, v2 in info[a + 1:]:
            if m1 & m2:
                continue
            if not (u1 & u2 & (v1 ^ v2)):
                return Verdict(False, (c1, c2))
    return Verdict(True)


def is_frameproof(code, r):
    """Check the r-frameproof property: F(C) meets the code only in C.

    Witness on failure: ``(C, x)`` with ``x`` the framed row outside ``C``.
    """
    if r < 1:
        raise ParameterError("r must be positive")
    masks = code.masks
    for c in _coalitions(code.t, range(1, min(r, code.t) + 1)):
        u, vals = _agreement(code, c)
        inside = set(c)
        for x in range(1, code.t + 1):
            if x not in inside and (masks[x - 1] ^ vals) & u == 0:
                return Verdict(False, (c, x))
    return Verdict(True)


def majority_word(code, d):
    """Position-wise majority of the rows in the odd-size coalition ``d``."""
    members = _members(code, d)
    if len(members) % 2 == 0:
        raise ParameterError("majority word needs an odd-size coalition")
    counts = code.rows[[i - 1 for i in members]].sum(axis=0)
    return tuple(int(c) for c in (2 * counts > len(members)))
