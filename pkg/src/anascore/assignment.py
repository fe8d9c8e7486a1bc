"""Maximum-score one-to-one assignment (Kuhn-Munkres).

Wraps ``scipy.optimize.linear_sum_assignment`` and adds a deterministic
tie-break: among assignments with equal total score, the one that is
lexicographically smallest in (row, col) pairs is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

_TIE_TOL = 1e-12


@dataclass(frozen=True)
class SetAlignment:
    """A partial one-to-one mapping between key and response set owners.

    Keys and values are entity ids of the entities owning the aligned
    accommodated sets.
    """

    pairs: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        values = list(self.pairs.values())
        if len(set(values)) != len(values):
            raise ValueError("alignment is not one-to-one")

    @property
    def inverse(self) -> dict[str, str]:
        return {v: k for k, v in self.pairs.items()}

    def get(self, key_id: str) -> str | None:
        return self.pairs.get(key_id)


def max_assignment(matrix: np.ndarray) -> list[tuple[int, int]]:
    """Maximum-total assignment with lexicographic tie-breaking.

    Returns all assigned (row, col) pairs, including zero-score ones;
    callers filter as needed. Rectangular matrices are fine.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return []
    if not np.all(np.isfinite(matrix)):
        raise ValueError("assignment scores must be finite")
    best = _optimal_total(matrix)
    # Fix pairs row by row, always trying the lowest column whose choice
    # still permits the optimal total on the remaining submatrix.
    rows, cols = matrix.shape
    free_cols = list(range(cols))
    result: list[tuple[int, int]] = []
    remaining = best
    for r in range(rows):
        sub = matrix[r + 1:, :]
        chosen = None
        # Leaving this row unassigned is only possible when rows > cols.
        for c in list(free_cols) + [None]:
            if c is None:
                if rows - r <= len(free_cols):
                    continue  # enough columns left; row must be assigned
                rest = _optimal_total(sub[:, free_cols]) if free_cols else 0.0
                if abs(rest - remaining) <= _TIE_TOL:
                    chosen = None
                    break
                continue
            others = [x for x in free_cols if x != c]
            rest = _optimal_total(sub[:, others]) if others and sub.size else 0.0
            if abs(matrix[r, c] + rest - remaining) <= _TIE_TOL:
                chosen = c
                break
        if chosen is not None:
            result.append((r, chosen))
            free_cols.remove(chosen)
            remaining -= matrix[r, chosen]
        # else: row stays unassigned; remaining unchanged
    return result


def _optimal_total(matrix: np.ndarray) -> float:
    if matrix.size == 0:
        return 0.0
    rows, cols = linear_sum_assignment(matrix, maximize=True)
    return float(matrix[rows, cols].sum())


def km_assign(matrix: np.ndarray) -> set[tuple[int, int]]:
    """Optimal one-to-one pairing for a score matrix with values in [0, 1].

    Pairs with score 0 carry no credit and are dropped from the result.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return set()
    if np.any(matrix < 0) or np.any(matrix > 1):
        raise ValueError("scores must lie in [0, 1]")
    return {(r, c) for r, c in max_assignment(matrix) if matrix[r, c] > 0}
