"""Order-preserving DP matching of boundary feature sequences.

The dissimilarity between two shapes is the minimum matching cost over all
cyclic shifts of the shorter boundary, evaluated with an edit-style DP whose
pairwise cost is the Euclidean distance between feature columns and whose
gap penalty covers unmatched vertices on either side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import dp_cost
from .errors import DimensionMismatchError
from .features import FeatureMatrix

__all__ = [
    "Matching",
    "column_cost_matrix",
    "default_gap_cost",
    "dp_match",
    "cyclic_dissimilarity",
]


@dataclass(frozen=True)
class Matching:
    """mapping[i] = 1-based index into B for position i of (shifted) A; 0 = gap."""

    mapping: tuple
    cost: float
    shift: int = 0
    swapped: bool = False

    @property
    def matched_pairs(self) -> tuple:
        return tuple((i, j) for i, j in enumerate(self.mapping) if j != 0)


def _columns(f) -> np.ndarray:
    if isinstance(f, FeatureMatrix):
        return f.values
    return np.asarray(f, dtype=np.float64)


def column_cost_matrix(fa, fb) -> np.ndarray:
    """(na, nb) Euclidean distances between feature columns."""
    a = _columns(fa)
    b = _columns(fb)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatchError(
            f"feature row counts differ: {a.shape[0]} vs {b.shape[0]}"
        )
    diff = a.T[:, None, :] - b.T[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def default_gap_cost(fa, fb) -> float:
    """Scale-adaptive gap penalty: 0.3 x median column-pair distance."""
    return 0.3 * float(np.median(column_cost_matrix(fa, fb)))


def dp_match(fa, fb, gap_cost: float | None = None) -> Matching:
    """Minimum-cost order-preserving matching of two linear sequences.

    Among equal-cost solutions prefers more matched pairs, then the
    lexicographically smallest mapping.
    """
    cost = column_cost_matrix(fa, fb)
    if gap_cost is None:
        gap_cost = default_gap_cost(fa, fb)
    na, nb = cost.shape

    # suffix[i][j] = best (cost, -matches) aligning A[i:] with B[j:]
    inf = float("inf")
    suffix = [[(0.0, 0)] * (nb + 1) for _ in range(na + 1)]
    for j in range(nb - 1, -1, -1):
        c, m = suffix[na][j + 1]
        suffix[na][j] = (c + gap_cost, m)
    for i in range(na - 1, -1, -1):
        c, m = suffix[i + 1][nb]
        suffix[i][nb] = (c + gap_cost, m)
        row = suffix[i]
        nxt = suffix[i + 1]
        for j in range(nb - 1, -1, -1):
            best = (inf, 0)
            for c, m in (
                (nxt[j][0] + gap_cost, nxt[j][1]),  # A[i] unmapped
                (nxt[j + 1][0] + cost[i, j], nxt[j + 1][1] - 1),  # match
                (row[j + 1][0] + gap_cost, row[j + 1][1]),  # B[j] unmatched
            ):
                if (c, m) < best:
                    best = (c, m)
            row[j] = best

    # forward walk; preference order keeps the mapping lexicographically small
    mapping = [0] * na
    i = j = 0
    while i < na:
        target = suffix[i][j]
        gap_a = (suffix[i + 1][j][0] + gap_cost, suffix[i + 1][j][1])
        if gap_a == target:
            mapping[i] = 0
            i += 1
            continue
        match = (
            suffix[i + 1][j + 1][0] + cost[i, j],
            suffix[i + 1][j + 1][1] - 1,
        ) if j < nb else (inf, 0)
        if match == target:
            mapping[i] = j + 1
            i += 1
            j += 1
            continue
        j += 1
    return Matching(tuple(mapping), suffix[0][0][0], 0, False)


def cyclic_dissimilarity(fa, fb, gap_cost: float | None = None) -> tuple:
    """(dissimilarity, best Matching) over all cyclic shifts of the shorter side.

    The operand order is canonicalized before the scan, so the result is
    exactly symmetric in its arguments.
    """
    a = np.ascontiguousarray(_columns(fa))
    b = np.ascontiguousarray(_columns(fb))
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatchError(
            f"feature row counts differ: {a.shape[0]} vs {b.shape[0]}"
        )
    swapped = (a.shape[1], a.tobytes()) > (b.shape[1], b.tobytes())
    if swapped:
        a, b = b, a
    cost = column_cost_matrix(a, b)
    if gap_cost is None:
        gap_cost = 0.3 * float(np.median(cost))

    n_short = a.shape[1]
    shift_costs = np.array([dp_cost(cost, gap_cost, s) for s in range(n_short)])
    best_shift = int(np.argmin(shift_costs))
    best_cost = float(shift_costs[best_shift])

    a_shifted = np.roll(a, -best_shift, axis=1)
    matching = dp_match(a_shifted, b, gap_cost)
    return best_cost, Matching(matching.mapping, matching.cost, best_shift, swapped)
