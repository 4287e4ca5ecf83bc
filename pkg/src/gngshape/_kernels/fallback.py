"""Pure-numpy implementations of the hot kernels.

These mirror the Cython versions in `_core.pyx` operation for operation so
that both backends produce bit-identical floating-point results.
"""

from __future__ import annotations

import numpy as np

NAME = "fallback"


def gng_block(pos, err, alive, age, signals, eps_b, eps_n, age_max, decay):
    """Present a block of signals to the GNG state (mutates in place).

    pos: (cap, 2) float64 node positions; err: (cap,) float64 errors;
    alive: (cap,) uint8 slot-occupied flags; age: (cap, cap) int32 edge ages,
    -1 meaning no edge. Runs the adaptation steps (winner search, aging,
    error update, moves, edge refresh, pruning, decay) for each signal.
    """
    alive_mask = alive.view(bool)
    for x0, x1 in signals:
        d2 = (pos[:, 0] - x0) ** 2 + (pos[:, 1] - x1) ** 2
        d2[~alive_mask] = np.inf
        s1 = int(np.argmin(d2))
        d1 = d2[s1]
        d2[s1] = np.inf
        s2 = int(np.argmin(d2))

        nb = age[s1] >= 0
        age[s1, nb] += 1
        age[nb, s1] += 1

        err[s1] += d1

        pos[s1, 0] += eps_b * (x0 - pos[s1, 0])
        pos[s1, 1] += eps_b * (x1 - pos[s1, 1])
        pos[nb, 0] += eps_n * (x0 - pos[nb, 0])
        pos[nb, 1] += eps_n * (x1 - pos[nb, 1])

        age[s1, s2] = 0
        age[s2, s1] = 0

        stale = np.nonzero(age[s1] > age_max)[0]
        for j in stale:
            age[s1, j] = -1
            age[j, s1] = -1
            if not (age[j] >= 0).any():
                alive_mask[j] = False
                err[j] = 0.0

        err[alive_mask] *= decay


def dp_cost(cost, gap, shift=0):
    """Minimum cost of an order-preserving matching with symmetric gaps.

    `cost` is the (na, nb) pairwise feature-distance matrix; rows are
    consumed starting at `shift`, wrapping cyclically. The left-to-right
    chain of the edit recurrence is folded into a prefix minimum so a row
    is one vectorized pass.
    """
    na, nb = cost.shape
    jg = gap * np.arange(nb + 1)
    prev = jg.copy()
    cur = np.empty(nb + 1)
    buf = np.empty(nb + 1)
    for i in range(1, na + 1):
        row = cost[(i - 1 + shift) % na]
        cand = np.minimum(prev[:-1] + row, prev[1:] + gap)
        buf[0] = i * gap
        np.subtract(cand, jg[1:], out=buf[1:])
        np.minimum.accumulate(buf, out=buf)
        cur[0] = i * gap
        np.add(buf[1:], jg[1:], out=cur[1:])
        prev, cur = cur, prev
    return float(prev[nb])
