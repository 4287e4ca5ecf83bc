"""Outer boundary of the embedded graph as a closed clockwise walk.

Angles work on image-convention vectors (y grows downward); internally y is
negated so the math happens in the usual y-up orientation. "Clockwise" below
always means clockwise on screen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    BoundaryWalkError,
    DegenerateGraphError,
    NotConnectedError,
    ZeroVectorError,
)
from .gng import GngGraph

__all__ = ["BoundaryCycle", "clockwise_angle", "extract_outer_boundary"]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BoundaryCycle:
    """Closed walk of vertex ids; consecutive entries (cyclically) are adjacent."""

    vertex_ids: tuple

    def __len__(self) -> int:
        return len(self.vertex_ids)

    def distinct_ids(self) -> frozenset:
        return frozenset(self.vertex_ids)

    def positions(self, g: GngGraph) -> list:
        return [g.positions[v] for v in self.vertex_ids]


def clockwise_angle(a: tuple, b: tuple) -> float:
    """Clockwise rotation in [0, 2*pi) carrying direction a onto direction b.

    Inputs are image-convention vectors.
    """
    if a[0] == 0 and a[1] == 0:
        raise ZeroVectorError("vector a is zero")
    if b[0] == 0 and b[1] == 0:
        raise ZeroVectorError("vector b is zero")
    ang = math.atan2(-a[1], a[0]) - math.atan2(-b[1], b[0])
    ang = math.fmod(ang, _TWO_PI)
    if ang < 0:
        ang += _TWO_PI
    return 0.0 if ang == _TWO_PI else ang


def _next_on_boundary(g: GngGraph, prev: int, cur: int) -> int:
    px, py = g.positions[prev]
    cx, cy = g.positions[cur]
    back = (px - cx, py - cy)
    neighbors = g.neighbors(cur)
    if len(neighbors) == 1:
        return neighbors[0]
    best = None
    for j in neighbors:
        if j == prev:
            continue
        jx, jy = g.positions[j]
        ang = clockwise_angle(back, (jx - cx, jy - cy))
        if best is None or (ang, j) < best:
            best = (ang, j)
    return best[1]


def extract_outer_boundary(g: GngGraph) -> BoundaryCycle:
    """Walk the exterior face clockwise, starting at the leftmost vertex.

    At each vertex the neighbor with the smallest clockwise angle from the
    reversed incoming edge is taken; the walk stops when the initial ordered
    pair (start, second) reappears. Cut vertices are passed through and may
    repeat in the walk.
    """
    if len(g) < 2:
        raise DegenerateGraphError("boundary needs at least 2 vertices")
    if not g.is_connected():
        raise NotConnectedError("graph must be connected")

    v = min(g.vertex_ids(), key=lambda i: (g.positions[i][0], g.positions[i][1], i))
    vx, vy = g.positions[v]
    # reference: upward vertical half-line, scanned clockwise
    up = (0.0, -1.0)
    u = min(
        g.neighbors(v),
        key=lambda j: (
            clockwise_angle(up, (g.positions[j][0] - vx, g.positions[j][1] - vy)),
            j,
        ),
    )

    walk = [v, u]
    limit = 4 * len(g.edges) + 4
    while True:
        walk.append(_next_on_boundary(g, walk[-2], walk[-1]))
        if len(walk) > 3 and walk[-2] == v and walk[-1] == u:
            return BoundaryCycle(tuple(walk[:-2]))
        if len(walk) > limit:
            raise BoundaryWalkError("outer-boundary walk failed to close")
