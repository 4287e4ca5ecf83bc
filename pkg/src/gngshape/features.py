"""Multi-scale graph features along the outer boundary.

All four feature blocks are built from hop distances in the graph: GNG edges
have nearly uniform length, so hop counts stand in for geodesic length.
The feature matrix has one column per boundary walk position and one row per
(feature, scale) pair; no normalization is applied.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryCycle
from .errors import UnknownVertexError
from .geometry import convex_hull, point_in_hull
from .gng import GngGraph

__all__ = [
    "ScaleConfig",
    "FeatureMatrix",
    "DiskIndex",
    "bfs_distances",
    "perimeter_profile",
    "boundary_in_disk_profile",
    "convex_hull_area_profile",
    "distance_to_center_profile",
    "build_feature_matrix",
    "select_scales",
    "center_vertex",
]

BLOCK_NAMES = ("P", "B", "CH", "C")


@dataclass(frozen=True)
class ScaleConfig:
    m1: int = 10
    m2: int = 10
    m3: int = 10
    m4: int = 10
    tau: float = 0.5

    def __post_init__(self):
        if min(self.m1, self.m2, self.m3, self.m4) < 1:
            raise ValueError("every scale count must be >= 1")

    @property
    def total(self) -> int:
        return self.m1 + self.m2 + self.m3 + self.m4

    def layout(self) -> tuple:
        return (self.m1, self.m2, self.m3, self.m4)


class DiskIndex:
    """Hop distances from a set of source vertices to every graph vertex."""

    def __init__(self, g: GngGraph, sources):
        self.ids = g.vertex_ids()
        self.index = {v: i for i, v in enumerate(self.ids)}
        self._adj = [
            np.array([self.index[w] for w in g.neighbors(v)], dtype=np.intp)
            for v in self.ids
        ]
        self.dist = {s: self._bfs(self.index[s]) for s in sources}

    def _bfs(self, src: int) -> np.ndarray:
        dist = np.full(len(self.ids), -1, dtype=np.int64)
        dist[src] = 0
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for w in self._adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist


def bfs_distances(g: GngGraph, source: int) -> dict:
    """Unweighted shortest-path hop counts from `source` to every vertex."""
    if source not in g.positions:
        raise UnknownVertexError(f"vertex {source} not in graph")
    disks = DiskIndex(g, [source])
    d = disks.dist[source]
    return {v: int(d[i]) for i, v in enumerate(disks.ids)}


def _ring_counts(dist: np.ndarray, radii: int) -> np.ndarray:
    counts = np.bincount(dist[dist >= 1], minlength=radii + 1)
    return counts[1 : radii + 1].astype(np.float64)


def perimeter_profile(
    g: GngGraph, cycle: BoundaryCycle, disks: DiskIndex, m1: int
) -> np.ndarray:
    """Row j = size of the hop-distance-j ring around each boundary vertex."""
    block = np.zeros((m1, len(cycle)))
    for i, u in enumerate(cycle.vertex_ids):
        block[:, i] = _ring_counts(disks.dist[u], m1)
    return block


def boundary_in_disk_profile(
    g: GngGraph, cycle: BoundaryCycle, disks: DiskIndex, m2: int
) -> np.ndarray:
    """Row j = number of distinct boundary vertices within hop distance j."""
    bidx = np.array(sorted(disks.index[v] for v in cycle.distinct_ids()), dtype=np.intp)
    block = np.zeros((m2, len(cycle)))
    for i, u in enumerate(cycle.vertex_ids):
        d = disks.dist[u][bidx]
        cum = np.cumsum(np.bincount(d[d >= 0], minlength=m2 + 1))
        block[:, i] = cum[1 : m2 + 1]
    return block


def convex_hull_area_profile(
    g: GngGraph, cycle: BoundaryCycle, disks: DiskIndex, m3: int
) -> np.ndarray:
    """Row j = vertices of the hop-j disk inside the hull of its boundary part."""
    boundary_set = cycle.distinct_ids()
    pos = np.array([g.positions[v] for v in disks.ids])
    block = np.zeros((m3, len(cycle)))
    for i, u in enumerate(cycle.vertex_ids):
        d = disks.dist[u]
        for j in range(1, m3 + 1):
            in_disk = np.nonzero((d >= 0) & (d <= j))[0]
            hull_pts = [
                tuple(pos[k]) for k in in_disk if disks.ids[k] in boundary_set
            ]
            if not hull_pts:
                continue
            hull = convex_hull(hull_pts)
            block[j - 1, i] = sum(
                1 for k in in_disk if point_in_hull(hull, tuple(pos[k]))
            )
    return block


def center_vertex(g: GngGraph) -> int:
    """Vertex nearest (Euclidean) to the coordinate centroid; ties by id."""
    ids = g.vertex_ids()
    pos = np.array([g.positions[v] for v in ids])
    centroid = pos.mean(axis=0)
    d2 = ((pos - centroid) ** 2).sum(axis=1)
    return ids[int(np.argmin(d2))]


def distance_to_center_profile(
    g: GngGraph, cycle: BoundaryCycle, m4: int, disks: DiskIndex | None = None
) -> np.ndarray:
    """Row j = hop distance to the center vertex divided by j."""
    c = center_vertex(g)
    if disks is not None and c in disks.dist:
        dc = disks.dist[c]
        ids = disks.ids
        index = disks.index
    else:
        center_disks = DiskIndex(g, [c])
        dc = center_disks.dist[c]
        ids = center_disks.ids
        index = center_disks.index
    radii = np.arange(1, m4 + 1, dtype=np.float64)
    block = np.zeros((m4, len(cycle)))
    for i, u in enumerate(cycle.vertex_ids):
        block[:, i] = float(dc[index[u]]) / radii
    return block


@dataclass(frozen=True)
class FeatureMatrix:
    """m x n matrix; columns follow the boundary walk, rows stack P, B, CH, C."""

    values: np.ndarray
    block_layout: tuple
    boundary_ids: tuple

    def __post_init__(self):
        if self.values.shape[0] != sum(self.block_layout):
            raise ValueError("row count does not match block layout")

    @property
    def n_columns(self) -> int:
        return self.values.shape[1]

    def block(self, name: str) -> np.ndarray:
        k = BLOCK_NAMES.index(name)
        start = sum(self.block_layout[:k])
        return self.values[start : start + self.block_layout[k]]

    def scale_averages(self) -> np.ndarray:
        """(4, n) per-feature series averaged over scales (for plotting)."""
        return np.stack([self.block(name).mean(axis=0) for name in BLOCK_NAMES])

    def to_json_dict(self) -> dict:
        return {
            "block_layout": list(self.block_layout),
            "boundary_ids": list(self.boundary_ids),
            "values": self.values.tolist(),
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "FeatureMatrix":
        return cls(
            np.array(obj["values"], dtype=np.float64),
            tuple(obj["block_layout"]),
            tuple(obj["boundary_ids"]),
        )

    def to_csv(self) -> str:
        lines = [
            "# rows: blocks "
            + " ".join(f"{n}={m}" for n, m in zip(BLOCK_NAMES, self.block_layout))
            + "; columns: boundary walk positions"
        ]
        for row in self.values:
            lines.append(",".join(repr(v) for v in row))
        return "\n".join(lines) + "\n"


def build_feature_matrix(
    g: GngGraph, cycle: BoundaryCycle, scales: ScaleConfig | None = None
) -> FeatureMatrix:
    scales = scales or ScaleConfig()
    disks = DiskIndex(g, set(cycle.vertex_ids) | {center_vertex(g)})
    blocks = [
        perimeter_profile(g, cycle, disks, scales.m1),
        boundary_in_disk_profile(g, cycle, disks, scales.m2),
        convex_hull_area_profile(g, cycle, disks, scales.m3),
        distance_to_center_profile(g, cycle, scales.m4, disks),
    ]
    return FeatureMatrix(np.vstack(blocks), scales.layout(), cycle.vertex_ids)


def select_scales(block_fn, samples, tau: float, m_max: int = 20) -> tuple:
    """Smallest scale count where consecutive-scale rows stop changing.

    `block_fn(g, cycle, m)` must return an (m, n) profile. Returns
    (m, converged); when the mean absolute row difference never drops below
    `tau`, m_max is returned with converged=False.
    """
    if not samples:
        raise ValueError("need at least one sample graph")
    if tau <= 0:
        raise ValueError("tau must be positive")
    full = np.hstack([block_fn(g, cycle, m_max + 1) for g, cycle in samples])
    for m in range(1, m_max + 1):
        if np.abs(full[m] - full[m - 1]).mean() < tau:
            return m, True
    return m_max, False
