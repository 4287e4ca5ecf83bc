"""Growing Neural Gas training and the two post-training corrections.

The trainer keeps node state in fixed-capacity arrays (slot index = stable
vertex id) and hands each block of signals to the selected kernel backend.
All randomness comes from one PCG64 generator seeded by `GngParams.seed`,
which makes training reproducible bit for bit across runs and backends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import gng_block
from .errors import EmptyGraphError, InsufficientForegroundError
from .image import BinaryImage, background_majority

__all__ = [
    "GngParams",
    "GngGraph",
    "GngTrainer",
    "train",
    "prune_background_edges",
    "largest_component",
]


@dataclass(frozen=True)
class GngParams:
    neurons: int = 350
    insertion_period: int = 50
    max_edge_age: int = 50
    error_split: float = 0.5
    error_decay: float = 0.995
    winner_rate: float = 0.05
    neighbor_rate: float = 0.005
    seed: int = 0

    def __post_init__(self):
        if self.neurons < 2:
            raise ValueError("neurons must be >= 2")
        if self.insertion_period < 1:
            raise ValueError("insertion_period must be >= 1")
        if self.max_edge_age < 1:
            raise ValueError("max_edge_age must be >= 1")
        if not 0 < self.error_split < 1:
            raise ValueError("error_split must be in (0, 1)")
        if not 0 < self.error_decay < 1:
            raise ValueError("error_decay must be in (0, 1)")
        if not 0 < self.neighbor_rate <= self.winner_rate < 1:
            raise ValueError("need 0 < neighbor_rate <= winner_rate < 1")


class GngGraph:
    """Immutable embedded undirected graph with stable integer vertex ids."""

    def __init__(self, positions: dict, edges):
        self.positions = {int(v): (float(x), float(y)) for v, (x, y) in positions.items()}
        self.edges = set()
        self.adjacency = {v: set() for v in self.positions}
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError("self-loop edge")
            if a not in self.positions or b not in self.positions:
                raise ValueError(f"edge ({a},{b}) references unknown vertex")
            self.edges.add((min(a, b), max(a, b)))
            self.adjacency[a].add(b)
            self.adjacency[b].add(a)

    def vertex_ids(self) -> list:
        return sorted(self.positions)

    def neighbors(self, v: int) -> list:
        return sorted(self.adjacency[v])

    def __len__(self) -> int:
        return len(self.positions)

    def is_connected(self) -> bool:
        if not self.positions:
            return False
        start = next(iter(self.positions))
        seen = {start}
        stack = [start]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.positions)

    def to_json_dict(self) -> dict:
        return {
            "vertices": [
                {"id": v, "x": self.positions[v][0], "y": self.positions[v][1]}
                for v in self.vertex_ids()
            ],
            "edges": [[a, b] for a, b in sorted(self.edges)],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "GngGraph":
        positions = {int(v["id"]): (v["x"], v["y"]) for v in obj["vertices"]}
        return cls(positions, obj["edges"])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GngGraph)
            and self.positions == other.positions
            and self.edges == other.edges
        )


class GngTrainer:
    """Stateful GNG run over one image; use `train()` for the plain pipeline."""

    def __init__(self, img: BinaryImage, params: GngParams):
        if img.foreground_count() < 2:
            raise InsufficientForegroundError("GNG needs >= 2 foreground pixels")
        self.params = params
        self.coords = img.foreground_coords()
        self.rng = np.random.default_rng(params.seed)

        cap = params.neurons
        self.pos = np.zeros((cap, 2), dtype=np.float64)
        self.err = np.zeros(cap, dtype=np.float64)
        self.alive = np.zeros(cap, dtype=np.uint8)
        self.age = np.full((cap, cap), -1, dtype=np.int32)

        xs, ys = self.coords[:, 0], self.coords[:, 1]
        low = [float(xs.min()), float(ys.min())]
        high = [float(xs.max()) + 1.0, float(ys.max()) + 1.0]
        self.pos[:2] = self.rng.uniform(low, high, size=(2, 2))
        self.alive[:2] = 1
        self.n_alive = 2

    def sample_signals(self, count: int) -> np.ndarray:
        idx = self.rng.integers(0, len(self.coords), size=count)
        return self.coords[idx].astype(np.float64) + 0.5

    def run_signals(self, signals: np.ndarray) -> None:
        p = self.params
        gng_block(
            self.pos, self.err, self.alive, self.age, np.ascontiguousarray(signals),
            p.winner_rate, p.neighbor_rate, p.max_edge_age, p.error_decay,
        )
        self.n_alive = int(self.alive.sum())

    def insert_node(self) -> int:
        p = self.params
        masked = np.where(self.alive.astype(bool), self.err, -1.0)
        q = int(np.argmax(masked))
        nbrs = np.nonzero(self.age[q] >= 0)[0]
        if len(nbrs) == 0:
            raise AssertionError("insertion target has no neighbors")
        f = int(nbrs[np.argmax(self.err[nbrs])])
        r = int(np.argmin(self.alive))
        self.pos[r] = (self.pos[q] + self.pos[f]) / 2.0
        self.age[q, f] = self.age[f, q] = -1
        self.age[q, r] = self.age[r, q] = 0
        self.age[r, f] = self.age[f, r] = 0
        self.err[q] *= p.error_split
        self.err[f] *= p.error_split
        self.err[r] = self.err[q]
        self.alive[r] = 1
        self.n_alive += 1
        return r

    def run(self) -> GngGraph:
        p = self.params
        while True:
            self.run_signals(self.sample_signals(p.insertion_period))
            if self.n_alive < p.neurons:
                self.insert_node()
            else:
                break
        return self.graph()

    def graph(self) -> GngGraph:
        ids = np.nonzero(self.alive)[0]
        positions = {int(v): (self.pos[v, 0], self.pos[v, 1]) for v in ids}
        rows, cols = np.nonzero(self.age >= 0)
        edges = [(int(a), int(b)) for a, b in zip(rows, cols) if a < b]
        return GngGraph(positions, edges)


def train(img: BinaryImage, params: GngParams | None = None) -> GngGraph:
    """Run GNG on an image's foreground until the neuron budget is reached."""
    return GngTrainer(img, params or GngParams()).run()


def prune_background_edges(g: GngGraph, img: BinaryImage) -> GngGraph:
    """Drop every edge whose midpoint sits in a background-majority block."""
    kept = []
    for a, b in g.edges:
        ax, ay = g.positions[a]
        bx, by = g.positions[b]
        mid = ((ax + bx) / 2.0, (ay + by) / 2.0)
        if not background_majority(img, mid):
            kept.append((a, b))
    return GngGraph(g.positions, kept)


def largest_component(g: GngGraph) -> GngGraph:
    """Induced subgraph on the component with most vertices.

    Ties go to the component containing the smallest vertex id.
    """
    if len(g) == 0:
        raise EmptyGraphError("graph has no vertices")
    unseen = set(g.positions)
    best: set = set()
    for start in g.vertex_ids():
        if start not in unseen:
            continue
        comp = {start}
        stack = [start]
        unseen.discard(start)
        while stack:
            for w in g.adjacency[stack.pop()]:
                if w in unseen:
                    unseen.discard(w)
                    comp.add(w)
                    stack.append(w)
        # vertex_ids is ascending, so the first component found wins ties
        if len(comp) > len(best):
            best = comp
    positions = {v: g.positions[v] for v in best}
    edges = [(a, b) for a, b in g.edges if a in best and b in best]
    return GngGraph(positions, edges)
