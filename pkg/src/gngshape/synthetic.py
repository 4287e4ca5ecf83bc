"""Synthetic shape generator used by tests and the acceptance suite.

Four visually distinct classes (disk, bar, cross, star) with per-instance
jitter in size, position and orientation.
"""

from __future__ import annotations

import math

import numpy as np

from .image import BinaryImage

__all__ = ["make_shape", "synthetic_dataset", "CLASSES"]

CLASSES = ("disk", "bar", "cross", "star")


def _grid(size: int):
    ys, xs = np.mgrid[0:size, 0:size]
    return xs + 0.5, ys + 0.5


def _rotated(xx, yy, cx, cy, theta):
    dx, dy = xx - cx, yy - cy
    c, s = math.cos(theta), math.sin(theta)
    return c * dx + s * dy, -s * dx + c * dy


def _fill_polygon(size: int, pts: np.ndarray) -> np.ndarray:
    """Even-odd rasterization of a polygon over pixel centers."""
    xx, yy = _grid(size)
    inside = np.zeros((size, size), dtype=bool)
    k = len(pts)
    for i in range(k):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % k]
        if y1 == y2:
            continue
        crosses = ((y1 > yy) != (y2 > yy)) & (
            xx < (x2 - x1) * (yy - y1) / (y2 - y1) + x1
        )
        inside ^= crosses
    return inside


def make_shape(kind: str, size: int = 160, rng: np.random.Generator | None = None) -> BinaryImage:
    rng = rng or np.random.default_rng(0)
    cx = size / 2 + rng.uniform(-5, 5)
    cy = size / 2 + rng.uniform(-5, 5)
    scale = rng.uniform(0.9, 1.1)
    theta = rng.uniform(-0.35, 0.35)
    xx, yy = _grid(size)

    if kind == "disk":
        r = 0.28 * size * scale
        mask = (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r
    elif kind == "bar":
        half_l = 0.38 * size * scale
        half_w = 0.07 * size * scale
        u, v = _rotated(xx, yy, cx, cy, theta)
        mask = (np.abs(u) <= half_l) & (np.abs(v) <= half_w)
    elif kind == "cross":
        half_l = 0.34 * size * scale
        half_w = 0.065 * size * scale
        u, v = _rotated(xx, yy, cx, cy, theta)
        mask = ((np.abs(u) <= half_l) & (np.abs(v) <= half_w)) | (
            (np.abs(v) <= half_l) & (np.abs(u) <= half_w)
        )
    elif kind == "star":
        outer = 0.40 * size * scale
        inner = 0.16 * size * scale
        pts = []
        for i in range(10):
            r = outer if i % 2 == 0 else inner
            ang = theta + i * math.pi / 5 - math.pi / 2
            pts.append((cx + r * math.cos(ang), cy + r * math.sin(ang)))
        mask = _fill_polygon(size, np.array(pts))
    else:
        raise ValueError(f"unknown shape kind {kind!r}")
    return BinaryImage(mask)


def synthetic_dataset(
    per_class: int = 10, size: int = 160, seed: int = 0, classes=CLASSES
) -> list:
    """List of (label, BinaryImage) pairs with per-instance jitter."""
    items = []
    for label in classes:
        for k in range(per_class):
            rng = np.random.default_rng([seed, classes.index(label), k])
            items.append((label, make_shape(label, size, rng)))
    return items
