"""Small planar geometry kernel: convex hull and hull membership."""

from __future__ import annotations

__all__ = ["convex_hull", "point_in_hull"]

ORIENT_TOL = 1e-9


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list:
    """Monotone-chain convex hull; vertices in counterclockwise order.

    Duplicates are removed. Collinear inputs give a 2-point segment; a single
    point gives a 1-point hull.
    """
    if len(points) == 0:
        raise ValueError("need at least one point")
    pts = sorted({(float(x), float(y)) for x, y in points})
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) > 1 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and len(pts) > 2:
        # all input points collinear: keep the extreme pair
        return sorted(hull)
    return hull


def _on_segment(a, b, p, tol: float) -> bool:
    if abs(_cross(a, b, p)) > tol * max(1.0, abs(b[0] - a[0]) + abs(b[1] - a[1])):
        return False
    lo_x, hi_x = min(a[0], b[0]), max(a[0], b[0])
    lo_y, hi_y = min(a[1], b[1]), max(a[1], b[1])
    return lo_x - tol <= p[0] <= hi_x + tol and lo_y - tol <= p[1] <= hi_y + tol


def point_in_hull(hull, p, tol: float = ORIENT_TOL) -> bool:
    """True iff p lies inside or on a hull from `convex_hull`.

    Degenerate hulls (point, segment) only contain points exactly on them,
    up to `tol`.
    """
    if len(hull) == 1:
        a = hull[0]
        return abs(p[0] - a[0]) <= tol and abs(p[1] - a[1]) <= tol
    if len(hull) == 2:
        return _on_segment(hull[0], hull[1], p, tol)
    for i in range(len(hull)):
        a = hull[i]
        b = hull[(i + 1) % len(hull)]
        if _cross(a, b, p) < -tol:
            return False
    return True
