"""Steiner symmetrization of convex polygons about an arbitrary axis.

Each chord orthogonal to the axis is recentered on it. In axis-aligned
coordinates the body is x-monotone, bounded by an upper chain f and a
lower chain g; the symmetrized body is bounded by +/-(f - g)/2. Both
chains are piecewise linear, so sampling (f - g)/2 on the merged set of
chain breakpoints reproduces the symmetrized body exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import ConvexPolygon, Point, diameter

_XY = tuple[float, float]

# Breakpoints closer than this fraction of the body width are merged.
BREAKPOINT_REL_TOL = 1e-12


@dataclass(frozen=True)
class Axis:
    """Oriented line given by a point on it and a unit direction."""

    point: Point
    direction: _XY

    def __post_init__(self) -> None:
        dx, dy = self.direction
        object.__setattr__(self, "direction", (float(dx), float(dy)))
        norm = math.hypot(*self.direction)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"direction must be a unit vector, |d| = {norm}")

    @classmethod
    def through(cls, point: Point, direction: _XY) -> "Axis":
        """Build from an arbitrary non-zero direction, normalizing it."""
        norm = math.hypot(*direction)
        if norm == 0.0:
            raise ValueError("direction must be non-zero")
        return cls(point, (direction[0] / norm, direction[1] / norm))

    def to_local(self, x: float, y: float) -> _XY:
        """Rotate/translate so the axis becomes the x-axis."""
        c, s = self.direction
        dx, dy = x - self.point.x, y - self.point.y
        return (c * dx + s * dy, -s * dx + c * dy)

    def to_world(self, x: float, y: float) -> _XY:
        c, s = self.direction
        return (c * x - s * y + self.point.x, s * x + c * y + self.point.y)


def _split_chains(verts: list[_XY]) -> tuple[list[_XY], list[_XY]]:
    """Lower and upper boundary chains, both ordered left to right.

    The ring is split at the leftmost and rightmost vertices; ties in x
    prefer the lexicographically smaller vertex, making the split
    deterministic. Walking the CCW ring from the left split point to the
    right one yields the lower chain.
    """
    n = len(verts)
    i_left = min(range(n), key=lambda i: verts[i])
    i_right = max(range(n), key=lambda i: (verts[i][0], -verts[i][1]))

    lower = []
    i = i_left
    while True:
        lower.append(verts[i])
        if i == i_right:
            break
        i = (i + 1) % n
    upper = []
    i = i_right
    while True:
        upper.append(verts[i])
        if i == i_left:
            break
        i = (i + 1) % n
    upper.reverse()
    return lower, upper


def _collapse_vertical_runs(chain: list[_XY], keep_max: bool, tol: float) -> tuple[list[float], list[float]]:
    """Collapse runs of near-equal x (vertical edges at the extremes)."""
    xs: list[float] = []
    ys: list[float] = []
    for x, y in chain:
        if xs and abs(x - xs[-1]) <= tol:
            if (y > ys[-1]) == keep_max:
                xs[-1], ys[-1] = x, y
        else:
            xs.append(x)
            ys.append(y)
    return xs, ys


def steiner_symmetrize(P: ConvexPolygon, axis: Axis) -> ConvexPolygon:
    """Steiner symmetrization of P about the axis.

    The result is convex, symmetric about the axis, and has the same area
    as P. It is returned in the original coordinate frame.
    """
    local = [axis.to_local(x, y) for x, y in P.vertex_array]
    lower, upper = _split_chains(local)
    width = max(p[0] for p in local) - min(p[0] for p in local)
    tol = BREAKPOINT_REL_TOL * width

    gx, gy = _collapse_vertical_runs(lower, keep_max=False, tol=tol)
    fx, fy = _collapse_vertical_runs(upper, keep_max=True, tol=tol)

    grid: list[float] = []
    for x in sorted(fx + gx):
        if not grid or x - grid[-1] > tol:
            grid.append(x)
    xs = np.array(grid)
    f = np.interp(xs, np.array(fx), np.array(fy))
    g = np.interp(xs, np.array(gx), np.array(gy))
    h = np.maximum(0.5 * (f - g), 0.0)

    ring = [(x, -v) for x, v in zip(xs, h)]
    ring += [(x, v) for x, v in zip(xs[::-1], h[::-1])]
    out = ConvexPolygon(ring)
    return ConvexPolygon([axis.to_world(x, y) for x, y in out.vertex_array])


def double_symmetrize(P: ConvexPolygon) -> ConvexPolygon:
    """Symmetrize about a diameter line and then its perpendicular bisector.

    The body is first moved so a diameter lies on the x-axis centered at
    the origin; the result is returned in that canonical pose. It is
    symmetric about both coordinate axes and keeps the area and diameter
    of P.
    """
    delta, a, b = diameter(P)
    mid = Point(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
    direction = ((b.x - a.x) / delta, (b.y - a.y) / delta)
    frame = Axis(mid, direction)
    canonical = ConvexPolygon([frame.to_local(x, y) for x, y in P.vertex_array])

    once = steiner_symmetrize(canonical, Axis(Point(0.0, 0.0), (1.0, 0.0)))
    return steiner_symmetrize(once, Axis(Point(0.0, 0.0), (0.0, 1.0)))
