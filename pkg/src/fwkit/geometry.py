"""Exact planar primitives: convex polygons, hulls, diameter, smallest
enclosing disk, half-plane clipping, and symmetry detection.

All types are immutable after construction and all operations are pure, so
everything here is safe for concurrent use.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import AllCollinear, InvalidPolygon

# Cross products below this fraction of scale^2 are treated as collinear.
COLLINEAR_REL_TOL = 1e-12
# Vertices closer than this fraction of scale are treated as duplicates.
DUPLICATE_REL_TOL = 1e-12
# Absolute slack when testing vertex containment in the enclosing disk.
SED_ABS_TOL = 1e-9

_XY = tuple[float, float]


@dataclass(frozen=True)
class Point:
    """A point in the plane with finite coordinates."""

    x: float
    y: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def __iter__(self) -> Iterator[float]:
        return iter((self.x, self.y))

    def distance_to(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Disk:
    """Disk given by center and radius."""

    center: Point
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "radius", float(self.radius))
        if not (math.isfinite(self.radius) and self.radius >= 0.0):
            raise ValueError(f"radius must be finite and >= 0, got {self.radius}")

    def contains(self, p: Point, tol: float = SED_ABS_TOL) -> bool:
        return p.distance_to(self.center) <= self.radius + tol


@dataclass(frozen=True)
class HalfPlane:
    """Half-plane {p : p . normal <= offset} with a unit normal."""

    normal: _XY
    offset: float

    def __post_init__(self) -> None:
        nx, ny = self.normal
        object.__setattr__(self, "normal", (float(nx), float(ny)))
        object.__setattr__(self, "offset", float(self.offset))
        norm = math.hypot(*self.normal)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"normal must be a unit vector, |n| = {norm}")

    @classmethod
    def of(cls, nx: float, ny: float, offset: float) -> "HalfPlane":
        """Build from an arbitrary (non-zero) normal, rescaling to unit length."""
        norm = math.hypot(nx, ny)
        if norm == 0.0:
            raise ValueError("normal must be non-zero")
        return cls((nx / norm, ny / norm), offset / norm)

    def signed_distance(self, p: Point | _XY) -> float:
        x, y = (p.x, p.y) if isinstance(p, Point) else p
        return x * self.normal[0] + y * self.normal[1] - self.offset


def _shoelace(ring: Sequence[_XY]) -> float:
    """Twice the signed area of a closed ring (positive for CCW)."""
    s = 0.0
    n = len(ring)
    for i in range(n):
        x0, y0 = ring[i]
        x1, y1 = ring[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s


def _ring_scale(ring: Sequence[_XY]) -> float:
    xs = [p[0] for p in ring]
    ys = [p[1] for p in ring]
    return max(max(xs) - min(xs), max(ys) - min(ys), 1e-300)


def _normalize_ring(ring: Sequence[_XY]) -> list[_XY]:
    """Orient CCW, drop duplicate and collinear vertices, enforce strict convexity."""
    pts = [(float(x), float(y)) for x, y in ring]
    if len(pts) < 3:
        raise InvalidPolygon(f"need at least 3 vertices, got {len(pts)}")
    for x, y in pts:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InvalidPolygon(f"vertex coordinates must be finite, got ({x}, {y})")

    if _shoelace(pts) < 0.0:
        pts.reverse()

    scale = _ring_scale(pts)
    dup_tol = DUPLICATE_REL_TOL * scale
    cross_tol = COLLINEAR_REL_TOL * scale * scale

    deduped: list[_XY] = []
    for p in pts:
        if not deduped or math.hypot(p[0] - deduped[-1][0], p[1] - deduped[-1][1]) > dup_tol:
            deduped.append(p)
    while len(deduped) > 1 and math.hypot(
            deduped[-1][0] - deduped[0][0], deduped[-1][1] - deduped[0][1]) <= dup_tol:
        deduped.pop()
    pts = deduped

    # Iterate until stable: removing one vertex can make a neighbour collinear.
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        kept: list[_XY] = []
        n = len(pts)
        for i in range(n):
            px, py = pts[i - 1]
            cx, cy = pts[i]
            nx, ny = pts[(i + 1) % n]
            cross = (cx - px) * (ny - py) - (cy - py) * (nx - px)
            if abs(cross) <= cross_tol:
                changed = True
                continue
            kept.append(pts[i])
        pts = kept

    if len(pts) < 3:
        raise InvalidPolygon("polygon is degenerate (zero area after pruning)")
    area2 = _shoelace(pts)
    if area2 <= cross_tol:
        raise InvalidPolygon("polygon area is not positive")
    n = len(pts)
    for i in range(n):
        px, py = pts[i - 1]
        cx, cy = pts[i]
        nx, ny = pts[(i + 1) % n]
        cross = (cx - px) * (ny - py) - (cy - py) * (nx - px)
        if cross <= 0.0:
            raise InvalidPolygon("vertex ring is not convex")
    return pts


class ConvexPolygon:
    """Strictly convex polygon with a counterclockwise vertex ring.

    Construction normalizes orientation, prunes duplicate and collinear
    vertices (tolerance 1e-12 relative to the bounding-box scale), and
    rejects degenerate or non-convex rings with :class:`InvalidPolygon`.
    """

    __slots__ = ("_verts", "__dict__")

    def __init__(self, vertices: Iterable[Point | _XY]):
        ring = [(p.x, p.y) if isinstance(p, Point) else (p[0], p[1]) for p in vertices]
        self._verts: tuple[_XY, ...] = tuple(_normalize_ring(ring))

    @property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(Point(x, y) for x, y in self._verts)

    @property
    def vertex_array(self) -> tuple[_XY, ...]:
        """Vertices as plain (x, y) tuples, CCW."""
        return self._verts

    def __len__(self) -> int:
        return len(self._verts)

    def __repr__(self) -> str:
        return f"ConvexPolygon({len(self._verts)} vertices, area={self.area:.6g})"

    @cached_property
    def xy(self) -> np.ndarray:
        """Vertex coordinates as a read-only (n, 2) array."""
        arr = np.array(self._verts, dtype=float)
        arr.flags.writeable = False
        return arr

    @cached_property
    def area(self) -> float:
        return 0.5 * _shoelace(self._verts)

    @cached_property
    def bounding_box(self) -> tuple[float, float, float, float]:
        """(xmin, ymin, xmax, ymax)."""
        xs = [p[0] for p in self._verts]
        ys = [p[1] for p in self._verts]
        return (min(xs), min(ys), max(xs), max(ys))

    @cached_property
    def scale(self) -> float:
        xmin, ymin, xmax, ymax = self.bounding_box
        return max(xmax - xmin, ymax - ymin)

    @cached_property
    def centroid(self) -> Point:
        cx = cy = 0.0
        n = len(self._verts)
        for i in range(n):
            x0, y0 = self._verts[i]
            x1, y1 = self._verts[(i + 1) % n]
            w = x0 * y1 - x1 * y0
            cx += (x0 + x1) * w
            cy += (y0 + y1) * w
        a6 = 6.0 * self.area
        return Point(cx / a6, cy / a6)

    def contains(self, p: Point | _XY, tol: Optional[float] = None) -> bool:
        """Inclusive point-in-polygon test (boundary counts as inside)."""
        x, y = (p.x, p.y) if isinstance(p, Point) else p
        if tol is None:
            tol = 1e-12 * self.scale * self.scale
        n = len(self._verts)
        for i in range(n):
            x0, y0 = self._verts[i]
            x1, y1 = self._verts[(i + 1) % n]
            if (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) < -tol:
                return False
        return True

    def translated(self, dx: float, dy: float) -> "ConvexPolygon":
        return ConvexPolygon([(x + dx, y + dy) for x, y in self._verts])

    def transformed(self, scale: float, angle: float = 0.0,
                    dx: float = 0.0, dy: float = 0.0) -> "ConvexPolygon":
        """Similarity transform: rotate by angle, scale, then translate."""
        c, s = math.cos(angle), math.sin(angle)
        return ConvexPolygon(
            [(scale * (c * x - s * y) + dx, scale * (s * x + c * y) + dy)
             for x, y in self._verts]
        )


# ---------------------------------------------------------------------------
# Convex hull

def convex_hull(points: Iterable[Point | _XY]) -> ConvexPolygon:
    """Minimal counterclockwise convex hull (monotone chain).

    Raises :class:`AllCollinear` when the input spans no area.
    """
    pts = sorted({(p.x, p.y) if isinstance(p, Point) else (float(p[0]), float(p[1]))
                  for p in points})
    if len(pts) < 3:
        raise AllCollinear("need at least 3 distinct points")
    scale = _ring_scale(pts)
    tol = COLLINEAR_REL_TOL * scale * scale

    def build(seq: list[_XY]) -> list[_XY]:
        chain: list[_XY] = []
        for p in seq:
            while len(chain) >= 2:
                ox, oy = chain[-2]
                ax, ay = chain[-1]
                if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) <= tol:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    ring = lower[:-1] + upper[:-1]
    if len(ring) < 3:
        raise AllCollinear("all points are collinear")
    return ConvexPolygon(ring)


# ---------------------------------------------------------------------------
# Diameter via rotating calipers

def diameter(P: ConvexPolygon) -> tuple[float, Point, Point]:
    """Diameter of the polygon and an attaining vertex pair.

    Antipodal vertex pairs are enumerated with rotating calipers over the
    upper and lower chains; the polygon diameter is attained at vertices.
    """
    pts = sorted(P.vertex_array)
    upper: list[_XY] = []
    lower: list[_XY] = []
    for p in pts:
        while len(upper) > 1 and _orient(upper[-2], upper[-1], p) >= 0:
            upper.pop()
        while len(lower) > 1 and _orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        upper.append(p)
        lower.append(p)

    best = -1.0
    best_pair = (pts[0], pts[-1])
    i, j = 0, len(lower) - 1
    while i < len(upper) - 1 or j > 0:
        a, b = upper[i], lower[j]
        d2 = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
        if d2 > best:
            best = d2
            best_pair = (a, b)
        if i == len(upper) - 1:
            j -= 1
        elif j == 0:
            i += 1
        elif ((upper[i + 1][1] - upper[i][1]) * (lower[j][0] - lower[j - 1][0])
              > (lower[j][1] - lower[j - 1][1]) * (upper[i + 1][0] - upper[i][0])):
            i += 1
        else:
            j -= 1
    a, b = best_pair
    return math.sqrt(best), Point(*a), Point(*b)


def _orient(o: _XY, a: _XY, b: _XY) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


# ---------------------------------------------------------------------------
# Smallest enclosing disk (randomized incremental over the vertices)

def smallest_enclosing_disk(P: ConvexPolygon) -> Disk:
    """Smallest disk containing the polygon.

    For a polygon the vertices suffice. Expected linear time in the number
    of vertices; the internal shuffle uses a fixed seed so results are
    deterministic (the disk itself is unique anyway).
    """
    pts = list(P.vertex_array)
    random.Random(0x5EED).shuffle(pts)
    tol = SED_ABS_TOL * max(P.scale, 1.0)

    c: Optional[tuple[float, float, float]] = None
    for i, p in enumerate(pts):
        if c is None or not _in_circle(c, p, tol):
            c = _sed_with_one(pts[: i + 1], p, tol)
    assert c is not None
    return Disk(Point(c[0], c[1]), c[2])


def _in_circle(c: tuple[float, float, float], p: _XY, tol: float) -> bool:
    return math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] * (1.0 + 1e-14) + tol * 1e-3


def _sed_with_one(pts: list[_XY], p: _XY, tol: float) -> tuple[float, float, float]:
    c = (p[0], p[1], 0.0)
    for i, q in enumerate(pts):
        if not _in_circle(c, q, tol):
            if c[2] == 0.0:
                c = _circle_two(p, q)
            else:
                c = _sed_with_two(pts[: i + 1], p, q, tol)
    return c


def _sed_with_two(pts: list[_XY], p: _XY, q: _XY, tol: float) -> tuple[float, float, float]:
    base = _circle_two(p, q)
    left: Optional[tuple[float, float, float]] = None
    right: Optional[tuple[float, float, float]] = None
    for r in pts:
        if _in_circle(base, r, tol):
            continue
        side = _orient(p, q, r)
        c = _circle_three(p, q, r)
        if c is None:
            continue
        center_side = _orient(p, q, (c[0], c[1]))
        if side > 0.0 and (left is None or center_side > _orient(p, q, (left[0], left[1]))):
            left = c
        elif side < 0.0 and (right is None or center_side < _orient(p, q, (right[0], right[1]))):
            right = c
    if left is None:
        return base if right is None else right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _circle_two(a: _XY, b: _XY) -> tuple[float, float, float]:
    cx = 0.5 * (a[0] + b[0])
    cy = 0.5 * (a[1] + b[1])
    r = max(math.hypot(cx - a[0], cy - a[1]), math.hypot(cx - b[0], cy - b[1]))
    return (cx, cy, r)


def _circle_three(a: _XY, b: _XY, c: _XY) -> Optional[tuple[float, float, float]]:
    # Shift to the bbox midpoint first; the circumcenter formula is
    # translation-sensitive in floating point.
    ox = 0.5 * (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0]))
    oy = 0.5 * (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1]))
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    x, y = ux + ox, uy + oy
    r = max(math.hypot(x - a[0], y - a[1]),
            math.hypot(x - b[0], y - b[1]),
            math.hypot(x - c[0], y - c[1]))
    return (x, y, r)


# ---------------------------------------------------------------------------
# Half-plane clipping

def clip(P: ConvexPolygon, h: HalfPlane) -> Optional[ConvexPolygon]:
    """Intersection of the polygon with a half-plane.

    Returns None when the intersection has zero area.
    """
    out: list[_XY] = []
    verts = P.vertex_array
    n = len(verts)
    d = [h.signed_distance(v) for v in verts]
    for i in range(n):
        j = (i + 1) % n
        a, b = verts[i], verts[j]
        da, db = d[i], d[j]
        if da <= 0.0:
            out.append(a)
            if db > 0.0:
                t = da / (da - db)
                out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
        elif db < 0.0:
            t = da / (da - db)
            out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    if len(out) < 3:
        return None
    try:
        return ConvexPolygon(out)
    except InvalidPolygon:
        return None


# ---------------------------------------------------------------------------
# Central symmetry

def central_symmetry_center(P: ConvexPolygon, tol: Optional[float] = None) -> Optional[Point]:
    """Center of point symmetry, or None if the polygon has none.

    A centrally symmetric polygon has an even vertex count and opposite
    vertices v[i], v[i + n/2] summing to twice the center; the candidate
    center is the vertex centroid.
    """
    verts = P.vertex_array
    n = len(verts)
    if n % 2 != 0:
        return None
    if tol is None:
        tol = 1e-9 * P.scale
    cx = sum(v[0] for v in verts) / n
    cy = sum(v[1] for v in verts) / n
    half = n // 2
    for i in range(half):
        ox, oy = verts[i + half]
        vx, vy = verts[i]
        if math.hypot(vx + ox - 2.0 * cx, vy + oy - 2.0 * cy) > tol:
            return None
    return Point(cx, cy)


# ---------------------------------------------------------------------------
# Shared polygon JSON format: {"vertices": [[x0, y0], [x1, y1], ...]}

def polygon_from_json(obj: object) -> ConvexPolygon:
    """Build a polygon from the shared JSON structure.

    Input orientation may be CW or CCW; it is normalized on load.
    Raises ValueError naming the offending field on malformed input.
    """
    if not isinstance(obj, dict):
        raise ValueError("polygon JSON must be an object with a 'vertices' field")
    verts = obj.get("vertices")
    if not isinstance(verts, list) or len(verts) < 3:
        raise ValueError("field 'vertices' must be a list of at least 3 [x, y] pairs")
    ring = []
    for i, item in enumerate(verts):
        if (not isinstance(item, (list, tuple)) or len(item) != 2
                or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in item)):
            raise ValueError(f"field 'vertices[{i}]' must be an [x, y] pair of numbers")
        ring.append((float(item[0]), float(item[1])))
    return ConvexPolygon(ring)


def polygon_to_json(P: ConvexPolygon) -> dict:
    return {"vertices": [[x, y] for x, y in P.vertex_array]}


def load_polygon(path: str) -> ConvexPolygon:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON in {path}: {exc}") from exc
    return polygon_from_json(obj)


def save_polygon(P: ConvexPolygon, path: str) -> None:
    from ._serialize import dumps

    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(polygon_to_json(P)))
        fh.write("\n")
