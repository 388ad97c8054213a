"""Planar geometry kernel for polygonal mesh elements.

Purpose
-------
Validated primitives (points, circles, simple polygons) plus the handful of
geometric queries every quality metric is built from: signed area, interior
angles, polygon kernel (visibility core), largest inscribed circle, smallest
enclosing circle, pairwise distances.

Notes
-----
All polygons are stored counter-clockwise; clockwise input is reversed on
construction (logged at DEBUG level). Vertex loops may contain collinear
straight-through vertices (interior angle exactly pi) because conforming
meshes split edges, but coincident consecutive vertices, zero-width spikes
and self-intersections are rejected.

Tolerances are absolute and assume unit-frame-sized coordinates: consecutive
duplicates and self-intersections are tested at 1e-12, and a kernel whose
clipped area falls below 1e-12 is reported empty.
"""

from __future__ import annotations

import heapq
import logging
import math
import random
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

logger = logging.getLogger(__name__)

# Geometric predicate tolerance for unit-frame coordinates.
EPS = 1e-12

__all__ = [
    "EPS",
    "Point2",
    "Circle",
    "Polygon2",
    "Kernel",
    "signed_area",
    "polygon_perimeter",
    "polygon_centroid",
    "polygon_diameter",
    "interior_angles",
    "is_convex",
    "point_in_polygon",
    "segments_intersect",
    "polygon_kernel",
    "largest_inscribed_circle",
    "smallest_enclosing_circle",
    "min_pairwise_distance",
]


@dataclass(frozen=True)
class Point2:
    """A point in the plane. Coordinates must be finite."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point coordinates ({self.x}, {self.y})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


@dataclass(frozen=True)
class Circle:
    """A circle given by centre and radius (radius >= 0, both finite)."""

    center: Point2
    radius: float

    def __post_init__(self):
        if not math.isfinite(self.radius) or self.radius < 0.0:
            raise ValueError(f"invalid circle radius {self.radius}")


def _as_vertex_array(vertices) -> np.ndarray:
    arr = np.asarray(vertices, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) vertex array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vertex coordinates must be finite")
    return arr


def signed_area(vertices) -> float:
    """Shoelace signed area of a closed vertex loop (positive for CCW)."""
    v = _as_vertex_array(vertices)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def polygon_perimeter(vertices) -> float:
    v = _as_vertex_array(vertices)
    return float(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1).sum())


def polygon_centroid(vertices) -> Point2:
    """Area centroid of a simple polygon (shoelace moments)."""
    v = _as_vertex_array(vertices)
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    a = 0.5 * cross.sum()
    if abs(a) < EPS:
        raise ValueError("centroid of a degenerate (zero-area) loop")
    cx = float(((x + xn) * cross).sum() / (6.0 * a))
    cy = float(((y + yn) * cross).sum() / (6.0 * a))
    return Point2(cx, cy)


def polygon_diameter(vertices) -> float:
    """Largest pairwise vertex distance (equals the polygon diameter)."""
    v = _as_vertex_array(vertices)
    if len(v) < 2:
        return 0.0
    return float(pdist(v).max())


def min_pairwise_distance(points) -> float:
    """Smallest distance between any two of the given points.

    Raises ValueError for fewer than two points.
    """
    v = _as_vertex_array(points)
    if len(v) < 2:
        raise ValueError("need at least two points for a pairwise distance")
    return float(pdist(v).min())


def _orient(a, b, c) -> float:
    """Twice the signed area of triangle abc."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _within_bbox(a, b, p, eps) -> bool:
    return (
        min(a[0], b[0]) - eps <= p[0] <= max(a[0], b[0]) + eps
        and min(a[1], b[1]) - eps <= p[1] <= max(a[1], b[1]) + eps
    )


def segments_intersect(a, b, c, d, eps: float = EPS) -> bool:
    """True when segments ab and cd share any point (touching counts)."""
    d1 = _orient(c, d, a)
    d2 = _orient(c, d, b)
    d3 = _orient(a, b, c)
    d4 = _orient(a, b, d)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True
    if abs(d1) <= eps and _within_bbox(c, d, a, eps):
        return True
    if abs(d2) <= eps and _within_bbox(c, d, b, eps):
        return True
    if abs(d3) <= eps and _within_bbox(a, b, c, eps):
        return True
    if abs(d4) <= eps and _within_bbox(a, b, d, eps):
        return True
    return False


def point_in_polygon(point, vertices) -> bool:
    """Even-odd crossing test; points on the boundary count as inside."""
    v = _as_vertex_array(vertices)
    px, py = float(point[0]), float(point[1])
    inside = False
    n = len(v)
    for i in range(n):
        ax, ay = v[i]
        bx, by = v[(i + 1) % n]
        # boundary hit
        if abs(_orient((ax, ay), (bx, by), (px, py))) <= EPS and _within_bbox(
            (ax, ay), (bx, by), (px, py), EPS
        ):
            return True
        if (ay > py) != (by > py):
            t = (py - ay) / (by - ay)
            if px < ax + t * (bx - ax):
                inside = not inside
    return inside


class Polygon2:
    """A simple polygon with CCW vertex order, validated on construction.

    Parameters
    ----------
    vertices : array-like, shape (n, 2)
        Loop of n >= 3 finite points, implicitly closed. Clockwise loops are
        reversed. Collinear straight-through vertices are allowed; coincident
        consecutive vertices, zero-width spikes, zero total area and
        self-intersections raise ValueError.
    """

    __slots__ = ("_vertices",)

    def __init__(self, vertices):
        v = _as_vertex_array(vertices).copy()
        n = len(v)
        if n < 3:
            raise ValueError(f"polygon needs at least 3 vertices, got {n}")
        gaps = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
        if np.any(gaps < EPS):
            i = int(np.argmin(gaps))
            raise ValueError(f"coincident consecutive vertices at index {i}")
        a = signed_area(v)
        if abs(a) < EPS:
            raise ValueError("polygon has (near-)zero area")
        if a < 0.0:
            logger.debug("reversing clockwise polygon (%d vertices) to CCW", n)
            v = v[::-1].copy()
        self._check_spikes(v)
        self._check_simple(v)
        v.setflags(write=False)
        self._vertices = v

    @staticmethod
    def _check_spikes(v: np.ndarray):
        n = len(v)
        for i in range(n):
            p, q, r = v[i - 1], v[i], v[(i + 1) % n]
            e1 = q - p
            e2 = r - q
            if abs(e1[0] * e2[1] - e1[1] * e2[0]) <= EPS and np.dot(e1, e2) < 0.0:
                raise ValueError(f"zero-width spike at vertex {i}")

    @staticmethod
    def _check_simple(v: np.ndarray):
        n = len(v)
        for i in range(n):
            a, b = v[i], v[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue  # shared endpoint handled by spike/duplicate checks
                c, d = v[j], v[(j + 1) % n]
                if segments_intersect(a, b, c, d):
                    raise ValueError(f"self-intersection between edges {i} and {j}")

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def area(self) -> float:
        return signed_area(self._vertices)

    @property
    def perimeter(self) -> float:
        return polygon_perimeter(self._vertices)

    @property
    def centroid(self) -> Point2:
        return polygon_centroid(self._vertices)

    @property
    def diameter(self) -> float:
        return polygon_diameter(self._vertices)

    def bbox(self) -> tuple[float, float, float, float]:
        v = self._vertices
        return (
            float(v[:, 0].min()),
            float(v[:, 1].min()),
            float(v[:, 0].max()),
            float(v[:, 1].max()),
        )

    def contains(self, point) -> bool:
        return point_in_polygon(point, self._vertices)

    def __repr__(self):
        return f"Polygon2(n={self.n}, area={self.area:.6g})"


def interior_angles(polygon) -> np.ndarray:
    """Interior angle at every vertex of a CCW simple polygon, in radians.

    Each angle lies in (0, 2*pi); straight-through vertices give exactly pi
    and reflex corners exceed pi. The angles sum to (n - 2) * pi.
    """
    v = polygon.vertices if isinstance(polygon, Polygon2) else _as_vertex_array(polygon)
    prev = np.roll(v, 1, axis=0)
    nxt = np.roll(v, -1, axis=0)
    e_in = v - prev
    e_out = nxt - v
    cross = e_in[:, 0] * e_out[:, 1] - e_in[:, 1] * e_out[:, 0]
    dot = (e_in * e_out).sum(axis=1)
    # exterior turn in (-pi, pi]; interior = pi - turn
    return np.pi - np.arctan2(cross, dot)


def is_convex(polygon, eps: float = EPS) -> bool:
    """True when no interior angle of the CCW polygon exceeds pi."""
    v = polygon.vertices if isinstance(polygon, Polygon2) else _as_vertex_array(polygon)
    prev = np.roll(v, 1, axis=0)
    nxt = np.roll(v, -1, axis=0)
    e_in = v - prev
    e_out = nxt - v
    cross = e_in[:, 0] * e_out[:, 1] - e_in[:, 1] * e_out[:, 0]
    return bool(np.all(cross >= -eps))


# ---------------------------------------------------------------------------
# polygon kernel (visibility core) by successive half-plane clipping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Kernel:
    """Visibility kernel of a simple polygon.

    ``vertices`` is a CCW convex loop, or None when the kernel is empty.
    A clipped region with area below 1e-12 is reported as empty.
    """

    vertices: np.ndarray | None
    area: float

    @property
    def is_empty(self) -> bool:
        return self.vertices is None


def _clip_halfplane(region: list, a, b, eps: float) -> list:
    """Clip a convex CCW loop by the half-plane left of directed line a->b."""
    out = []
    n = len(region)
    for i in range(n):
        p = region[i]
        q = region[(i + 1) % n]
        dp = _orient(a, b, p)
        dq = _orient(a, b, q)
        if dp >= -eps:
            out.append(p)
        if (dp > eps and dq < -eps) or (dp < -eps and dq > eps):
            t = dp / (dp - dq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def polygon_kernel(polygon) -> Kernel:
    """Kernel of a simple polygon: the set of points that see every vertex.

    Computed by clipping the polygon's bounding box with the interior
    half-plane of every edge. The result is convex; an empty kernel is
    returned as ``Kernel(None, 0.0)``.
    """
    v = polygon.vertices if isinstance(polygon, Polygon2) else _as_vertex_array(polygon)
    minx, miny = v.min(axis=0)
    maxx, maxy = v.max(axis=0)
    pad = max(maxx - minx, maxy - miny) * 1e-6 + EPS
    region = [
        (minx - pad, miny - pad),
        (maxx + pad, miny - pad),
        (maxx + pad, maxy + pad),
        (minx - pad, maxy + pad),
    ]
    n = len(v)
    for i in range(n):
        region = _clip_halfplane(region, v[i], v[(i + 1) % n], EPS)
        if len(region) < 3:
            return Kernel(None, 0.0)
    arr = np.array(region, dtype=float)
    # drop near-coincident consecutive points produced by clipping
    keep = np.linalg.norm(arr - np.roll(arr, 1, axis=0), axis=1) > EPS
    arr = arr[keep]
    if len(arr) < 3:
        return Kernel(None, 0.0)
    a = signed_area(arr)
    if a < 1e-12:
        return Kernel(None, 0.0)
    arr.setflags(write=False)
    return Kernel(arr, float(a))


# ---------------------------------------------------------------------------
# largest inscribed circle (pole of inaccessibility, quadtree refinement)
# ---------------------------------------------------------------------------


def _signed_boundary_distance(x: float, y: float, v: np.ndarray) -> float:
    """Distance to the loop boundary, positive inside (even-odd rule)."""
    inside = False
    min_d2 = math.inf
    n = len(v)
    for i in range(n):
        ax, ay = v[i]
        bx, by = v[(i + 1) % n]
        if (ay > y) != (by > y) and x < ax + (y - ay) / (by - ay) * (bx - ax):
            inside = not inside
        # squared distance from (x, y) to segment ab
        dx, dy = bx - ax, by - ay
        px, py = x - ax, y - ay
        seg2 = dx * dx + dy * dy
        if seg2 > 0.0:
            t = max(0.0, min(1.0, (px * dx + py * dy) / seg2))
            px -= t * dx
            py -= t * dy
        d2 = px * px + py * py
        if d2 < min_d2:
            min_d2 = d2
    return (1.0 if inside else -1.0) * math.sqrt(min_d2)


# pole-of-inaccessibility cell budget; elongated shapes whose distance field
# peaks along a flat ridge (e.g. long rectangles) force the quadtree to tile
# the whole ridge, so very tight tolerances are cut off here instead of
# looping for minutes.
_POLYLABEL_MAX_CELLS = 2_000_000


def largest_inscribed_circle(polygon, tol: float | None = None) -> Circle:
    """Largest circle inscribed in a simple polygon.

    Quadtree refinement of the pole of inaccessibility: cells are explored
    best-first by their potential ``d + h * sqrt(2)`` until no cell can beat
    the best centre found by more than ``tol``. The default tolerance is
    1e-4 times the polygon diameter. If the cell budget runs out first (flat
    ridges of optimal centres make tight tolerances quadratically expensive),
    the best centre so far is returned and a warning is logged.
    """
    v = polygon.vertices if isinstance(polygon, Polygon2) else _as_vertex_array(polygon)
    if tol is None:
        tol = 1e-4 * polygon_diameter(v)
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    minx, miny = v.min(axis=0)
    maxx, maxy = v.max(axis=0)
    width, height = maxx - minx, maxy - miny
    h = min(width, height) / 2.0
    if h <= 0.0:
        raise ValueError("degenerate polygon extent")

    sqrt2 = math.sqrt(2.0)
    counter = 0
    heap: list = []

    def push(x, y, half):
        nonlocal counter
        d = _signed_boundary_distance(x, y, v)
        heapq.heappush(heap, (-(d + half * sqrt2), counter, x, y, half, d))
        counter += 1

    x = minx
    while x < maxx:
        y = miny
        while y < maxy:
            push(x + h, y + h, h)
            y += 2 * h
        x += 2 * h

    try:
        c = polygon_centroid(v)
        best_x, best_y = c.x, c.y
        best_d = _signed_boundary_distance(c.x, c.y, v)
    except ValueError:
        best_x, best_y = (minx + maxx) / 2.0, (miny + maxy) / 2.0
        best_d = _signed_boundary_distance(best_x, best_y, v)

    while heap:
        neg_pot, _, cx, cy, ch, cd = heapq.heappop(heap)
        if cd > best_d:
            best_d, best_x, best_y = cd, cx, cy
        if -neg_pot - best_d <= tol:
            continue
        if counter > _POLYLABEL_MAX_CELLS:
            logger.warning(
                "inscribed-circle search hit the %d-cell budget before tol=%g; "
                "remaining uncertainty %g", _POLYLABEL_MAX_CELLS, tol, -neg_pot - best_d
            )
            break
        q = ch / 2.0
        for ox in (-q, q):
            for oy in (-q, q):
                push(cx + ox, cy + oy, q)

    return Circle(Point2(best_x, best_y), max(best_d, 0.0))


# ---------------------------------------------------------------------------
# smallest enclosing circle (incremental Welzl)
# ---------------------------------------------------------------------------

# relative slack when testing circle membership, guards float round-off
_MULT_EPS = 1.0 + 1e-14


def _in_circle(c: tuple | None, p) -> bool:
    return c is not None and math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] * _MULT_EPS


def _circle_two(a, b) -> tuple:
    cx = (a[0] + b[0]) / 2.0
    cy = (a[1] + b[1]) / 2.0
    r = max(math.hypot(a[0] - cx, a[1] - cy), math.hypot(b[0] - cx, b[1] - cy))
    return (cx, cy, r)


def _circumcircle(a, b, c) -> tuple | None:
    # relative to the bbox midpoint for conditioning
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2.0
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2.0
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0.0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    r = max(
        math.hypot(a[0] - x, a[1] - y),
        math.hypot(b[0] - x, b[1] - y),
        math.hypot(c[0] - x, c[1] - y),
    )
    return (x, y, r)


def _circle_one_point(pts, p) -> tuple:
    c = (p[0], p[1], 0.0)
    for i, q in enumerate(pts):
        if not _in_circle(c, q):
            if c[2] == 0.0:
                c = _circle_two(p, q)
            else:
                c = _circle_two_points(pts[: i + 1], p, q)
    return c


def _circle_two_points(pts, p, q) -> tuple:
    circ = _circle_two(p, q)
    left = None
    right = None
    px, py = p
    qx, qy = q
    for r in pts:
        if _in_circle(circ, r):
            continue
        cross = _orient(p, q, r)
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        if cross > 0.0 and (left is None or _orient(p, q, (c[0], c[1])) > _orient(p, q, (left[0], left[1]))):
            left = c
        elif cross < 0.0 and (right is None or _orient(p, q, (c[0], c[1])) < _orient(p, q, (right[0], right[1]))):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def smallest_enclosing_circle(points) -> Circle:
    """Smallest circle containing all given points (Welzl, randomized order).

    The shuffle seed is fixed, so results are reproducible; the circle itself
    is unique, so the computed centre and radius are order-independent up to
    floating point round-off.
    """
    v = _as_vertex_array(points)
    if len(v) == 0:
        raise ValueError("no points given")
    pts = [(float(p[0]), float(p[1])) for p in v]
    random.Random(0x2545F4914F6CDD1D).shuffle(pts)
    c: tuple | None = None
    for i, p in enumerate(pts):
        if c is None or not _in_circle(c, p):
            c = _circle_one_point(pts[:i], p)
    assert c is not None
    return Circle(Point2(c[0], c[1]), c[2])
