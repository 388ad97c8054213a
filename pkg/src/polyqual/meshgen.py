"""Generation of t-parametrized polygonal mesh families on the unit canvas.

The pipeline: instantiate seed polygons (parametric classes, seeded random
polygons, or polygons loaded from mesh files), place them on the canvas
with position/scale/rotation, triangulate the uncovered area with quality
bounds, then optionally mirror the mesh into a 2x2 tiling and aggregate
filler triangles into larger polygonal cells.

Parametric classes
------------------
Each class maps a parameter t in [0, 1] to a simple CCW polygon in the
[0, 1]^2 reference frame. t=0 is the benign end; growing t degrades one
documented metric monotonically (the "stressed metric", see
STRESSED_METRICS). The exact vertex schedules below are normative for this
package: tests and downstream fixtures rely on them.

* sliver: isosceles triangle, apex (0.5, 0.95), legs 0.9, apex angle
  (pi/3)*(1-0.99t). Equilateral-ish at t=0 (60 deg, MA baseline), a 0.6 deg
  needle at t=1. Stresses MA.
* comb: 8-tooth comb. Tooth width 0.0375, tooth gap g(t) = 0.1*10^(-2t),
  total width 0.3+7g(t) (exactly 1 at t=0), base y in [0.05, 0.35], teeth
  to y=0.95. The whole-polygon MPD is min(0.0375, g(t)): constant early,
  then the gap. Stresses MPD (and SE).
* star: 8-point star centered at (0.5, 0.5), outer radius 0.5 at angles
  2*pi*k/8, inner radius rho(t) = 0.5*(1-0.998t) at the half-step angles.
  A regular 16-gon at t=0 (convex, KAR baseline 1), needle spikes at t=1.
  Stresses KAR (and SRG, CR).
* maze: an L-pocket with a swinging occluder flap, 8 vertices, constant
  topology. The flap tip F sits at (0.5+d(t), 0.65) with d(t) = 0.45t for
  t <= 0.5, then 0.225+0.35(t-0.5). The kernel is the part of the pocket
  rectangle [0.5, 0.95]x[0.05, 0.5] that sees past the flap:
  KE(t) = integral_{0.3}^{0.75} max(0, 0.45 - 3t*u) du for t <= 0.5
  (0.2025 at t=0), exactly 0 at t = 0.5 and empty for every t >= 0.5.
  Stresses KE.
* ngon_collapse: regular 16-gon of radius 0.45 centered at (0.5, 0.5);
  the two vertices of one edge slide along their chord toward its midpoint
  so the edge length is l(t) = l0*10^(-3t). Stresses ER.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .delaunay import triangulate_pslg
from .geometry import Polygon2, point_in_polygon, segments_intersect
from .mesh import PolygonalMesh

logger = logging.getLogger(__name__)

CANVAS = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
PLACEMENT_EPS = 1e-6
WELD_EPS = 1e-9

PARAMETRIC_CLASSES = ("sliver", "comb", "star", "maze", "ngon_collapse")

# the metric each class degrades monotonically (non-increasing in t)
STRESSED_METRICS = {
    "sliver": "MA",
    "comb": "MPD",
    "star": "KAR",
    "maze": "KE",
    "ngon_collapse": "ER",
}

# refinement bounds that keep every class triangulable in reasonable time:
# the comb's slots are too thin for an angle bound (the cascade would dig
# into the gaps), so it gets an area bound only
FAMILY_TRIANGULATION = {
    "sliver": {"max_area": 0.02, "min_angle": 20.0},
    "comb": {"max_area": 0.02, "min_angle": None},
    "star": {"max_area": 0.02, "min_angle": 20.0},
    "maze": {"max_area": 0.02, "min_angle": 20.0},
    "ngon_collapse": {"max_area": 0.02, "min_angle": 20.0},
}


# ---------------------------------------------------------------------------
# parametric polygon classes
# ---------------------------------------------------------------------------


def _sliver(t: float) -> np.ndarray:
    apex = np.array([0.5, 0.95])
    theta = (math.pi / 3.0) * (1.0 - 0.99 * t)
    dx = 0.9 * math.sin(theta / 2.0)
    dy = 0.9 * math.cos(theta / 2.0)
    return np.array([apex, [0.5 - dx, 0.95 - dy], [0.5 + dx, 0.95 - dy]])


def _comb(t: float) -> np.ndarray:
    teeth = 8
    w = 0.0375
    g = 0.1 * 10.0 ** (-2.0 * t)
    width = teeth * w + (teeth - 1) * g
    x0 = (1.0 - width) / 2.0
    y_base, y_top, y_tip = 0.05, 0.35, 0.95
    pts = [(x0, y_base), (x0 + width, y_base), (x0 + width, y_tip)]
    # walk the teeth from right to left; the outer tooth walls are flush
    # with the base sides and run the full height
    x = x0 + width
    for k in range(teeth):
        x -= w
        pts.append((x, y_tip))
        if k < teeth - 1:
            pts.append((x, y_top))
            x -= g
            pts.append((x, y_top))
            pts.append((x, y_tip))
    # the walk ends at (x0, y_tip); the loop closes down the left wall
    return np.array(pts)


def _star(t: float) -> np.ndarray:
    rho = 0.5 * (1.0 - 0.998 * t)
    pts = []
    for k in range(8):
        a_out = 2.0 * math.pi * k / 8.0
        a_in = a_out + math.pi / 8.0
        pts.append((0.5 + 0.5 * math.cos(a_out), 0.5 + 0.5 * math.sin(a_out)))
        pts.append((0.5 + rho * math.cos(a_in), 0.5 + rho * math.sin(a_in)))
    return np.array(pts)


def _maze(t: float) -> np.ndarray:
    d = 0.45 * t if t <= 0.5 else 0.225 + 0.35 * (t - 0.5)
    return np.array([
        [0.05, 0.05],        # A
        [0.95, 0.05],        # B
        [0.95, 0.95],        # C
        [0.50, 0.95],        # D
        [0.50, 0.80],        # N: top of the slit wall
        [0.50 + d, 0.65],    # F: occluder flap tip
        [0.50, 0.50],        # G: bottom of the slit wall
        [0.05, 0.50],        # H
    ])


def _ngon_collapse(t: float) -> np.ndarray:
    r = 0.45
    pts = [(0.5 + r * math.cos(2.0 * math.pi * k / 16.0),
            0.5 + r * math.sin(2.0 * math.pi * k / 16.0)) for k in range(16)]
    v0 = np.array(pts[0])
    v1 = np.array(pts[1])
    mid = (v0 + v1) / 2.0
    direction = (v1 - v0) / np.linalg.norm(v1 - v0)
    ell = np.linalg.norm(v1 - v0) * 10.0 ** (-3.0 * t)
    pts[0] = tuple(mid - 0.5 * ell * direction)
    pts[1] = tuple(mid + 0.5 * ell * direction)
    return np.array(pts)


_CLASS_BUILDERS = {
    "sliver": _sliver,
    "comb": _comb,
    "star": _star,
    "maze": _maze,
    "ngon_collapse": _ngon_collapse,
}


def instantiate_parametric(class_id: str, t: float) -> Polygon2:
    """Instantiate a parametric polygon class at parameter t in [0, 1]."""
    if class_id not in _CLASS_BUILDERS:
        raise ValueError(f"unknown parametric class {class_id!r}; "
                         f"registered: {', '.join(PARAMETRIC_CLASSES)}")
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"parameter t must lie in [0, 1], got {t}")
    return Polygon2(_CLASS_BUILDERS[class_id](t))


def random_polygon(seed: int, n: int) -> Polygon2:
    """Star-shaped polygon with n vertices: sorted random angles around
    (0.5, 0.5), radii uniform in [0.2, 0.5]. Deterministic in (seed, n).

    Angle draws are rejected until every consecutive gap (including the
    wrap-around) is below pi - 0.05 and above 1e-3, which keeps the center
    inside the kernel and the vertices well separated.
    """
    if n < 3:
        raise ValueError(f"a polygon needs at least 3 vertices, got {n}")
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=n))
        gaps = np.diff(angles, append=angles[0] + 2.0 * math.pi)
        if gaps.max() < math.pi - 0.05 and gaps.min() > 1e-3:
            break
    else:  # pragma: no cover - astronomically unlikely for sane n
        raise RuntimeError("could not draw acceptable polygon angles")
    radii = rng.uniform(0.2, 0.5, size=n)
    verts = np.column_stack([0.5 + radii * np.cos(angles),
                             0.5 + radii * np.sin(angles)])
    return Polygon2(verts)


# ---------------------------------------------------------------------------
# sources, placements, configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolygonSource:
    """Where a seed polygon comes from: a parametric class, a seeded random
    draw, or a mesh file (cell 0 of the file is the polygon)."""

    kind: str
    class_id: str | None = None
    seed: int | None = None
    n: int | None = None
    path: str | None = None

    def __post_init__(self):
        if self.kind == "parametric":
            if self.class_id not in _CLASS_BUILDERS:
                raise ValueError(f"unknown parametric class {self.class_id!r}")
        elif self.kind == "random":
            if self.seed is None or self.n is None:
                raise ValueError("random source needs seed and vertex count")
            if self.n < 3:
                raise ValueError("random source needs at least 3 vertices")
        elif self.kind == "file":
            if not self.path:
                raise ValueError("file source needs a path")
        else:
            raise ValueError(f"unknown source kind {self.kind!r}")

    @classmethod
    def parametric(cls, class_id: str) -> "PolygonSource":
        return cls(kind="parametric", class_id=class_id)

    @classmethod
    def random(cls, seed: int, n: int) -> "PolygonSource":
        return cls(kind="random", seed=int(seed), n=int(n))

    @classmethod
    def file(cls, path: str) -> "PolygonSource":
        return cls(kind="file", path=str(path))

    def __str__(self) -> str:
        if self.kind == "parametric":
            return f"parametric:{self.class_id}"
        if self.kind == "random":
            return f"random:{self.seed}:{self.n}"
        return f"file:{self.path}"

    @classmethod
    def from_string(cls, text: str) -> "PolygonSource":
        kind, _, rest = text.partition(":")
        if kind == "parametric" and rest:
            return cls.parametric(rest)
        if kind == "random":
            parts = rest.split(":")
            if len(parts) == 2:
                return cls.random(int(parts[0]), int(parts[1]))
        if kind == "file" and rest:
            return cls.file(rest)
        raise ValueError(f"unparseable polygon source {text!r}")


def source_polygon(source: PolygonSource, t: float = 0.0) -> Polygon2:
    """Resolve a source to a concrete polygon; t matters only for
    parametric sources (random/file polygons are constant in t)."""
    if source.kind == "parametric":
        return instantiate_parametric(source.class_id, t)
    if source.kind == "random":
        return random_polygon(source.seed, source.n)
    from . import io as _io  # deferred: io imports mesh, not meshgen

    mesh = _io.read_mesh(source.path)
    return mesh.cell_polygon(0)


@dataclass(frozen=True)
class Placement:
    """One seed polygon on the canvas: what to place and where."""

    source: PolygonSource
    x: float = 0.5
    y: float = 0.5
    scale: float = 1.0
    rotation_deg: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("placement position must be finite")
        if not (math.isfinite(self.scale) and self.scale > 0.0):
            raise ValueError(f"placement scale must be > 0, got {self.scale}")
        if not math.isfinite(self.rotation_deg):
            raise ValueError("placement rotation must be finite")


@dataclass(frozen=True)
class TriangulationParams:
    max_area: float | None = None
    min_angle: float | None = None

    def __post_init__(self):
        if self.max_area is not None and not self.max_area > 0.0:
            raise ValueError(f"max_area must be > 0, got {self.max_area}")
        if self.min_angle is not None and not 0.0 < self.min_angle <= 30.0:
            raise ValueError(
                f"min_angle must lie in (0, 30] degrees, got {self.min_angle}")


@dataclass(frozen=True)
class GenerationConfig:
    placements: tuple[Placement, ...]
    num_meshes: int = 1
    triangulation: TriangulationParams = field(default_factory=TriangulationParams)
    mirroring: bool = False
    aggregate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))
        if self.num_meshes < 1:
            raise ValueError(f"num_meshes must be >= 1, got {self.num_meshes}")


@dataclass(frozen=True)
class Dataset:
    config: GenerationConfig
    meshes: tuple[PolygonalMesh, ...]
    t_values: tuple[float, ...]

    def __post_init__(self):
        if len(self.meshes) != len(self.t_values):
            raise ValueError("one t value per mesh required")

    def __len__(self) -> int:
        return len(self.meshes)


# ---------------------------------------------------------------------------
# placement
# ---------------------------------------------------------------------------


def place(p: Polygon2, placement: Placement,
          placed: tuple[Polygon2, ...] = ()) -> Polygon2:
    """Scale p about its centroid, rotate, translate the centroid to the
    placement position; validate canvas containment and disjointness from
    the already placed polygons."""
    c = p.centroid
    phi = math.radians(placement.rotation_deg)
    rot = np.array([[math.cos(phi), -math.sin(phi)],
                    [math.sin(phi), math.cos(phi)]])
    rel = (p.vertices - np.array([c.x, c.y])) * placement.scale
    verts = rel @ rot.T + np.array([placement.x, placement.y])
    lo, hi = verts.min(), verts.max()
    if lo < PLACEMENT_EPS or hi > 1.0 - PLACEMENT_EPS:
        raise ValueError(
            f"placement of {placement.source} leaves the canvas "
            f"(coordinates span [{lo:.6g}, {hi:.6g}])")
    result = Polygon2(verts)
    for other in placed:
        if _polygons_overlap(result, other):
            raise ValueError(
                f"placement of {placement.source} overlaps another polygon")
    return result


def _polygons_overlap(a: Polygon2, b: Polygon2) -> bool:
    va, vb = a.vertices, b.vertices
    axl, ayl, axh, ayh = a.bbox()
    bxl, byl, bxh, byh = b.bbox()
    if axh < bxl or bxh < axl or ayh < byl or byh < ayl:
        return False
    for i in range(len(va)):
        p1, p2 = va[i], va[(i + 1) % len(va)]
        for j in range(len(vb)):
            q1, q2 = vb[j], vb[(j + 1) % len(vb)]
            if segments_intersect(p1, p2, q1, q2, eps=WELD_EPS):
                return True
    return point_in_polygon(va[0], vb) or point_in_polygon(vb[0], va)


# ---------------------------------------------------------------------------
# exterior triangulation
# ---------------------------------------------------------------------------


def triangulate_exterior(placed, params: TriangulationParams | None = None,
                         max_points: int = 100_000) -> PolygonalMesh:
    """Fill the canvas area not covered by the placed polygons with
    triangles; the polygons become single cells tagged seed-polygon.

    Refinement may split seed boundary edges; the split points are stitched
    into the seed cell loops so the mesh stays conforming.
    """
    params = params or TriangulationParams()
    polys = [p if isinstance(p, Polygon2) else Polygon2(p) for p in placed]
    points = [tuple(v) for v in CANVAS]
    segments = [(0, 1), (1, 2), (2, 3), (3, 0)]
    seed_edge_ranges = []
    for poly in polys:
        base = len(points)
        nv = poly.n
        points.extend(tuple(v) for v in poly.vertices)
        first_seg = len(segments)
        segments.extend((base + i, base + (i + 1) % nv) for i in range(nv))
        seed_edge_ranges.append(range(first_seg, first_seg + nv))

    res = triangulate_pslg(points, segments, CANVAS,
                           holes=[p.vertices for p in polys],
                           max_area=params.max_area,
                           min_angle_deg=params.min_angle,
                           max_points=max_points)

    cells: list[tuple[int, ...]] = []
    tags: list[str] = []
    for edge_range in seed_edge_ranges:
        loop: list[int] = []
        for k in edge_range:
            loop.extend(res.segment_chains[k][:-1])
        cells.append(tuple(loop))
        tags.append("seed-polygon")
    for tri in res.triangles:
        cells.append(tuple(int(v) for v in tri))
        tags.append("filler-triangle")

    mesh = PolygonalMesh(vertices=res.points, cells=tuple(cells), tags=tuple(tags))
    covered = mesh.total_area()
    if abs(covered - 1.0) > 1e-9:
        raise RuntimeError(
            f"triangulation lost area: cells cover {covered!r} of the canvas")
    return mesh


# ---------------------------------------------------------------------------
# mirroring
# ---------------------------------------------------------------------------


def mirror(m: PolygonalMesh) -> PolygonalMesh:
    """Reflect the mesh across x=1 and y=1 into a 2x2 tiling, weld the
    duplicated vertices on the mirror lines (1e-9), scale by 1/2 back onto
    the unit canvas. Output has exactly 4x the input cell count."""
    transforms = (
        (lambda x, y: (x, y), False),
        (lambda x, y: (2.0 - x, y), True),
        (lambda x, y: (x, 2.0 - y), True),
        (lambda x, y: (2.0 - x, 2.0 - y), False),
    )
    coords: list[tuple[float, float]] = []
    index: dict[tuple[int, int], int] = {}
    cells: list[tuple[int, ...]] = []
    tags: list[str] = []

    def vertex_id(x: float, y: float) -> int:
        key = (round(x / WELD_EPS), round(y / WELD_EPS))
        vid = index.get(key)
        if vid is None:
            vid = len(coords)
            index[key] = vid
            coords.append((x, y))
        return vid

    for fn, flips in transforms:
        for cell, tag in zip(m.cells, m.tags):
            ids = [vertex_id(*fn(m.vertices[v][0], m.vertices[v][1]))
                   for v in cell]
            if flips:
                ids.reverse()
            cells.append(tuple(ids))
            tags.append(tag)
    verts = np.array(coords) / 2.0
    return PolygonalMesh(vertices=verts, cells=tuple(cells), tags=tuple(tags))


# ---------------------------------------------------------------------------
# aggregation
# ---------------------------------------------------------------------------


def _region_boundary(cells: list[tuple[int, ...]]) -> tuple[int, ...] | None:
    """Boundary loop of a union of cells, or None if the union is not a
    simple polygon (holes, pinch vertices, or disconnection)."""
    directed = []
    for cell in cells:
        for i in range(len(cell)):
            directed.append((cell[i], cell[(i + 1) % len(cell)]))
    seen = set(directed)
    boundary = [(u, v) for (u, v) in directed if (v, u) not in seen]
    succ: dict[int, int] = {}
    for u, v in boundary:
        if u in succ:
            return None  # pinch vertex: two boundary edges leave u
        succ[u] = v
    if not succ:
        return None
    start = min(succ)
    loop = [start]
    cur = succ[start]
    while cur != start:
        loop.append(cur)
        nxt = succ.get(cur)
        if nxt is None or len(loop) > len(boundary):
            return None
        cur = nxt
    if len(loop) != len(boundary):
        return None  # more than one loop: a hole or a split region
    return tuple(loop)


def aggregate(m: PolygonalMesh) -> PolygonalMesh:
    """Greedily merge filler triangles into larger simple polygonal cells
    whose diameter stays at most D* = the smallest seed polygon diameter.

    Regions grow over shared edges; each step adds the unassigned neighbour
    that minimizes the grown region's diameter (ties: lowest cell id) and
    keeps the union a simple polygon. Merged cells are tagged aggregated;
    single leftover triangles keep the filler-triangle tag.
    """
    seed_ids = [i for i, tag in enumerate(m.tags) if tag == "seed-polygon"]
    if not seed_ids:
        raise ValueError("diameter bound undefined: mesh has no seed polygon")
    filler_ids = [i for i, tag in enumerate(m.tags) if tag == "filler-triangle"]
    if not filler_ids:
        return m
    d_star = min(m.cell_polygon(i).diameter for i in seed_ids)

    edge_cells: dict[tuple[int, int], list[int]] = {}
    for i in filler_ids:
        cell = m.cells[i]
        for k in range(len(cell)):
            u, v = cell[k], cell[(k + 1) % len(cell)]
            edge_cells.setdefault((u, v) if u < v else (v, u), []).append(i)

    def neighbours(ci: int):
        cell = m.cells[ci]
        out = set()
        for k in range(len(cell)):
            u, v = cell[k], cell[(k + 1) % len(cell)]
            for other in edge_cells.get((u, v) if u < v else (v, u), ()):
                if other != ci:
                    out.add(other)
        return out

    def grown_diameter(base_diam: float, base_ids: set[int],
                       new_ids: set[int]) -> float:
        added = sorted(new_ids - base_ids)
        if not added:
            return base_diam
        new_pts = m.vertices[added]
        old_pts = m.vertices[sorted(base_ids)]
        cross = np.linalg.norm(new_pts[:, None, :] - old_pts[None, :, :],
                               axis=2).max()
        within = 0.0
        if len(new_pts) > 1:
            within = np.linalg.norm(
                new_pts[:, None, :] - new_pts[None, :, :], axis=2).max()
        return max(base_diam, float(cross), float(within))

    # first region starts at the triangle touching the smallest-id seed
    start = None
    seed_cell = m.cells[seed_ids[0]]
    seed_edges = {((seed_cell[k], seed_cell[(k + 1) % len(seed_cell)])
                   if seed_cell[k] < seed_cell[(k + 1) % len(seed_cell)]
                   else (seed_cell[(k + 1) % len(seed_cell)], seed_cell[k]))
                  for k in range(len(seed_cell))}
    touching = sorted(ci for e in seed_edges for ci in edge_cells.get(e, ()))
    if touching:
        start = touching[0]

    assigned: set[int] = set()
    regions: list[tuple[list[int], tuple[int, ...]]] = []  # (cells, loop)
    todo = sorted(filler_ids)
    while True:
        if start is None:
            remaining = [ci for ci in todo if ci not in assigned]
            if not remaining:
                break
            start = remaining[0]
        region = [start]
        assigned.add(start)
        verts: set[int] = set(m.cells[start])
        diam = grown_diameter(0.0, {next(iter(verts))}, verts)
        while True:
            cand = set()
            for ci in region:
                cand.update(n for n in neighbours(ci) if n not in assigned)
            scored = sorted(
                ((grown_diameter(diam, verts, set(m.cells[n])), n)
                 for n in cand),
                key=lambda s: (s[0], s[1]))
            grown = False
            for cand_diam, n in scored:
                if cand_diam > d_star:
                    break  # sorted: everything after is at least as wide
                loop = _region_boundary([m.cells[ci] for ci in region]
                                        + [m.cells[n]])
                if loop is None:
                    continue
                region.append(n)
                assigned.add(n)
                verts |= set(m.cells[n])
                diam = cand_diam
                grown = True
                break
            if not grown:
                break
        loop = (_region_boundary([m.cells[ci] for ci in region])
                if len(region) > 1 else m.cells[region[0]])
        if loop is None:  # pragma: no cover - growth preserves simplicity
            raise RuntimeError("aggregated region lost simplicity")
        regions.append((region, tuple(loop)))
        start = None

    cells: list[tuple[int, ...]] = []
    tags: list[str] = []
    for cell, tag in zip(m.cells, m.tags):
        if tag != "filler-triangle":
            cells.append(cell)
            tags.append(tag)
    for region, loop in regions:
        cells.append(loop)
        tags.append("aggregated" if len(region) > 1 else "filler-triangle")
    return PolygonalMesh(vertices=m.vertices, cells=tuple(cells), tags=tuple(tags))


# ---------------------------------------------------------------------------
# dataset generation
# ---------------------------------------------------------------------------


def generate_dataset(config: GenerationConfig) -> Dataset:
    """Build the mesh family M(t_0), ..., M(t_{n-1}) for the config.

    t values are uniformly spaced over [0, 1] (a single mesh gets t=0).
    Parametric sources are re-instantiated per t; random and file sources
    are constant across the family. Deterministic for a fixed config.
    """
    n = config.num_meshes
    t_values = tuple(i / (n - 1) for i in range(n)) if n > 1 else (0.0,)
    meshes = []
    for mi, t in enumerate(t_values):
        try:
            placed: list[Polygon2] = []
            for placement in config.placements:
                poly = source_polygon(placement.source, t)
                placed.append(place(poly, placement, tuple(placed)))
            mesh = triangulate_exterior(placed, config.triangulation)
            if config.mirroring:
                mesh = mirror(mesh)
            if config.aggregate:
                mesh = aggregate(mesh)
        except ValueError as exc:
            raise ValueError(f"mesh {mi} (t={t:.6g}): {exc}") from exc
        meshes.append(mesh)
    return Dataset(config=config, meshes=tuple(meshes), t_values=t_values)


def family_config(class_id: str, num_meshes: int = 10,
                  mirroring: bool = False, aggregate: bool = False) -> GenerationConfig:
    """Standard single-seed family configuration for a parametric class:
    centered placement at scale 0.8 with the class's refinement bounds."""
    if class_id not in _CLASS_BUILDERS:
        raise ValueError(f"unknown parametric class {class_id!r}")
    tri = FAMILY_TRIANGULATION[class_id]
    return GenerationConfig(
        placements=(Placement(source=PolygonSource.parametric(class_id),
                              x=0.5, y=0.5, scale=0.8),),
        num_meshes=num_meshes,
        triangulation=TriangulationParams(**tri),
        mirroring=mirroring,
        aggregate=aggregate,
    )


# ---------------------------------------------------------------------------
# structured grids (test and benchmark helpers)
# ---------------------------------------------------------------------------


def square_grid(n: int) -> PolygonalMesh:
    """n x n grid of unit-canvas squares (cells tagged seed-polygon)."""
    if n < 1:
        raise ValueError("grid needs n >= 1")
    xs = np.linspace(0.0, 1.0, n + 1)
    verts = np.array([(x, y) for y in xs for x in xs])
    cells = []
    for j in range(n):
        for i in range(n):
            v = j * (n + 1) + i
            cells.append((v, v + 1, v + n + 2, v + n + 1))
    return PolygonalMesh(vertices=verts, cells=tuple(cells),
                         tags=("seed-polygon",) * len(cells))


def triangle_grid(n: int) -> PolygonalMesh:
    """n x n grid of squares split into right triangles (filler-triangle)."""
    if n < 1:
        raise ValueError("grid needs n >= 1")
    xs = np.linspace(0.0, 1.0, n + 1)
    verts = np.array([(x, y) for y in xs for x in xs])
    cells = []
    for j in range(n):
        for i in range(n):
            v = j * (n + 1) + i
            cells.append((v, v + 1, v + n + 2))
            cells.append((v, v + n + 2, v + n + 1))
    return PolygonalMesh(vertices=verts, cells=tuple(cells),
                         tags=("filler-triangle",) * len(cells))
