"""Constrained Delaunay triangulation with Ruppert-style refinement.

Purpose
-------
Triangulate the region between a rectangular outer boundary and a set of
polygonal holes (the placed mesh polygons), honouring every input segment,
with optional quality refinement:

* ``max_area``  — split any in-domain triangle larger than the bound,
* ``min_angle_deg`` — split any in-domain triangle with a smaller angle.

The engine is an incremental Bowyer-Watson Delaunay triangulation over a
far-away bounding frame. Input segments are recovered and kept conforming
through diametral-circle (Gabriel) splitting; bad triangles are fixed by
circumcentre insertion with the usual encroachment deferral. Splits next to
input vertices snap to concentric power-of-two shells, which stops the
ping-pong cascade between segments that meet at a small angle.

Determinism: insertion order is a pure function of the input, so repeated
runs produce identical vertex arrays bit for bit.

Notes
-----
Predicates (orientation, in-circle) use floating point with an exact
rational fallback near zero, so near-degenerate configurations (the needle
polygons this package generates) are handled without tie-breaking noise.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import point_in_polygon

logger = logging.getLogger(__name__)


class RefinementError(ValueError):
    """Refinement could not terminate within the vertex budget."""


class _DuplicatePoint(Exception):
    """A point to be inserted coincides with an existing vertex."""

    def __init__(self, vertex: int):
        super().__init__(f"duplicate of vertex {vertex}")
        self.vertex = vertex


# ---------------------------------------------------------------------------
# predicates: float fast path, exact rational fallback near zero
# ---------------------------------------------------------------------------


def _orient2d(ax, ay, bx, by, cx, cy) -> float:
    d1 = (bx - ax) * (cy - ay)
    d2 = (by - ay) * (cx - ax)
    det = d1 - d2
    mag = abs(d1) + abs(d2)
    if abs(det) > 1e-12 * mag or mag == 0.0:
        return det
    fa = (Fraction(bx) - Fraction(ax)) * (Fraction(cy) - Fraction(ay))
    fb = (Fraction(by) - Fraction(ay)) * (Fraction(cx) - Fraction(ax))
    fd = fa - fb
    return float(np.sign(fd.numerator)) if fd != 0 else 0.0


def _incircle(ax, ay, bx, by, cx, cy, px, py) -> float:
    """> 0 when p lies strictly inside the circumcircle of CCW triangle abc."""
    adx, ady = ax - px, ay - py
    bdx, bdy = bx - px, by - py
    cdx, cdy = cx - px, cy - py
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    t1 = ad * (bdx * cdy - bdy * cdx)
    t2 = bd * (adx * cdy - ady * cdx)
    t3 = cd * (adx * bdy - ady * bdx)
    det = t1 - t2 + t3
    mag = abs(t1) + abs(t2) + abs(t3)
    if abs(det) > 1e-10 * mag or mag == 0.0:
        return det
    fax, fay = Fraction(ax) - Fraction(px), Fraction(ay) - Fraction(py)
    fbx, fby = Fraction(bx) - Fraction(px), Fraction(by) - Fraction(py)
    fcx, fcy = Fraction(cx) - Fraction(px), Fraction(cy) - Fraction(py)
    fa = fax * fax + fay * fay
    fb = fbx * fbx + fby * fby
    fc = fcx * fcx + fcy * fcy
    fdet = fa * (fbx * fcy - fby * fcx) - fb * (fax * fcy - fay * fcx) + fc * (fax * fby - fay * fbx)
    return float(np.sign(fdet.numerator)) if fdet != 0 else 0.0


# ---------------------------------------------------------------------------
# incremental Bowyer-Watson Delaunay triangulation
# ---------------------------------------------------------------------------


class _Triangulation:
    """Mutable Delaunay triangulation over a far-away bounding frame."""

    def __init__(self, lo=(-10.0, -10.0), hi=(11.0, 11.0)):
        self.px: list[float] = [lo[0], hi[0], hi[0], lo[0]]
        self.py: list[float] = [lo[1], lo[1], hi[1], hi[1]]
        self.frame = (0, 1, 2, 3)
        self.tris: dict[int, tuple[int, int, int]] = {}
        self.edge_tris: dict[tuple[int, int], list[int]] = {}
        self._next_tid = 0
        self._hint = None
        self._add_tri(0, 1, 2)
        self._add_tri(0, 2, 3)

    # -- topology bookkeeping

    def _add_tri(self, a, b, c) -> int:
        tid = self._next_tid
        self._next_tid += 1
        self.tris[tid] = (a, b, c)
        for u, v in ((a, b), (b, c), (c, a)):
            key = (u, v) if u < v else (v, u)
            self.edge_tris.setdefault(key, []).append(tid)
        return tid

    def _remove_tri(self, tid):
        a, b, c = self.tris.pop(tid)
        for u, v in ((a, b), (b, c), (c, a)):
            key = (u, v) if u < v else (v, u)
            lst = self.edge_tris[key]
            lst.remove(tid)
            if not lst:
                del self.edge_tris[key]

    def has_edge(self, u, v) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_tris

    def edge_apexes(self, u, v) -> list[int]:
        """Vertices opposite edge (u, v) in its adjacent triangles."""
        key = (u, v) if u < v else (v, u)
        out = []
        for tid in self.edge_tris.get(key, ()):
            for w in self.tris[tid]:
                if w != u and w != v:
                    out.append(w)
        return out

    # -- geometric queries

    def _orient_idx(self, i, j, px, py) -> float:
        return _orient2d(self.px[i], self.py[i], self.px[j], self.py[j], px, py)

    def _locate(self, px, py, hint: int | None = None) -> int:
        """Walk from a hint triangle to one containing (px, py)."""
        tid = hint if hint in self.tris else self._hint
        if tid not in self.tris:
            tid = next(iter(self.tris))
        seen = 0
        limit = 4 * (len(self.tris) + 8)
        while True:
            a, b, c = self.tris[tid]
            moved = False
            for u, v in ((a, b), (b, c), (c, a)):
                if self._orient_idx(u, v, px, py) < 0.0:
                    key = (u, v) if u < v else (v, u)
                    nxt = [t for t in self.edge_tris[key] if t != tid]
                    if nxt:
                        tid = nxt[0]
                        moved = True
                        break
                    # walked out of the frame: numerically impossible inputs
                    raise ValueError(f"point ({px}, {py}) lies outside the frame")
            if not moved:
                return tid
            seen += 1
            if seen > limit:  # cycle guard; fall back to exhaustive scan
                for t, (a, b, c) in sorted(self.tris.items()):
                    if (self._orient_idx(a, b, px, py) >= 0.0
                            and self._orient_idx(b, c, px, py) >= 0.0
                            and self._orient_idx(c, a, px, py) >= 0.0):
                        return t
                raise ValueError(f"point ({px}, {py}) not located in any triangle")

    def insert(self, px, py, hint: int | None = None) -> int:
        """Insert one point, rebuild the Bowyer-Watson cavity, return its index.

        Raises _DuplicatePoint when (px, py) coincides (within 1e-12) with a
        vertex of the containing triangle or of its edge neighbours.
        """
        start = self._locate(px, py, hint)
        near = set(self.tris[start])
        for u, v in ((0, 1), (1, 2), (2, 0)):
            a, b = self.tris[start][u], self.tris[start][v]
            near.update(self.edge_apexes(a, b))
        for w in near:
            if (self.px[w] - px) ** 2 + (self.py[w] - py) ** 2 < 1e-24:
                raise _DuplicatePoint(w)
        # grow the cavity of triangles whose circumcircle contains p
        cavity = {start}
        stack = [start]
        while stack:
            tid = stack.pop()
            a, b, c = self.tris[tid]
            for u, v in ((a, b), (b, c), (c, a)):
                key = (u, v) if u < v else (v, u)
                for nb in self.edge_tris[key]:
                    if nb in cavity:
                        continue
                    na, nbv, nc = self.tris[nb]
                    if _incircle(self.px[na], self.py[na], self.px[nbv], self.py[nbv],
                                 self.px[nc], self.py[nc], px, py) > 0.0:
                        cavity.add(nb)
                        stack.append(nb)
        # boundary = directed edges of cavity triangles whose twin is outside
        boundary = []
        removed_edges = set()
        for tid in cavity:
            a, b, c = self.tris[tid]
            for u, v in ((a, b), (b, c), (c, a)):
                key = (u, v) if u < v else (v, u)
                twins = [t for t in self.edge_tris[key] if t != tid]
                if not twins or twins[0] not in cavity:
                    boundary.append((u, v))
                else:
                    removed_edges.add(key)
        for tid in sorted(cavity):
            self._remove_tri(tid)
        self.px.append(px)
        self.py.append(py)
        pi = len(self.px) - 1
        last = None
        for u, v in boundary:
            last = self._add_tri(pi, u, v)
        self._hint = last
        self._removed_edges = removed_edges  # for segment-integrity checks
        return pi

    def point(self, i) -> tuple[float, float]:
        return self.px[i], self.py[i]

    def real_triangles(self) -> list[tuple[int, tuple[int, int, int]]]:
        """Triangles not touching the bounding frame, id-ordered."""
        f = set(self.frame)
        return [(tid, t) for tid, t in sorted(self.tris.items()) if not (set(t) & f)]


def delaunay_triangulation(points) -> np.ndarray:
    """Plain Delaunay triangulation of a point set; (m, 3) CCW index array.

    The union of the returned triangles is the convex hull of the points
    (the bounding frame sits far enough out not to steal hull edges).
    """
    pts = np.asarray(points, dtype=float)
    lo = pts.min(axis=0) - 1.0
    hi = pts.max(axis=0) + 1.0
    span = max(hi[0] - lo[0], hi[1] - lo[1])
    dt = _Triangulation(lo=(lo[0] - 999.0 * span, lo[1] - 999.0 * span),
                        hi=(hi[0] + 999.0 * span, hi[1] + 999.0 * span))
    index = {}
    for k, (x, y) in enumerate(pts):
        try:
            index[dt.insert(float(x), float(y))] = k
        except _DuplicatePoint as exc:
            raise ValueError(f"duplicate point at index {k}") from exc
    tris = [tuple(index[i] for i in t) for _, t in dt.real_triangles()]
    return np.array(tris, dtype=int).reshape(-1, 3)


# ---------------------------------------------------------------------------
# Ruppert refinement over a PSLG (outer rectangle + polygonal holes)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RefinementResult:
    """Vertices, in-domain triangles and per-input-segment vertex chains."""

    points: np.ndarray          # (n, 2); input points first, Steiner appended
    triangles: np.ndarray       # (m, 3) CCW, in-domain only
    segment_chains: tuple[tuple[int, ...], ...]  # one ordered chain per input segment


class _Refiner:
    def __init__(self, points, segments, outer, holes, max_points):
        self.input_pts = [(float(x), float(y)) for x, y in points]
        self.outer = np.asarray(outer, dtype=float)
        self.holes = [np.asarray(h, dtype=float) for h in holes]
        self.max_points = int(max_points)

        pts = np.asarray(points, dtype=float)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = max(hi[0] - lo[0], hi[1] - lo[1], 1e-3)
        self.dt = _Triangulation(lo=(lo[0] - 9.0 * span, lo[1] - 9.0 * span),
                                 hi=(hi[0] + 9.0 * span, hi[1] + 9.0 * span))
        self.vmap: list[int] = []   # dt vertex index per logical point id
        self._dt_to_lid: dict[int, int] = {}
        for x, y in self.input_pts:
            try:
                di = self.dt.insert(x, y)
            except _DuplicatePoint as exc:
                raise ValueError(f"duplicate input point ({x}, {y})") from exc
            self._dt_to_lid[di] = len(self.vmap)
            self.vmap.append(di)
        self.n_input = len(self.input_pts)

        # chains[k] = ordered logical vertex ids along input segment k
        self.chains: list[list[int]] = [[int(a), int(b)] for a, b in segments]
        # flat coordinate index over live subsegments for vectorised
        # encroachment scans (coordinates never move once created)
        self._sub_pairs: list[tuple[int, int, int]] = []
        self._sub_ax: list[float] = []
        self._sub_ay: list[float] = []
        self._sub_bx: list[float] = []
        self._sub_by: list[float] = []
        self._sub_alive: list[bool] = []
        self._pair_sid: dict[tuple[int, int, int], int] = {}
        # queue entries are (chain, a, b) vertex pairs: positions shift on splits
        self.seg_queue: deque[tuple[int, int, int]] = deque()
        for k, ch in enumerate(self.chains):
            self._register_sub(k, ch[0], ch[1])
            self.seg_queue.append((k, ch[0], ch[1]))

    # -- logical/dt coordinate helpers

    def _xy(self, lid: int) -> tuple[float, float]:
        di = self.vmap[lid]
        return self.dt.px[di], self.dt.py[di]

    def _new_point(self, x, y) -> int:
        if len(self.vmap) >= self.max_points:
            n_subs = sum(len(ch) - 1 for ch in self.chains)
            raise RefinementError(
                f"refinement exceeded the vertex budget ({self.max_points} points, "
                f"{n_subs} boundary subsegments); relax max_area/min_angle or "
                "raise max_points")
        di = self.dt.insert(x, y)
        self._dt_to_lid[di] = len(self.vmap)
        self.vmap.append(di)
        lid = len(self.vmap) - 1
        self._scan_encroach_by_point(x, y)
        return lid

    # -- subsegment management

    def _register_sub(self, k: int, a: int, b: int):
        sid = len(self._sub_pairs)
        ax, ay = self._xy(a)
        bx, by = self._xy(b)
        self._sub_pairs.append((k, a, b))
        self._sub_ax.append(ax)
        self._sub_ay.append(ay)
        self._sub_bx.append(bx)
        self._sub_by.append(by)
        self._sub_alive.append(True)
        self._pair_sid[(k, a, b)] = sid

    def _kill_sub(self, k: int, a: int, b: int):
        sid = self._pair_sid.pop((k, a, b), None)
        if sid is not None:
            self._sub_alive[sid] = False

    def _diametral_hits(self, x, y) -> list[tuple[int, int, int]]:
        """Live subsegments whose open diametral circle contains (x, y)."""
        ax = np.array(self._sub_ax)
        ay = np.array(self._sub_ay)
        bx = np.array(self._sub_bx)
        by = np.array(self._sub_by)
        dot = (ax - x) * (bx - x) + (ay - y) * (by - y)
        scale = (bx - ax) ** 2 + (by - ay) ** 2
        hit = (dot < -1e-14 * scale) & np.array(self._sub_alive)
        return [self._sub_pairs[i] for i in np.nonzero(hit)[0]]

    def _find_sub(self, k: int, a: int, b: int) -> int | None:
        """Position of live subsegment (a, b) in chain k, else None."""
        if (k, a, b) not in self._pair_sid:
            return None
        ch = self.chains[k]
        for i in range(len(ch) - 1):
            if ch[i] == a and ch[i + 1] == b:
                return i
        return None

    def _scan_encroach_by_point(self, x, y):
        """Queue every subsegment whose diametral circle contains (x, y)."""
        self.seg_queue.extend(self._diametral_hits(x, y))

    def _is_encroached(self, k: int, i: int, recover_only: bool = False) -> bool:
        ch = self.chains[k]
        a, b = ch[i], ch[i + 1]
        da, db = self.vmap[a], self.vmap[b]
        if not self.dt.has_edge(da, db):
            return True  # missing from the triangulation: force recovery
        if recover_only:
            return False
        ax, ay = self._xy(a)
        bx, by = self._xy(b)
        scale = (bx - ax) ** 2 + (by - ay) ** 2
        for w in self.dt.edge_apexes(da, db):
            wx, wy = self.dt.px[w], self.dt.py[w]
            if (ax - wx) * (bx - wx) + (ay - wy) * (by - wy) < -1e-14 * scale:
                return True
        return False

    def _split_position(self, k: int, i: int) -> tuple[float, float]:
        """Midpoint, or a power-of-two shell radius off an input vertex."""
        ch = self.chains[k]
        a, b = ch[i], ch[i + 1]
        ax, ay = self._xy(a)
        bx, by = self._xy(b)
        length = math.hypot(bx - ax, by - ay)
        a_in = a < self.n_input
        b_in = b < self.n_input
        if a_in != b_in:
            # exactly one endpoint is an original vertex: concentric shells
            ox, oy = (ax, ay) if a_in else (bx, by)
            ex, ey = (bx, by) if a_in else (ax, ay)
            r = 2.0 ** round(math.log2(length / 2.0))
            t = r / length
            return ox + t * (ex - ox), oy + t * (ey - oy)
        return (ax + bx) / 2.0, (ay + by) / 2.0

    def _split_subsegment(self, k: int, i: int):
        x, y = self._split_position(k, i)
        ch = self.chains[k]
        a, b = ch[i], ch[i + 1]
        ax, ay = self._xy(a)
        bx, by = self._xy(b)
        if math.hypot(x - ax, y - ay) < 1e-12 or math.hypot(x - bx, y - by) < 1e-12:
            raise RefinementError(
                f"subsegment of input segment {k} collapsed below 1e-12 while "
                "splitting; the geometry is too tight for the requested refinement")
        try:
            mid = self._new_point(x, y)
        except _DuplicatePoint as exc:
            # split point lands on a vertex that is already in the mesh
            # (a junction with another segment): stitch that vertex in
            mid = self._dt_to_lid[exc.vertex]
        # the insert may have shifted this chain; relocate before stitching in
        i = self._find_sub(k, a, b)
        if i is None:
            raise RuntimeError("subsegment vanished while being split")
        self.chains[k].insert(i + 1, mid)
        self._kill_sub(k, a, b)
        self._register_sub(k, a, mid)
        self._register_sub(k, mid, b)
        self.seg_queue.append((k, a, mid))
        self.seg_queue.append((k, mid, b))

    def _settle_segments(self, recover_only: bool = False):
        """Split queued subsegments until all are present and unencroached.

        With recover_only, only missing edges are split (conformity without
        the diametral-circle guarantee): enough when no refinement follows.
        """
        while self.seg_queue:
            k, a, b = self.seg_queue.popleft()
            i = self._find_sub(k, a, b)
            if i is None:
                continue  # already split
            if self._is_encroached(k, i, recover_only):
                self._split_subsegment(k, i)

    # -- triangle quality

    def _in_domain(self, a, b, c) -> bool:
        cx = (self.dt.px[a] + self.dt.px[b] + self.dt.px[c]) / 3.0
        cy = (self.dt.py[a] + self.dt.py[b] + self.dt.py[c]) / 3.0
        if not point_in_polygon((cx, cy), self.outer):
            return False
        return not any(point_in_polygon((cx, cy), h) for h in self.holes)

    @staticmethod
    def _tri_area(ax, ay, bx, by, cx, cy) -> float:
        return 0.5 * abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))

    @staticmethod
    def _min_angle(ax, ay, bx, by, cx, cy) -> float:
        la = math.hypot(cx - bx, cy - by)
        lb = math.hypot(cx - ax, cy - ay)
        lc = math.hypot(bx - ax, by - ay)
        angles = []
        for opp, e1, e2 in ((la, lb, lc), (lb, la, lc), (lc, la, lb)):
            cosv = (e1 * e1 + e2 * e2 - opp * opp) / (2.0 * e1 * e2)
            angles.append(math.acos(max(-1.0, min(1.0, cosv))))
        return min(angles)

    def _is_bad(self, tri, max_area, min_angle_rad) -> bool:
        a, b, c = tri
        if not self._in_domain(a, b, c):
            return False
        ax, ay = self.dt.px[a], self.dt.py[a]
        bx, by = self.dt.px[b], self.dt.py[b]
        cx, cy = self.dt.px[c], self.dt.py[c]
        if max_area is not None and self._tri_area(ax, ay, bx, by, cx, cy) > max_area:
            return True
        if min_angle_rad is not None and self._min_angle(ax, ay, bx, by, cx, cy) < min_angle_rad - 1e-12:
            return True
        return False

    def _circumcenter(self, tri) -> tuple[float, float] | None:
        a, b, c = tri
        ax, ay = self.dt.px[a], self.dt.py[a]
        bx, by = self.dt.px[b], self.dt.py[b]
        cx, cy = self.dt.px[c], self.dt.py[c]
        bxr, byr = bx - ax, by - ay
        cxr, cyr = cx - ax, cy - ay
        d = 2.0 * (bxr * cyr - byr * cxr)
        if abs(d) < 1e-300:
            return None
        b2 = bxr * bxr + byr * byr
        c2 = cxr * cxr + cyr * cyr
        ux = (cyr * b2 - byr * c2) / d
        uy = (bxr * c2 - cxr * b2) / d
        return ax + ux, ay + uy

    def refine(self, max_area, min_angle_deg):
        if max_area is None and min_angle_deg is None:
            self._settle_segments(recover_only=True)
            return
        self._settle_segments()
        min_angle_rad = math.radians(min_angle_deg) if min_angle_deg is not None else None
        work: deque[int] = deque(tid for tid, _ in sorted(self.dt.tris.items()))
        while work:
            tid = work.popleft()
            tri = self.dt.tris.get(tid)
            if tri is None or any(v in self.dt.frame for v in tri):
                continue
            if not self._is_bad(tri, max_area, min_angle_rad):
                continue
            cc = self._circumcenter(tri)
            if cc is None:
                logger.warning("skipping a degenerate triangle during refinement")
                continue
            hits = self._diametral_hits(*cc)
            first_new = self.dt._next_tid
            n_before = len(self.vmap)
            if hits:
                # the circumcentre would encroach these: split them instead
                for k, a, b in hits:
                    i = self._find_sub(k, a, b)
                    if i is not None:
                        self._split_subsegment(k, i)
                self._settle_segments()
            else:
                try:
                    self._new_point(*cc)
                except _DuplicatePoint:
                    # cocircular cluster: the circumcentre already exists
                    logger.debug("circumcentre duplicates an existing vertex")
                    continue
                self._settle_segments()
            # triangle ids grow monotonically: requeue whatever was created
            work.extend(t for t in sorted(self.dt.tris) if t >= first_new)
            if self.dt.tris.get(tid) is tri:
                if len(self.vmap) == n_before:
                    # nothing was inserted and the triangle survived: give up
                    # on it rather than loop (stale hits on already-split
                    # segments are the only way here)
                    logger.debug("leaving an unimprovable triangle in place")
                else:
                    work.append(tid)

    def result(self) -> RefinementResult:
        # logical points in insertion order; dt indices shift by the 4 frame points
        pts = np.array([[self.dt.px[d], self.dt.py[d]] for d in self.vmap], dtype=float)
        inv = {d: lid for lid, d in enumerate(self.vmap)}
        tris = []
        for _, (a, b, c) in self.dt.real_triangles():
            if self._in_domain(a, b, c):
                tris.append((inv[a], inv[b], inv[c]))
        chains = tuple(tuple(ch) for ch in self.chains)
        return RefinementResult(points=pts,
                                triangles=np.array(tris, dtype=int).reshape(-1, 3),
                                segment_chains=chains)


def triangulate_pslg(points, segments, outer, holes=(),
                     max_area: float | None = None,
                     min_angle_deg: float | None = None,
                     max_points: int = 100_000) -> RefinementResult:
    """Conforming (refined) triangulation of a segment-bounded domain.

    Parameters
    ----------
    points : (n, 2) array-like
        Input vertices. The first vertices are treated as "original" for
        concentric-shell splitting.
    segments : iterable of (i, j)
        Constraint segments as point-index pairs; all boundary loops (outer
        rectangle and hole polygons) must be covered by these.
    outer : (m, 2) array-like
        The outer boundary loop; triangles outside it are discarded.
    holes : iterable of loops
        Hole polygons; triangles whose centroid falls inside any are
        discarded (their boundary segments stay in the triangulation).
    max_area, min_angle_deg : float, optional
        Quality bounds for the kept (in-domain) triangles.
    max_points : int
        Vertex budget; exceeded budget raises RefinementError.

    Returns
    -------
    RefinementResult with points, CCW in-domain triangles, and the ordered
    vertex chain of every input segment (including split points).
    """
    r = _Refiner(points, segments, outer, holes, max_points)
    r.refine(max_area, min_angle_deg)
    return r.result()
