"""Polygonal mesh container and conformity helpers.

A mesh is a flat vertex table plus per-cell vertex loops (CCW) and a
per-cell provenance tag. Cells may have any arity >= 3; conformity means
every interior edge is shared by exactly two cells and boundary edges by
one.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .geometry import Polygon2, signed_area

logger = logging.getLogger(__name__)

# closed tag vocabulary: how a cell came to be
CELL_TAGS = ("seed-polygon", "filler-triangle", "aggregated")


@dataclass(frozen=True)
class PolygonalMesh:
    """An unstructured 2D mesh of polygonal cells.

    Parameters
    ----------
    vertices : ndarray, shape (n, 2)
        Finite vertex coordinates.
    cells : tuple of tuples of int
        Per-cell CCW vertex loops (clockwise input loops are reversed).
    tags : tuple of str
        Per-cell provenance tag, one of ``CELL_TAGS``.
    """

    vertices: np.ndarray
    cells: tuple[tuple[int, ...], ...]
    tags: tuple[str, ...] = field(default=())

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise ValueError(f"expected (n, 2) vertex array, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("mesh vertices must be finite")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

        cells = []
        n = len(v)
        for ci, cell in enumerate(self.cells):
            cell = tuple(int(i) for i in cell)
            if len(cell) < 3:
                raise ValueError(f"cell {ci} has fewer than 3 vertices")
            if len(set(cell)) != len(cell):
                raise ValueError(f"cell {ci} repeats a vertex index")
            if min(cell) < 0 or max(cell) >= n:
                raise ValueError(f"cell {ci} references a vertex out of range")
            if signed_area(v[list(cell)]) < 0.0:
                logger.debug("reversing clockwise cell %d to CCW", ci)
                cell = cell[::-1]
            cells.append(cell)
        object.__setattr__(self, "cells", tuple(cells))

        tags = tuple(self.tags) if self.tags else ("filler-triangle",) * len(cells)
        if len(tags) != len(cells):
            raise ValueError(f"{len(tags)} tags for {len(cells)} cells")
        for t in tags:
            if t not in CELL_TAGS:
                raise ValueError(f"unknown cell tag {t!r}")
        object.__setattr__(self, "tags", tags)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def cell_vertices(self, i: int) -> np.ndarray:
        return self.vertices[list(self.cells[i])]

    def cell_polygon(self, i: int) -> Polygon2:
        return Polygon2(self.cell_vertices(i))

    def cell_area(self, i: int) -> float:
        return signed_area(self.cell_vertices(i))

    def total_area(self) -> float:
        return sum(self.cell_area(i) for i in range(self.n_cells))

    def edge_use_counts(self) -> Counter:
        """Count of cells using each undirected edge (vertex index pair)."""
        counts: Counter = Counter()
        for cell in self.cells:
            m = len(cell)
            for k in range(m):
                a, b = cell[k], cell[(k + 1) % m]
                counts[(a, b) if a < b else (b, a)] += 1
        return counts

    def boundary_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e, c in self.edge_use_counts().items() if c == 1)

    def boundary_vertex_mask(self) -> np.ndarray:
        mask = np.zeros(self.n_vertices, dtype=bool)
        for a, b in self.boundary_edges():
            mask[a] = True
            mask[b] = True
        return mask

    def is_conforming(self) -> bool:
        """True when every edge is used by exactly one or two cells."""
        return all(c in (1, 2) for c in self.edge_use_counts().values())

    def __repr__(self):
        return f"PolygonalMesh(n_vertices={self.n_vertices}, n_cells={self.n_cells})"
