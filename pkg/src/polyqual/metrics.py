"""Per-element quality metrics for polygonal meshes.

The 15-metric catalogue, per element:

==== =====================================================================
nE   number of vertices (= edges)
IC   radius of the largest inscribed circle
CC   radius of the smallest enclosing circle
CR   circle ratio IC/CC
AR   element area
KE   kernel area (0 for non-star-shaped elements)
KAR  kernel/area ratio KE/AR
PAR  isoperimetric quotient 4*pi*AR/perimeter^2
MA   minimum interior angle (radians)
mA   maximum interior angle (radians)
SE   shortest edge length
ER   edge ratio SE/longest-edge
MPD  minimum pairwise vertex distance
NPD  normalized point distance MPD/(2*CC)
SRG  shape regularity: inscribed radius of the kernel over CC (0 if empty)
==== =====================================================================

nE, CR, KAR, PAR, MA, mA, ER, NPD and SRG are scale-invariant; IC, CC, SE
and MPD scale linearly and AR, KE quadratically. All 15 are invariant
under rigid motions. The derived angle ratio MA/mA is available as an
optional export column but is not part of the core catalogue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .geometry import (
    Polygon2,
    interior_angles,
    largest_inscribed_circle,
    min_pairwise_distance,
    polygon_kernel,
    smallest_enclosing_circle,
)
from .mesh import PolygonalMesh

METRIC_NAMES = ("nE", "IC", "CC", "CR", "AR", "KE", "KAR", "PAR",
                "MA", "mA", "SE", "ER", "MPD", "NPD", "SRG")

CSV_HEADER = ",".join(METRIC_NAMES)

# metrics marked scale-invariant (the rest scale by s or s^2)
SCALE_INVARIANT = ("nE", "CR", "KAR", "PAR", "MA", "mA", "ER", "NPD", "SRG")


@dataclass(frozen=True)
class ElementMetrics:
    nE: int
    IC: float
    CC: float
    CR: float
    AR: float
    KE: float
    KAR: float
    PAR: float
    MA: float
    mA: float
    SE: float
    ER: float
    MPD: float
    NPD: float
    SRG: float

    def values(self) -> tuple:
        return tuple(getattr(self, name) for name in METRIC_NAMES)

    def __getitem__(self, name: str):
        if name not in METRIC_NAMES:
            raise KeyError(name)
        return getattr(self, name)

    @property
    def angle_ratio(self) -> float:
        """Derived MA/mA ratio (1 for equiangular elements)."""
        return self.MA / self.mA


assert tuple(f.name for f in fields(ElementMetrics)) == METRIC_NAMES


def element_metrics(p: Polygon2, inscribed_tol: float | None = None) -> ElementMetrics:
    """Compute all 15 quality metrics of one element.

    ``inscribed_tol`` is the absolute tolerance passed to the inscribed
    circle search (default: 1e-4 times the element diameter); it bounds the
    error of IC and of the derived CR and SRG.
    """
    v = p.vertices
    ne = p.n
    ar = p.area
    edge_len = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    se = float(edge_len.min())
    er = se / float(edge_len.max())
    per = float(edge_len.sum())
    par = min(4.0 * math.pi * ar / (per * per), 1.0)
    ang = interior_angles(p)
    ma, mx = float(ang.min()), float(ang.max())
    mpd = min_pairwise_distance(v)
    cc = smallest_enclosing_circle(v).radius
    ic = largest_inscribed_circle(p, tol=inscribed_tol).radius
    ker = polygon_kernel(p)
    ke = ker.area
    kar = min(ke / ar, 1.0)
    if ker.is_empty:
        srg = 0.0
    else:
        srg = largest_inscribed_circle(ker.vertices, tol=inscribed_tol).radius / cc
    return ElementMetrics(
        nE=ne,
        IC=ic,
        CC=cc,
        CR=ic / cc,
        AR=ar,
        KE=ke,
        KAR=kar,
        PAR=par,
        MA=ma,
        mA=mx,
        SE=se,
        ER=er,
        MPD=mpd,
        NPD=mpd / (2.0 * cc),
        SRG=min(srg, 1.0),
    )


def mesh_metrics(m: PolygonalMesh, inscribed_tol: float | None = None) -> list[ElementMetrics]:
    """Metrics of every cell, in cell-id order."""
    if m.n_cells == 0:
        raise ValueError("mesh has no cells")
    return [element_metrics(m.cell_polygon(i), inscribed_tol) for i in range(m.n_cells)]


@dataclass(frozen=True)
class MetricStat:
    """min/max (with attaining element ids, lowest id on ties) and average."""

    min: float
    min_id: int
    max: float
    max_id: int
    avg: float


@dataclass(frozen=True)
class MeshMetricsSummary:
    stats: dict[str, MetricStat]
    n_elements: int
    n_triangles: int
    n_polygons: int
    elements: tuple[ElementMetrics, ...]

    def __getitem__(self, name: str) -> MetricStat:
        return self.stats[name]


def summarize_elements(elems: list[ElementMetrics]) -> MeshMetricsSummary:
    if not elems:
        raise ValueError("no elements to summarize")
    stats = {}
    for name in METRIC_NAMES:
        col = np.array([float(e[name]) for e in elems])
        imin = int(col.argmin())  # argmin/argmax take the first occurrence
        imax = int(col.argmax())
        stats[name] = MetricStat(
            min=float(col[imin]), min_id=imin,
            max=float(col[imax]), max_id=imax,
            avg=float(col.mean()),
        )
    n_tri = sum(1 for e in elems if e.nE == 3)
    return MeshMetricsSummary(
        stats=stats,
        n_elements=len(elems),
        n_triangles=n_tri,
        n_polygons=len(elems) - n_tri,
        elements=tuple(elems),
    )


def summarize_mesh(m: PolygonalMesh, inscribed_tol: float | None = None) -> MeshMetricsSummary:
    """Per-mesh metric summary: min/max/avg with attaining cell ids."""
    return summarize_elements(mesh_metrics(m, inscribed_tol))


@dataclass(frozen=True)
class MetricSeries:
    """One metric's (min, max, avg) sequence over a dataset's mesh index."""

    metric: str
    mins: tuple[float, ...]
    maxs: tuple[float, ...]
    avgs: tuple[float, ...]

    def __len__(self):
        return len(self.mins)


def dataset_series(dataset, inscribed_tol: float | None = None) -> list[MetricSeries]:
    """Per-metric series over a dataset (or any sequence of meshes)."""
    meshes = getattr(dataset, "meshes", dataset)
    if len(meshes) == 0:
        raise ValueError("empty dataset")
    summaries = [summarize_mesh(m, inscribed_tol) for m in meshes]
    return series_from_summaries(summaries)


def series_from_summaries(summaries: list[MeshMetricsSummary]) -> list[MetricSeries]:
    if not summaries:
        raise ValueError("no summaries")
    out = []
    for name in METRIC_NAMES:
        out.append(MetricSeries(
            metric=name,
            mins=tuple(s[name].min for s in summaries),
            maxs=tuple(s[name].max for s in summaries),
            avgs=tuple(s[name].avg for s in summaries),
        ))
    return out


# ---------------------------------------------------------------------------
# CSV export (12 significant digits, LF newlines)
# ---------------------------------------------------------------------------


def _fmt(name: str, value) -> str:
    if name == "nE":
        return str(int(value))
    return format(float(value), ".12g")


def _element_row(e: ElementMetrics, angle_ratio: bool) -> str:
    row = ",".join(_fmt(n, e[n]) for n in METRIC_NAMES)
    if angle_ratio:
        row += "," + format(e.angle_ratio, ".12g")
    return row


def export_element_metrics_csv(elems, path, angle_ratio: bool = False) -> None:
    """Write one CSV row per element under the Table-1 header.

    ``elems`` is a list of ElementMetrics or a PolygonalMesh (whose cells
    are then measured with default tolerances). The optional trailing
    MA/mA column is off by default so the header matches the catalogue
    verbatim.
    """
    if isinstance(elems, PolygonalMesh):
        elems = mesh_metrics(elems)
    header = CSV_HEADER + (",MA/mA" if angle_ratio else "")
    lines = [header] + [_element_row(e, angle_ratio) for e in elems]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def export_summary_csv(summaries, path, angle_ratio: bool = False) -> None:
    """Write per-mesh summary rows (one min/max/avg row triple per mesh).

    Columns: mesh index, stat kind, then the 15 metric columns; min/max
    rows are followed by min_id/max_id rows holding the attaining element
    ids for every metric.
    """
    if isinstance(summaries, MeshMetricsSummary):
        summaries = [summaries]
    header = "mesh,stat," + CSV_HEADER + (",MA/mA" if angle_ratio else "")
    lines = [header]
    for mi, s in enumerate(summaries):
        for stat in ("min", "max", "avg"):
            vals = [format(getattr(s[n], stat), ".12g") for n in METRIC_NAMES]
            if angle_ratio:
                # ratio of the stat values, not the stat of ratios
                vals.append(format(getattr(s["MA"], stat) / getattr(s["mA"], stat), ".12g"))
            lines.append(f"{mi},{stat}," + ",".join(vals))
        for stat in ("min_id", "max_id"):
            vals = [str(getattr(s[n], stat)) for n in METRIC_NAMES]
            if angle_ratio:
                vals.append("")
            lines.append(f"{mi},{stat}," + ",".join(vals))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
