"""Mesh and configuration file I/O.

Four mesh formats are supported, inferred from the file extension:

* ``.obj``   Wavefront OBJ. Vertices ``v x y 0.0``, faces 1-based.
* ``.off``   Object File Format. Literal ``OFF`` header, ``nv nf ne``
             counts, 3-coordinate vertices, 0-based faces with a leading
             vertex count.
* ``.stl``   Triangle-only. ASCII written; ASCII and binary read, with
             coincident vertices welded (1e-9). Non-triangle cells cannot
             be written to STL.
* ``.node`` / ``.ele``  Vertex and cell tables in the style of Triangle's
             .node/.ele pair. Our .ele rows carry an explicit vertex count
             (``index n v1 ... vn``, header ``<ncells> 0 0``) so cells of
             any arity fit; the classical fixed-arity layout and 0-based
             indexing are both accepted on read.

All text output uses '.' decimals and LF newlines, and coordinates are
written with repr so they round-trip exactly. The third coordinate is
written as 0 where a format is 3D and rejected on read when it exceeds
1e-9: this is a strictly 2D tool.

Readers return validated meshes: loops are normalized to CCW, every cell
must be a simple polygon, and cells are tagged by arity (triangles as
filler-triangle, anything larger as seed-polygon) since none of the
formats carry provenance.

Placement configurations travel as CSV with the header
``id,source,param,x,y,scale,rotation_deg`` (the param column is reserved
and left empty).
"""

from __future__ import annotations

import csv
import enum
import logging
import struct
from pathlib import Path

import numpy as np

from .geometry import Polygon2
from .mesh import PolygonalMesh
from .meshgen import GenerationConfig, Placement, PolygonSource

logger = logging.getLogger(__name__)

PLACEMENTS_HEADER = ("id", "source", "param", "x", "y", "scale", "rotation_deg")

_Z_TOL = 1e-9
_WELD = 1e-9


class MeshFileFormat(enum.Enum):
    OBJ = "obj"
    OFF = "off"
    STL = "stl"
    NODE_ELE = "node-ele"

    @classmethod
    def from_path(cls, path: Path) -> "MeshFileFormat":
        ext = path.suffix.lower()
        try:
            return {".obj": cls.OBJ, ".off": cls.OFF, ".stl": cls.STL,
                    ".node": cls.NODE_ELE, ".ele": cls.NODE_ELE}[ext]
        except KeyError:
            raise ValueError(f"unsupported mesh extension {ext!r} "
                             f"(expected .obj, .off, .stl, .node or .ele)") from None

    @classmethod
    def coerce(cls, value) -> "MeshFileFormat":
        if isinstance(value, cls):
            return value
        name = str(value).strip().lower().replace("_", "-")
        for fmt in cls:
            if name == fmt.value:
                return fmt
        raise ValueError(f"unknown mesh format {value!r} "
                         f"(expected one of {', '.join(f.value for f in cls)})")

    def extension(self) -> str:
        return ".node" if self is MeshFileFormat.NODE_ELE else f".{self.value}"


def _fnum(x: float) -> str:
    """Shortest decimal that parses back to exactly x."""
    return repr(float(x))


def _validated(vertices, cells, path) -> PolygonalMesh:
    """Build a mesh from parsed data: CCW-normalize, check each cell is a
    simple polygon, tag by arity."""
    tags = tuple("filler-triangle" if len(c) == 3 else "seed-polygon"
                 for c in cells)
    try:
        mesh = PolygonalMesh(vertices=np.asarray(vertices, dtype=float),
                             cells=tuple(tuple(c) for c in cells), tags=tags)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc
    for ci in range(mesh.n_cells):
        try:
            Polygon2(mesh.cell_vertices(ci))
        except ValueError as exc:
            raise ValueError(f"{path}: cell {ci} is invalid: {exc}") from exc
    logger.debug("read %s: %d vertices, %d cells",
                 path, mesh.n_vertices, mesh.n_cells)
    return mesh


def _text_rows(path: Path):
    """Yield (line_number, tokens) for non-blank lines, '#' comments
    stripped (both whole-line and trailing)."""
    text = path.read_text()
    for ln, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            yield ln, body.split()


def _check_z(path: Path, ln: int, z: float):
    if abs(z) > _Z_TOL:
        raise ValueError(f"{path} line {ln}: nonzero z coordinate {z} "
                         f"(only planar z=0 meshes are supported)")


def _parse_floats(path: Path, ln: int, tokens, what: str) -> list[float]:
    try:
        return [float(t) for t in tokens]
    except ValueError:
        raise ValueError(f"{path} line {ln}: malformed {what}") from None


def _parse_ints(path: Path, ln: int, tokens, what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ValueError(f"{path} line {ln}: malformed {what}") from None


# ---------------------------------------------------------------------------
# OBJ
# ---------------------------------------------------------------------------

# OBJ statements that carry no 2D mesh information and are skipped
_OBJ_IGNORED = {"vn", "vt", "vp", "o", "g", "s", "usemtl", "mtllib", "l", "p"}


def _write_obj(m: PolygonalMesh, path: Path):
    lines = []
    for x, y in m.vertices:
        lines.append(f"v {_fnum(x)} {_fnum(y)} 0.0")
    for cell in m.cells:
        lines.append("f " + " ".join(str(i + 1) for i in cell))
    path.write_text("\n".join(lines) + "\n")


def _read_obj(path: Path) -> PolygonalMesh:
    verts: list[tuple[float, float]] = []
    cells: list[list[int]] = []
    for ln, tokens in _text_rows(path):
        kind, rest = tokens[0], tokens[1:]
        if kind == "v":
            if len(rest) not in (2, 3):
                raise ValueError(f"{path} line {ln}: vertex needs 2 or 3 "
                                 f"coordinates, got {len(rest)}")
            coords = _parse_floats(path, ln, rest, "vertex")
            if len(coords) == 3:
                _check_z(path, ln, coords[2])
            verts.append((coords[0], coords[1]))
        elif kind == "f":
            idx = _parse_ints(path, ln, [t.split("/", 1)[0] for t in rest],
                              "face")
            if len(idx) < 3:
                raise ValueError(f"{path} line {ln}: face needs at least "
                                 f"3 vertices")
            if any(i < 1 or i > len(verts) for i in idx):
                raise ValueError(f"{path} line {ln}: face index out of range "
                                 f"(1..{len(verts)})")
            cells.append([i - 1 for i in idx])
        elif kind not in _OBJ_IGNORED:
            raise ValueError(f"{path} line {ln}: unknown OBJ statement "
                             f"{kind!r}")
    return _validated(verts, cells, path)


# ---------------------------------------------------------------------------
# OFF
# ---------------------------------------------------------------------------


def _write_off(m: PolygonalMesh, path: Path):
    lines = ["OFF", f"{m.n_vertices} {m.n_cells} 0"]
    for x, y in m.vertices:
        lines.append(f"{_fnum(x)} {_fnum(y)} 0.0")
    for cell in m.cells:
        lines.append(f"{len(cell)} " + " ".join(str(i) for i in cell))
    path.write_text("\n".join(lines) + "\n")


def _read_off(path: Path) -> PolygonalMesh:
    rows = list(_text_rows(path))
    if not rows or rows[0][1] != ["OFF"]:
        raise ValueError(f"{path} line 1: missing OFF header")
    if len(rows) < 2:
        raise ValueError(f"{path}: missing OFF counts line")
    ln, tokens = rows[1]
    counts = _parse_ints(path, ln, tokens, "counts line")
    if len(counts) != 3:
        raise ValueError(f"{path} line {ln}: counts line needs 3 integers")
    nv, nf, _ = counts
    body = rows[2:]
    if len(body) != nv + nf:
        raise ValueError(f"{path}: expected {nv} vertex and {nf} face lines, "
                         f"found {len(body)}")
    verts = []
    for ln, tokens in body[:nv]:
        coords = _parse_floats(path, ln, tokens, "vertex")
        if len(coords) != 3:
            raise ValueError(f"{path} line {ln}: vertex needs 3 coordinates")
        _check_z(path, ln, coords[2])
        verts.append((coords[0], coords[1]))
    cells = []
    for ln, tokens in body[nv:]:
        idx = _parse_ints(path, ln, tokens, "face")
        if len(idx) < 1 or len(idx) != idx[0] + 1:
            raise ValueError(f"{path} line {ln}: face length does not match "
                             f"its leading count")
        if idx[0] < 3:
            raise ValueError(f"{path} line {ln}: face needs at least 3 vertices")
        if any(i < 0 or i >= nv for i in idx[1:]):
            raise ValueError(f"{path} line {ln}: face index out of range "
                             f"(0..{nv - 1})")
        cells.append(idx[1:])
    return _validated(verts, cells, path)


# ---------------------------------------------------------------------------
# STL
# ---------------------------------------------------------------------------


def _write_stl(m: PolygonalMesh, path: Path):
    if any(len(cell) != 3 for cell in m.cells):
        raise ValueError("STL requires triangles: cell "
                         f"{next(i for i, c in enumerate(m.cells) if len(c) != 3)} "
                         f"is not a triangle")
    lines = ["solid mesh"]
    for cell in m.cells:
        lines.append("  facet normal 0.0 0.0 1.0")
        lines.append("    outer loop")
        for i in cell:
            x, y = m.vertices[i]
            lines.append(f"      vertex {_fnum(x)} {_fnum(y)} 0.0")
        lines.append("    endloop")
        lines.append("  endfacet")
    lines.append("endsolid mesh")
    path.write_text("\n".join(lines) + "\n")


def _weld_triangles(path, coord_triples) -> PolygonalMesh:
    """Build a mesh from per-facet coordinate triples, merging vertices
    that agree to within the weld tolerance."""
    verts: list[tuple[float, float]] = []
    index: dict[tuple[int, int], int] = {}
    cells = []
    for ln, tri in coord_triples:
        cell = []
        for x, y in tri:
            key = (round(x / _WELD), round(y / _WELD))
            vid = index.get(key)
            if vid is None:
                vid = len(verts)
                index[key] = vid
                verts.append((x, y))
            cell.append(vid)
        if len(set(cell)) != 3:
            raise ValueError(f"{path} line {ln}: degenerate facet "
                             f"(vertices weld together)")
        cells.append(cell)
    return _validated(verts, cells, path)


def _read_stl_ascii(path: Path, text: str) -> PolygonalMesh:
    triples = []
    current: list[tuple[float, float]] | None = None
    open_ln = 0
    for ln, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        kind = tokens[0].lower()
        if kind == "facet":
            if current is not None:
                raise ValueError(f"{path} line {ln}: facet inside facet")
            current, open_ln = [], ln
        elif kind == "vertex":
            if current is None:
                raise ValueError(f"{path} line {ln}: vertex outside a facet")
            coords = _parse_floats(path, ln, tokens[1:], "vertex")
            if len(coords) != 3:
                raise ValueError(f"{path} line {ln}: vertex needs 3 coordinates")
            _check_z(path, ln, coords[2])
            current.append((coords[0], coords[1]))
        elif kind == "endfacet":
            if current is None or len(current) != 3:
                raise ValueError(f"{path} line {ln}: facet does not contain "
                                 f"exactly 3 vertices")
            triples.append((open_ln, current))
            current = None
        elif kind not in ("solid", "endsolid", "outer", "endloop"):
            raise ValueError(f"{path} line {ln}: unknown STL statement "
                             f"{tokens[0]!r}")
    if current is not None:
        raise ValueError(f"{path} line {open_ln}: unterminated facet")
    if not triples:
        raise ValueError(f"{path}: no facets found")
    return _weld_triangles(path, triples)


def _read_stl_binary(path: Path, blob: bytes) -> PolygonalMesh:
    (count,) = struct.unpack_from("<I", blob, 80)
    triples = []
    for k in range(count):
        rec = struct.unpack_from("<12fH", blob, 84 + 50 * k)
        tri = []
        for j in range(3):
            x, y, z = rec[3 + 3 * j: 6 + 3 * j]
            _check_z(path, k + 1, z)
            tri.append((x, y))
        triples.append((k + 1, tri))
    if not triples:
        raise ValueError(f"{path}: no facets found")
    return _weld_triangles(path, triples)


def _read_stl(path: Path) -> PolygonalMesh:
    blob = path.read_bytes()
    if len(blob) >= 84:
        (count,) = struct.unpack_from("<I", blob, 80)
        if len(blob) == 84 + 50 * count and not blob.lstrip().startswith(b"solid"):
            return _read_stl_binary(path, blob)
    try:
        text = blob.decode("ascii")
    except UnicodeDecodeError:
        if len(blob) >= 84:
            return _read_stl_binary(path, blob)
        raise ValueError(f"{path}: not an STL file") from None
    if text.lstrip().startswith("solid"):
        return _read_stl_ascii(path, text)
    if len(blob) >= 84:
        (count,) = struct.unpack_from("<I", blob, 80)
        if len(blob) == 84 + 50 * count:
            return _read_stl_binary(path, blob)
    raise ValueError(f"{path}: not an STL file")


# ---------------------------------------------------------------------------
# .node / .ele
# ---------------------------------------------------------------------------


def _sibling(path: Path, ext: str) -> Path:
    return path.with_suffix(ext)


def _write_node_ele(m: PolygonalMesh, path: Path):
    node_path = _sibling(path, ".node")
    ele_path = _sibling(path, ".ele")
    lines = [f"{m.n_vertices} 2 0 0"]
    for i, (x, y) in enumerate(m.vertices, start=1):
        lines.append(f"{i} {_fnum(x)} {_fnum(y)}")
    node_path.write_text("\n".join(lines) + "\n")

    lines = [f"{m.n_cells} 0 0"]
    for ci, cell in enumerate(m.cells, start=1):
        lines.append(f"{ci} {len(cell)} " + " ".join(str(i + 1) for i in cell))
    ele_path.write_text("\n".join(lines) + "\n")


def _read_node(path: Path) -> tuple[list[tuple[float, float]], int]:
    """Parse a .node file; returns (vertices, index base)."""
    rows = list(_text_rows(path))
    if not rows:
        raise ValueError(f"{path}: empty .node file")
    ln, tokens = rows[0]
    header = _parse_ints(path, ln, tokens, ".node header")
    if len(header) < 2 or header[1] != 2:
        raise ValueError(f"{path} line {ln}: expected 2D .node header")
    nv = header[0]
    if len(rows) - 1 != nv:
        raise ValueError(f"{path}: header promises {nv} vertices, "
                         f"found {len(rows) - 1}")
    verts: list[tuple[float, float]] = []
    base = None
    for k, (ln, tokens) in enumerate(rows[1:]):
        if len(tokens) < 3:
            raise ValueError(f"{path} line {ln}: vertex row needs an index "
                             f"and 2 coordinates")
        idx = _parse_ints(path, ln, tokens[:1], "vertex index")[0]
        if base is None:
            if idx not in (0, 1):
                raise ValueError(f"{path} line {ln}: first vertex index must "
                                 f"be 0 or 1, got {idx}")
            base = idx
        if idx != base + k:
            raise ValueError(f"{path} line {ln}: vertex indices must be "
                             f"consecutive (expected {base + k}, got {idx})")
        x, y = _parse_floats(path, ln, tokens[1:3], "vertex")
        verts.append((x, y))
    return verts, base if base is not None else 1


def _read_ele(path: Path, nv: int, base: int) -> list[list[int]]:
    rows = list(_text_rows(path))
    if not rows:
        raise ValueError(f"{path}: empty .ele file")
    ln, tokens = rows[0]
    header = _parse_ints(path, ln, tokens, ".ele header")
    if not header:
        raise ValueError(f"{path} line {ln}: malformed .ele header")
    nc, arity = header[0], (header[1] if len(header) > 1 else 0)
    if len(rows) - 1 != nc:
        raise ValueError(f"{path}: header promises {nc} cells, "
                         f"found {len(rows) - 1}")
    cells = []
    for ln, tokens in rows[1:]:
        idx = _parse_ints(path, ln, tokens, "cell row")
        if arity == 0:
            # our generalization: index, count, then count vertex ids
            if len(idx) < 2 or len(idx) != idx[1] + 2:
                raise ValueError(f"{path} line {ln}: cell length does not "
                                 f"match its vertex count")
            cell = idx[2:]
        else:
            # classical fixed-arity layout: index, then `arity` vertex ids
            # (trailing attributes are ignored)
            if len(idx) < arity + 1:
                raise ValueError(f"{path} line {ln}: cell row needs "
                                 f"{arity} vertex ids")
            cell = idx[1:arity + 1]
        if any(i < base or i - base >= nv for i in cell):
            raise ValueError(f"{path} line {ln}: cell index out of range")
        cells.append([i - base for i in cell])
    return cells


def _read_node_ele(path: Path) -> PolygonalMesh:
    node_path = _sibling(path, ".node")
    ele_path = _sibling(path, ".ele")
    for p in (node_path, ele_path):
        if not p.exists():
            raise FileNotFoundError(f"{p}: missing companion of {path.name} "
                                    f"(.node/.ele come in pairs)")
    verts, base = _read_node(node_path)
    cells = _read_ele(ele_path, len(verts), base)
    return _validated(verts, cells, path)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_WRITERS = {
    MeshFileFormat.OBJ: _write_obj,
    MeshFileFormat.OFF: _write_off,
    MeshFileFormat.STL: _write_stl,
    MeshFileFormat.NODE_ELE: _write_node_ele,
}

_READERS = {
    MeshFileFormat.OBJ: _read_obj,
    MeshFileFormat.OFF: _read_off,
    MeshFileFormat.STL: _read_stl,
    MeshFileFormat.NODE_ELE: _read_node_ele,
}


def write_mesh(m: PolygonalMesh, path, format=None):
    """Write a mesh; the format comes from `format` (enum or name) or,
    when omitted, the file extension. NODE_ELE writes both `<stem>.node`
    and `<stem>.ele` regardless of which of the pair `path` names."""
    path = Path(path)
    fmt = (MeshFileFormat.coerce(format) if format is not None
           else MeshFileFormat.from_path(path))
    _WRITERS[fmt](m, path)


def read_mesh(path) -> PolygonalMesh:
    """Read and validate a mesh; the format comes from the extension.
    A .node or .ele path reads the pair."""
    path = Path(path)
    fmt = MeshFileFormat.from_path(path)
    if fmt is not MeshFileFormat.NODE_ELE and not path.exists():
        raise FileNotFoundError(f"no such mesh file: {path}")
    return _READERS[fmt](path)


# ---------------------------------------------------------------------------
# placement configuration CSV
# ---------------------------------------------------------------------------


def write_placements(config: GenerationConfig, path):
    """Write the placements of a configuration as CSV (header plus one row
    per placement). Only the placement list travels in the file; sampling
    and post-processing options are not part of this format."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PLACEMENTS_HEADER)
        for pid, p in enumerate(config.placements):
            writer.writerow([pid, str(p.source), "", _fnum(p.x), _fnum(p.y),
                             _fnum(p.scale), _fnum(p.rotation_deg)])


def read_placements(path) -> GenerationConfig:
    """Read a placement CSV into a configuration (defaults for everything
    the file does not carry: one mesh, no refinement bounds, no mirroring
    or aggregation)."""
    placements = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty placements file") from None
        if tuple(h.strip() for h in header) != PLACEMENTS_HEADER:
            raise ValueError(f"{path} row 1: expected header "
                             f"{','.join(PLACEMENTS_HEADER)}")
        for row in reader:
            ln = reader.line_num
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(PLACEMENTS_HEADER):
                raise ValueError(f"{path} row {ln}: expected "
                                 f"{len(PLACEMENTS_HEADER)} fields, "
                                 f"got {len(row)}")
            pid, source, param, x, y, scale, rot = (f.strip() for f in row)
            try:
                int(pid)
            except ValueError:
                raise ValueError(f"{path} row {ln}: id must be an integer, "
                                 f"got {pid!r}") from None
            if param:
                raise ValueError(f"{path} row {ln}: the param column is "
                                 f"reserved and must be empty")
            try:
                numbers = [float(v) for v in (x, y, scale, rot)]
            except ValueError:
                raise ValueError(f"{path} row {ln}: malformed number") from None
            try:
                placements.append(Placement(
                    source=PolygonSource.from_string(source),
                    x=numbers[0], y=numbers[1],
                    scale=numbers[2], rotation_deg=numbers[3]))
            except ValueError as exc:
                raise ValueError(f"{path} row {ln}: {exc}") from exc
    return GenerationConfig(placements=tuple(placements))
