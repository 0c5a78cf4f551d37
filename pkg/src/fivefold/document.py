"""The .qtile text format: an archival, human-diffable tiling container.

Geometry is stored exactly (integer quasilattice coordinates only); floats
appear only in the optional projection metadata line, written with repr so
reading them back is lossless.  The writer validates and canonicalizes
nothing silently: a document must already satisfy the invariants (sorted
deduplicated vertices, in-range indices, geometry-consistent chirality) or
writing refuses, and the reader rejects violations with the line number.
Write/read/write is byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import FORMAT_VERSION
from .exact import CycloPoint, cross_sign
from .grouping import CompositeKind, CompositeTiling
from .projection import QuasiPoint
from .triangles import Patch, Triangle, TriangleKind

__all__ = [
    "DocTriangle",
    "ProjectionMeta",
    "TilingDocument",
    "DocumentError",
    "write_tiling",
    "read_tiling",
    "patch_to_document",
    "document_to_patch",
    "tiling_to_document",
    "quasilattice_to_document",
    "document_groups",
]

UNIT_NOTE = "edge-unit: acute base = 1, legs = tau, obtuse base = tau^2"


class DocumentError(ValueError):
    """Raised for malformed documents, with the offending location."""


@dataclass(frozen=True, slots=True)
class DocTriangle:
    kind: str           # "A" | "O"
    apex: int
    base0: int
    base1: int
    chirality: int
    parent: int | None = None


@dataclass(frozen=True, slots=True)
class ProjectionMeta:
    gamma: tuple[float, float, float]
    radius: float
    box: int


@dataclass(frozen=True)
class TilingDocument:
    version: int = FORMAT_VERSION
    unit_note: str = UNIT_NOTE
    seed: str = ""
    generation: int = 0
    vertices: tuple[tuple[int, int, int, int], ...] = ()
    triangles: tuple[DocTriangle, ...] = ()
    groups: tuple[tuple[str, tuple[int, ...]], ...] | None = None
    projection: ProjectionMeta | None = None

    def validate(self) -> None:
        if self.version != FORMAT_VERSION:
            raise DocumentError(f"unsupported format version {self.version}")
        if list(self.vertices) != sorted(set(self.vertices)):
            raise DocumentError("vertices must be deduplicated and in "
                                "lexicographic order")
        n = len(self.vertices)
        for t_index, t in enumerate(self.triangles):
            if t.kind not in ("A", "O"):
                raise DocumentError(f"triangle {t_index}: unknown kind {t.kind!r}")
            for idx in (t.apex, t.base0, t.base1):
                if not 0 <= idx < n:
                    raise DocumentError(
                        f"triangle {t_index}: vertex index {idx} out of range")
            if t.chirality not in (-1, 1):
                raise DocumentError(f"triangle {t_index}: chirality must be +-1")
            if t.parent is not None and t.parent < 0:
                raise DocumentError(f"triangle {t_index}: negative parent index")
            apex, b0, b1 = (CycloPoint(*self.vertices[i])
                            for i in (t.apex, t.base0, t.base1))
            if cross_sign(b0 - apex, b1 - apex) != t.chirality:
                raise DocumentError(
                    f"triangle {t_index}: stored chirality contradicts geometry")
        if self.groups is not None:
            seen: set[int] = set()
            valid_kinds = {k.value for k in CompositeKind}
            for g_index, (kind, indices) in enumerate(self.groups):
                if kind not in valid_kinds:
                    raise DocumentError(f"group {g_index}: unknown kind {kind!r}")
                for idx in indices:
                    if not 0 <= idx < len(self.triangles):
                        raise DocumentError(
                            f"group {g_index}: triangle index {idx} out of range")
                    if idx in seen:
                        raise DocumentError(
                            f"group {g_index}: triangle {idx} already grouped")
                    seen.add(idx)
        if self.generation < 0:
            raise DocumentError("generation must be >= 0")


def write_tiling(doc: TilingDocument) -> bytes:
    doc.validate()
    lines = [f"qtile {doc.version}"]
    lines.append(f"unit {doc.unit_note}")
    lines.append(f"seed {doc.seed}")
    lines.append(f"generation {doc.generation}")
    lines.append(f"vertices {len(doc.vertices)}")
    for v in doc.vertices:
        lines.append(" ".join(str(c) for c in v))
    lines.append(f"triangles {len(doc.triangles)}")
    for t in doc.triangles:
        parent = -1 if t.parent is None else t.parent
        lines.append(f"{t.kind} {t.apex} {t.base0} {t.base1} "
                     f"{t.chirality:+d} {parent}")
    if doc.groups is not None:
        lines.append(f"groups {len(doc.groups)}")
        for kind, indices in doc.groups:
            lines.append(kind + " " + " ".join(str(i) for i in indices))
    if doc.projection is not None:
        p = doc.projection
        lines.append("projection " + " ".join(
            [repr(p.gamma[0]), repr(p.gamma[1]), repr(p.gamma[2]),
             repr(p.radius), str(p.box)]))
    lines.append("end")
    return ("\n".join(lines) + "\n").encode("ascii")


class _Reader:
    def __init__(self, data: bytes):
        try:
            text = data.decode("ascii")
        except UnicodeDecodeError as e:
            raise DocumentError(f"not an ascii document: {e}") from None
        self.lines = text.split("\n")
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise DocumentError(f"line {self.pos + 1}: unexpected end of file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def fail(self, message: str):
        raise DocumentError(f"line {self.pos}: {message}")


def read_tiling(data: bytes) -> TilingDocument:
    r = _Reader(data)
    header = r.next().split()
    if len(header) != 2 or header[0] != "qtile":
        r.fail("expected 'qtile <version>' header")
    try:
        version = int(header[1])
    except ValueError:
        r.fail("version must be an integer")
    if version != FORMAT_VERSION:
        r.fail(f"unsupported format version {version}")

    unit_line = r.next()
    if not unit_line.startswith("unit "):
        r.fail("expected 'unit <note>'")
    unit_note = unit_line[5:]

    seed_line = r.next()
    if not seed_line.startswith("seed"):
        r.fail("expected 'seed <name>'")
    seed = seed_line[5:] if len(seed_line) > 4 else ""

    gen_line = r.next().split()
    if len(gen_line) != 2 or gen_line[0] != "generation":
        r.fail("expected 'generation <n>'")
    generation = _parse_int(r, gen_line[1])

    count_line = r.next().split()
    if len(count_line) != 2 or count_line[0] != "vertices":
        r.fail("expected 'vertices <n>'")
    n_vertices = _parse_int(r, count_line[1])
    vertices = []
    for _ in range(n_vertices):
        parts = r.next().split()
        if len(parts) != 4:
            r.fail("vertex must have 4 integer coordinates")
        vertices.append(tuple(_parse_int(r, p) for p in parts))

    count_line = r.next().split()
    if len(count_line) != 2 or count_line[0] != "triangles":
        r.fail("expected 'triangles <n>'")
    n_triangles = _parse_int(r, count_line[1])
    triangles = []
    for _ in range(n_triangles):
        parts = r.next().split()
        if len(parts) != 6:
            r.fail("triangle must be 'kind apex base0 base1 chirality parent'")
        kind = parts[0]
        apex, base0, base1, chirality, parent = (_parse_int(r, p) for p in parts[1:])
        triangles.append(DocTriangle(kind, apex, base0, base1, chirality,
                                     None if parent == -1 else parent))

    groups = None
    projection = None
    line = r.next()
    if line.startswith("groups "):
        n_groups = _parse_int(r, line.split()[1])
        groups = []
        for _ in range(n_groups):
            parts = r.next().split()
            if not parts:
                r.fail("empty group line")
            groups.append((parts[0], tuple(_parse_int(r, p) for p in parts[1:])))
        groups = tuple(groups)
        line = r.next()
    if line.startswith("projection "):
        parts = line.split()
        if len(parts) != 6:
            r.fail("projection line must be 'projection g1 g2 g3 radius box'")
        try:
            gamma = (float(parts[1]), float(parts[2]), float(parts[3]))
            radius = float(parts[4])
        except ValueError:
            r.fail("bad float in projection metadata")
        projection = ProjectionMeta(gamma, radius, _parse_int(r, parts[5]))
        line = r.next()
    if line != "end":
        r.fail(f"expected 'end', got {line!r}")

    doc = TilingDocument(version=version, unit_note=unit_note, seed=seed,
                         generation=generation, vertices=tuple(vertices),
                         triangles=tuple(triangles), groups=groups,
                         projection=projection)
    try:
        doc.validate()
    except DocumentError as e:
        raise DocumentError(str(e)) from None
    return doc


def _parse_int(r: _Reader, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        r.fail(f"expected integer, got {token!r}")


def patch_to_document(patch: Patch,
                      groups: tuple[tuple[str, tuple[int, ...]], ...] | None = None,
                      projection: ProjectionMeta | None = None) -> TilingDocument:
    vertices = tuple(v.coords() for v in patch.vertices)
    lookup = {v: i for i, v in enumerate(vertices)}
    doc_tris = tuple(
        DocTriangle(t.kind.value, lookup[t.apex.coords()],
                    lookup[t.base0.coords()], lookup[t.base1.coords()],
                    t.chirality, t.parent)
        for t in patch.triangles)
    return TilingDocument(seed=patch.seed, generation=patch.generation,
                          vertices=vertices, triangles=doc_tris,
                          groups=groups, projection=projection)


def document_to_patch(doc: TilingDocument) -> Patch:
    doc.validate()
    points = [CycloPoint(*v) for v in doc.vertices]
    tris = tuple(
        Triangle(TriangleKind(t.kind), points[t.apex], points[t.base0],
                 points[t.base1], t.chirality, t.parent)
        for t in doc.triangles)
    return Patch(tris, generation=doc.generation, seed=doc.seed)


def tiling_to_document(tiling: CompositeTiling) -> TilingDocument:
    groups = tuple((g.kind.value, g.indices) for g in tiling.groups)
    return patch_to_document(tiling.patch, groups=groups)


def document_groups(doc: TilingDocument) -> list[tuple[str, tuple[int, ...]]]:
    return list(doc.groups or ())


def quasilattice_to_document(points: Sequence[QuasiPoint], gamma, radius: float,
                             box: int) -> TilingDocument:
    vertices = tuple(sorted(p.cyclo.coords() for p in points))
    meta = ProjectionMeta(tuple(float(g) for g in gamma), float(radius), int(box))
    return TilingDocument(seed="projection", generation=0, vertices=vertices,
                          triangles=(), projection=meta)
