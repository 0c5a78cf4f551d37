"""Regrouping triangle patches into composite tiles.

A composite template is a fixed set of triangles in a canonical pose;
``detect_composites`` claims groups greedily, matching templates under the
20 exact plane isometries that fix the decagonal direction set (10
rotations by 36 degrees, each optionally composed with complex
conjugation) plus an exact translation.  Matching never backtracks and the
iteration order is canonical, so grouping is deterministic.

Template geometry: the rhombs, deltoid, trapezoid and boat follow from the
shape definitions directly.  The pentagon dissections cannot be chosen
freely (a pentagon with side equal to the triangle leg admits no
edge-to-edge dissection at all); the frozen data below is the dissection
that actually occurs in deflated wheel patches, harvested once with an
exhaustive search.  Its pentagon side is (2+tau) times the triangle leg;
the big pentagon is its tau-fold deflation image, giving the side ratio
tau between the two pentagon kinds.  A pentagram point is the acute-shaped
union with base equal to the pentagon side, harvested the same way.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from functools import cache
from typing import Iterable, Sequence

from .exact import EPS1, ONE, TAU_C, ZERO, CycloPoint, GoldenInt
from .triangles import (
    Patch,
    Triangle,
    TriangleKind,
    canonical_acute,
    canonical_obtuse,
    deflate_triangle,
)

__all__ = [
    "CompositeKind",
    "Template",
    "Isometry",
    "Group",
    "CompositeTiling",
    "templates",
    "template_fingerprint",
    "detect_composites",
    "glue_rhombs",
    "count_tiles",
    "verify_grouping",
    "POLICIES",
    "SET_A",
    "SET_B",
    "RHOMBS",
]

TAU = GoldenInt(0, 1)
TAU2 = GoldenInt(1, 1)


class CompositeKind(Enum):
    THICK_RHOMB = "ThickRhomb"
    THIN_RHOMB = "ThinRhomb"
    DELTOID = "Deltoid"
    TRAPEZOID = "Trapezoid"
    PENTAGON_BIG = "PentagonBig"
    PENTAGON_SMALL = "PentagonSmall"
    PENTAGRAM = "Pentagram"
    BOAT = "Boat"
    ACUTE_TRIANGLE = "AcuteTriangle"
    OBTUSE_TRIANGLE = "ObtuseTriangle"


SINGLETON_KINDS = (CompositeKind.ACUTE_TRIANGLE, CompositeKind.OBTUSE_TRIANGLE)

SET_A = (CompositeKind.PENTAGRAM, CompositeKind.BOAT, CompositeKind.PENTAGON_BIG,
         CompositeKind.THICK_RHOMB, CompositeKind.THIN_RHOMB)
SET_B = (CompositeKind.PENTAGON_BIG, CompositeKind.PENTAGON_SMALL,
         CompositeKind.TRAPEZOID, CompositeKind.THICK_RHOMB,
         CompositeKind.ACUTE_TRIANGLE)
RHOMBS = (CompositeKind.THIN_RHOMB, CompositeKind.THICK_RHOMB, CompositeKind.DELTOID)
POLICIES = {"seta": SET_A, "setb": SET_B, "rhombs": RHOMBS}

# Pentagon dissection as found in deflated wheel patches, normalized so the
# first pentagon corner is the origin and the first side points along the
# positive x axis.  Units: triangle legs have length tau (generation 0).
_SMALL55_RAW = (
    ("A", (0, 0, -1, -1), (0, 1, 0, -1), (1, 1, 0, -1)),
    ("A", (0, 0, -1, -1), (1, 1, -1, -1), (1, 1, 0, -1)),
    ("A", (1, 2, 1, -1), (0, 1, 0, -1), (1, 1, 0, -1)),
    ("A", (1, 2, 1, -1), (1, 2, 2, 0), (1, 3, 2, 0)),
    ("A", (1, 3, 3, 1), (1, 2, 2, 0), (1, 3, 2, 0)),
    ("A", (1, 3, 3, 1), (2, 4, 3, 1), (1, 3, 2, 0)),
    ("A", (2, 1, -2, -3), (2, 1, -1, -2), (2, 2, -1, -2)),
    ("A", (2, 1, -2, -3), (2, 2, -1, -3), (2, 2, -1, -2)),
    ("A", (2, 2, 0, -1), (1, 1, -1, -1), (1, 1, 0, -1)),
    ("A", (2, 2, 0, -1), (2, 1, -1, -2), (2, 2, -1, -2)),
    ("A", (2, 3, 0, -2), (2, 2, -1, -3), (2, 2, -1, -2)),
    ("A", (2, 3, 0, -2), (3, 4, 0, -2), (3, 4, 1, -2)),
    ("A", (2, 4, 2, 0), (2, 4, 3, 1), (1, 3, 2, 0)),
    ("A", (2, 4, 2, 0), (2, 5, 3, 0), (3, 5, 3, 0)),
    ("A", (3, 4, 2, -1), (3, 5, 3, -1), (3, 5, 3, 0)),
    ("A", (3, 4, 2, -1), (4, 5, 2, -1), (3, 4, 1, -2)),
    ("A", (3, 6, 4, 0), (2, 5, 3, 0), (3, 5, 3, 0)),
    ("A", (3, 6, 4, 0), (3, 5, 3, -1), (3, 5, 3, 0)),
    ("A", (4, 5, 1, -2), (3, 4, 0, -2), (3, 4, 1, -2)),
    ("A", (4, 5, 1, -2), (4, 5, 2, -1), (3, 4, 1, -2)),
    ("O", (0, 0, 0, 0), (0, 0, -1, -1), (0, 1, 1, 0)),
    ("O", (0, 1, 0, -1), (0, 0, -1, -1), (0, 1, 1, 0)),
    ("O", (0, 1, 0, -1), (1, 2, 1, -1), (0, 1, 1, 0)),
    ("O", (1, 0, -3, -3), (2, 1, -2, -3), (1, 0, -2, -2)),
    ("O", (1, 1, -1, -1), (0, 0, -1, -1), (1, 0, -2, -2)),
    ("O", (1, 1, -1, -1), (2, 2, 0, -1), (1, 0, -2, -2)),
    ("O", (1, 2, 1, -1), (2, 3, 1, -1), (1, 1, 0, -1)),
    ("O", (1, 2, 1, -1), (2, 3, 1, -1), (1, 3, 2, 0)),
    ("O", (1, 2, 2, 0), (1, 2, 1, -1), (0, 1, 1, 0)),
    ("O", (1, 2, 2, 0), (1, 3, 3, 1), (0, 1, 1, 0)),
    ("O", (1, 4, 4, 1), (1, 3, 3, 1), (2, 5, 4, 1)),
    ("O", (2, 1, -1, -2), (2, 1, -2, -3), (1, 0, -2, -2)),
    ("O", (2, 1, -1, -2), (2, 2, 0, -1), (1, 0, -2, -2)),
    ("O", (2, 2, -1, -3), (2, 1, -2, -3), (3, 3, -1, -3)),
    ("O", (2, 2, -1, -3), (2, 3, 0, -2), (3, 3, -1, -3)),
    ("O", (2, 2, 0, -1), (2, 3, 1, -1), (1, 1, 0, -1)),
    ("O", (2, 2, 0, -1), (2, 3, 1, -1), (2, 2, -1, -2)),
    ("O", (2, 3, 0, -2), (2, 3, 1, -1), (2, 2, -1, -2)),
    ("O", (2, 3, 0, -2), (2, 3, 1, -1), (3, 4, 1, -2)),
    ("O", (2, 4, 2, 0), (2, 3, 1, -1), (1, 3, 2, 0)),
    ("O", (2, 4, 2, 0), (2, 3, 1, -1), (3, 5, 3, 0)),
    ("O", (2, 4, 3, 1), (1, 3, 3, 1), (2, 5, 4, 1)),
    ("O", (2, 4, 3, 1), (2, 4, 2, 0), (2, 5, 4, 1)),
    ("O", (2, 5, 3, 0), (2, 4, 2, 0), (2, 5, 4, 1)),
    ("O", (2, 5, 3, 0), (3, 6, 4, 0), (2, 5, 4, 1)),
    ("O", (3, 4, 0, -2), (2, 3, 0, -2), (3, 3, -1, -3)),
    ("O", (3, 4, 0, -2), (4, 5, 1, -2), (3, 3, -1, -3)),
    ("O", (3, 4, 2, -1), (2, 3, 1, -1), (3, 4, 1, -2)),
    ("O", (3, 4, 2, -1), (2, 3, 1, -1), (3, 5, 3, 0)),
    ("O", (3, 5, 3, -1), (3, 4, 2, -1), (4, 6, 3, -1)),
    ("O", (3, 5, 3, -1), (3, 6, 4, 0), (4, 6, 3, -1)),
    ("O", (4, 4, 0, -3), (4, 5, 1, -2), (3, 3, -1, -3)),
    ("O", (4, 5, 2, -1), (3, 4, 2, -1), (4, 6, 3, -1)),
    ("O", (4, 5, 2, -1), (4, 5, 1, -2), (4, 6, 3, -1)),
    ("O", (4, 7, 4, 0), (3, 6, 4, 0), (4, 6, 3, -1)),
)

# Acute-shaped union with base (2+tau) * leg, harvested the same way; this
# is a pentagram point.  Base from the origin along +x, apex below the axis.
_POINT25_RAW = (
    ("A", (-3, -7, -7, -3), (-2, -6, -6, -3), (-3, -6, -6, -3)),
    ("A", (-2, -5, -5, -3), (-2, -6, -6, -3), (-3, -6, -6, -3)),
    ("A", (-2, -5, -5, -3), (-2, -5, -6, -4), (-1, -4, -5, -3)),
    ("A", (-1, -3, -4, -2), (-1, -3, -5, -3), (-1, -4, -5, -3)),
    ("A", (-1, -3, -4, -2), (0, -2, -3, -2), (-1, -2, -3, -2)),
    ("A", (0, -1, -2, -2), (0, -2, -3, -2), (-1, -2, -3, -2)),
    ("A", (0, -1, -2, -2), (0, -1, -3, -3), (1, 0, -2, -2)),
    ("A", (0, 0, -1, -1), (-1, -1, -2, -1), (-1, -1, -1, -1)),
    ("A", (0, 0, -1, -1), (0, 0, 0, 0), (-1, -1, -1, -1)),
    ("A", (1, 0, -3, -3), (0, -1, -3, -3), (1, 0, -2, -2)),
    ("O", (-2, -5, -5, -3), (-2, -4, -4, -2), (-3, -6, -6, -3)),
    ("O", (-2, -5, -5, -3), (-2, -4, -4, -2), (-1, -4, -5, -3)),
    ("O", (-2, -3, -3, -2), (-2, -4, -4, -2), (-1, -2, -3, -2)),
    ("O", (-2, -3, -3, -2), (-2, -2, -2, -1), (-1, -2, -3, -2)),
    ("O", (-1, -3, -5, -3), (-1, -3, -4, -2), (0, -2, -4, -3)),
    ("O", (-1, -3, -4, -2), (-2, -4, -4, -2), (-1, -4, -5, -3)),
    ("O", (-1, -3, -4, -2), (-2, -4, -4, -2), (-1, -2, -3, -2)),
    ("O", (-1, -1, -2, -1), (-2, -2, -2, -1), (-1, -2, -3, -2)),
    ("O", (-1, -1, -2, -1), (0, 0, -1, -1), (-1, -2, -3, -2)),
    ("O", (0, -2, -3, -2), (-1, -3, -4, -2), (0, -2, -4, -3)),
    ("O", (0, -2, -3, -2), (0, -1, -2, -2), (0, -2, -4, -3)),
    ("O", (0, -1, -3, -3), (0, -1, -2, -2), (0, -2, -4, -3)),
    ("O", (0, -1, -3, -3), (1, 0, -3, -3), (0, -2, -4, -3)),
    ("O", (0, -1, -2, -2), (0, 0, -1, -1), (-1, -2, -3, -2)),
    ("O", (0, -1, -2, -2), (0, 0, -1, -1), (1, 0, -2, -2)),
)

# Side length of the harvested pentagon in generation-0 units: (2+tau)*tau.
_PENTAGON_SIDE = GoldenInt(1, 3)


def _raw_to_triangles(raw) -> tuple[Triangle, ...]:
    return tuple(Triangle.make(TriangleKind(kind), CycloPoint(*apex),
                               CycloPoint(*b0), CycloPoint(*b1))
                 for kind, apex, b0, b1 in raw)


def _mirror_twin_across_base(t: Triangle) -> Triangle:
    return Triangle.make(t.kind, t.base0 + t.base1 - t.apex, t.base0, t.base1)


def _sorted_parts(parts: Iterable[Triangle]) -> tuple[Triangle, ...]:
    return tuple(sorted(parts, key=lambda t: (t.kind.value, t.apex.coords(),
                                              sorted((t.base0.coords(), t.base1.coords())))))


@dataclass(frozen=True)
class Template:
    kind: CompositeKind
    parts: tuple[Triangle, ...]

    def __len__(self) -> int:
        return len(self.parts)


def _pentagon_small_parts() -> tuple[Triangle, ...]:
    return _raw_to_triangles(_SMALL55_RAW)


def _pentagon_big_parts() -> tuple[Triangle, ...]:
    out = []
    for t in _pentagon_small_parts():
        grown = t.transform(lambda p: p * TAU)
        out.extend(deflate_triangle(grown))
    return tuple(out)


def _pentagram_parts() -> tuple[Triangle, ...]:
    core = list(_pentagon_small_parts())
    point = _raw_to_triangles(_POINT25_RAW)
    parts = core
    corner = ZERO
    side = ONE * _PENTAGON_SIDE
    for k in range(5):
        rot = EPS1 ** ((2 * k) % 10)
        for t in point:
            parts.append(t.transform(lambda p: (p * rot) + corner))
        corner = corner + side
        side = side.rotate72()
    return tuple(parts)


def _trapezoid_parts() -> tuple[Triangle, ...]:
    l0 = ZERO
    l1 = ONE * TAU2            # long base end, tau^2 along x
    l2 = CycloPoint(1, 1, 0, -1)
    l3 = TAU_C.rotate72()      # tau at 72 degrees
    mid = TAU_C                # long base split: tau + 1 = tau^2
    return (
        Triangle.make(TriangleKind.OBTUSE, mid, l0, l2),
        Triangle.make(TriangleKind.OBTUSE, l3, l0, l2),
        Triangle.make(TriangleKind.ACUTE, l2, mid, l1),
    )


def _boat_parts() -> tuple[Triangle, ...]:
    trap = list(_trapezoid_parts())
    l0 = ZERO
    l1 = ONE * TAU2
    l2 = CycloPoint(1, 1, 0, -1)
    l3 = TAU_C.rotate72()
    out_apex_mult = CycloPoint(0, -1, -1, 0)  # tau * conj(eps): outward apex
    parts = trap
    for c0, c1 in ((l1, l2), (l2, l3), (l3, l0)):
        apex = c0 + (c1 - c0) * out_apex_mult
        big = Triangle.make(TriangleKind.ACUTE, apex, c0, c1)
        parts.extend(deflate_triangle(big))
    return tuple(parts)


@cache
def templates() -> dict[CompositeKind, Template]:
    acute = canonical_acute()
    obtuse = canonical_obtuse()
    deltoid_twin = Triangle.make(TriangleKind.ACUTE, ZERO, TAU_C,
                                 (TAU_C * EPS1).conj())
    table = {
        CompositeKind.THIN_RHOMB: (acute, _mirror_twin_across_base(acute)),
        CompositeKind.THICK_RHOMB: (obtuse, _mirror_twin_across_base(obtuse)),
        CompositeKind.DELTOID: (acute, deltoid_twin),
        CompositeKind.TRAPEZOID: _trapezoid_parts(),
        CompositeKind.PENTAGON_SMALL: _pentagon_small_parts(),
        CompositeKind.PENTAGON_BIG: _pentagon_big_parts(),
        CompositeKind.PENTAGRAM: _pentagram_parts(),
        CompositeKind.BOAT: _boat_parts(),
    }
    return {kind: Template(kind, _sorted_parts(parts))
            for kind, parts in table.items()}


def template_fingerprint() -> str:
    """SHA-256 over the canonical serialization of all template geometry."""
    h = hashlib.sha256()
    for kind in sorted(templates(), key=lambda k: k.value):
        h.update(kind.value.encode())
        for t in templates()[kind].parts:
            h.update(t.kind.value.encode())
            for p in t.points():
                h.update(repr(p.coords()).encode())
    return h.hexdigest()


@dataclass(frozen=True, slots=True)
class Isometry:
    """One of the 20 decagonal point isometries plus a translation:
    p -> rot36^j (conj(p) if mirror else p) + shift."""

    rot: int
    mirror: bool
    shift: CycloPoint

    def apply(self, p: CycloPoint) -> CycloPoint:
        q = p.conj() if self.mirror else p
        return q * (EPS1 ** self.rot) + self.shift


@dataclass(frozen=True)
class Group:
    kind: CompositeKind
    indices: tuple[int, ...]
    iso: Isometry | None = None


@dataclass(frozen=True)
class CompositeTiling:
    patch: Patch
    groups: tuple[Group, ...]

    def coverage(self) -> float:
        if not self.patch.triangles:
            return 0.0
        grouped = sum(len(g.indices) for g in self.groups
                      if g.kind not in SINGLETON_KINDS)
        return grouped / len(self.patch.triangles)


def _tri_key(kind: TriangleKind, apex: CycloPoint, b0: CycloPoint, b1: CycloPoint):
    return (kind.value, apex.coords(),
            frozenset((b0.coords(), b1.coords())))


def _patch_scale_exponent(patch: Patch) -> int:
    """m such that patch legs are tau^m times the canonical leg; raises if
    the patch is not at a tau-power scale."""
    leg = patch.triangles[0].leg_sq()
    probe = TAU2
    if leg == probe:
        return 0
    up = probe
    down = probe
    inv2 = (TAU ** -1) ** 2
    for m in range(1, 65):
        up = up * TAU * TAU
        down = down * inv2
        if leg == up:
            return m
        if leg == down:
            return -m
    raise ValueError("patch edge length is not a tau-power of the canonical leg")


def _canonical_index_order(patch: Patch) -> tuple[list[int], int]:
    """Anchor iteration order from a rotation-canonical frame.

    Among the five 72-degree rotations of the patch, take the one whose
    sorted triangle-key tuple is smallest, and order triangles by their
    keys in that frame.  Rotating a patch then rotates the order with it,
    which makes greedy grouping covariant under 72-degree rotation (up to
    the unavoidable ties of patches that are themselves 5-fold symmetric).
    """
    tris = patch.triangles

    def keys_under(points_by_tri):
        return [(tris[i].kind.value, pts[0].coords(),
                 tuple(sorted((pts[1].coords(), pts[2].coords()))))
                for i, pts in enumerate(points_by_tri)]

    points = [list(t.points()) for t in tris]
    best = None
    for k in range(5):
        frame_keys = keys_under(points)
        candidate = sorted(frame_keys)
        if best is None or candidate < best[0]:
            best = (candidate, frame_keys, k)
        points = [[p.rotate72() for p in pts] for pts in points]
    frame_keys, k_star = best[1], best[2]
    return sorted(range(len(tris)), key=lambda i: frame_keys[i]), k_star


def detect_composites(patch: Patch,
                      policy: Sequence[CompositeKind]) -> CompositeTiling:
    """Greedy deterministic template matching in policy order.

    Kinds are processed in the given order; anchor triangles run in
    canonical vertex order; a group is claimed exactly when every template
    triangle is present and unclaimed under a single exact isometry.
    Unmatched triangles end as AcuteTriangle/ObtuseTriangle singletons.
    """
    if not policy:
        raise ValueError("policy must name at least one composite kind")
    tris = patch.triangles
    if not tris:
        return CompositeTiling(patch, ())
    scale = TAU ** _patch_scale_exponent(patch)
    index = {_tri_key(t.kind, t.apex, t.base0, t.base1): i
             for i, t in enumerate(tris)}
    claimed = [False] * len(tris)
    order, k_star = _canonical_index_order(patch)
    # isometry iteration order aligned with the canonical frame, so that
    # rotating the patch rotates which candidate wins a tie
    rot_order = [(r0 - 2 * k_star) % 10 for r0 in range(10)]
    groups: list[Group] = []

    for kind in policy:
        if kind in SINGLETON_KINDS:
            continue
        template = templates()[kind]
        scaled = [(t.kind, t.apex * scale, t.base0 * scale, t.base1 * scale,
                   t.chirality) for t in template.parts]
        anchor_kind, anchor_apex, _, _, anchor_chir = scaled[0]
        posed = []
        for rot in rot_order:
            for mirror in (False, True):
                mult = EPS1 ** rot
                posed.append(((rot, mirror), [
                    (k, (a.conj() if mirror else a) * mult,
                     (b0.conj() if mirror else b0) * mult,
                     (b1.conj() if mirror else b1) * mult)
                    for (k, a, b0, b1, _) in scaled]))
        for i in order:
            if claimed[i] or tris[i].kind is not anchor_kind:
                continue
            target = tris[i]
            for (rot, mirror), parts in posed:
                want_chir = -anchor_chir if mirror else anchor_chir
                if target.chirality != want_chir:
                    continue
                shift = target.apex - parts[0][1]
                hit: list[int] = []
                ok = True
                for (k, a, b0, b1) in parts:
                    j = index.get(_tri_key(k, a + shift, b0 + shift, b1 + shift))
                    if j is None or claimed[j]:
                        ok = False
                        break
                    hit.append(j)
                if ok and len(set(hit)) == len(parts):
                    for j in hit:
                        claimed[j] = True
                    groups.append(Group(kind, tuple(sorted(hit)),
                                        Isometry(rot, mirror, shift)))
                    break

    for i in order:
        if not claimed[i]:
            kind = (CompositeKind.ACUTE_TRIANGLE
                    if tris[i].kind is TriangleKind.ACUTE
                    else CompositeKind.OBTUSE_TRIANGLE)
            groups.append(Group(kind, (i,)))
    return CompositeTiling(patch, tuple(groups))


def glue_rhombs(patch: Patch) -> CompositeTiling:
    """Pair mirror twins: acute across their base into thin rhombs, obtuse
    across their base into thick rhombs, and remaining acute twins across
    a leg (shared apex) into deltoids.  Scale-independent."""
    tris = patch.triangles
    claimed = [False] * len(tris)
    order, _ = _canonical_index_order(patch)
    rank = {i: pos for pos, i in enumerate(order)}
    groups: list[Group] = []

    base_map: dict[tuple, list[int]] = {}
    for i, t in enumerate(tris):
        key = (t.kind.value, tuple(sorted((t.base0.coords(), t.base1.coords()))))
        base_map.setdefault(key, []).append(i)
    for kind, want in ((CompositeKind.THIN_RHOMB, TriangleKind.ACUTE),
                       (CompositeKind.THICK_RHOMB, TriangleKind.OBTUSE)):
        for i in order:
            if claimed[i] or tris[i].kind is not want:
                continue
            key = (want.value, tuple(sorted((tris[i].base0.coords(),
                                             tris[i].base1.coords()))))
            twins = [j for j in base_map[key] if j != i and not claimed[j]
                     and tris[j].apex != tris[i].apex]
            if twins:
                j = min(twins, key=rank.__getitem__)
                claimed[i] = claimed[j] = True
                groups.append(Group(kind, tuple(sorted((i, j)))))

    leg_map: dict[tuple, list[int]] = {}
    for i, t in enumerate(tris):
        if claimed[i] or t.kind is not TriangleKind.ACUTE:
            continue
        for b in (t.base0, t.base1):
            leg_map.setdefault((t.apex.coords(), b.coords()), []).append(i)
    for i in order:
        if claimed[i] or tris[i].kind is not TriangleKind.ACUTE:
            continue
        t = tris[i]
        partners = []
        for b in (t.base0, t.base1):
            for j in leg_map.get((t.apex.coords(), b.coords()), ()):
                if j != i and not claimed[j] and tris[j].chirality != t.chirality:
                    partners.append(j)
        if partners:
            j = min(partners, key=rank.__getitem__)
            claimed[i] = claimed[j] = True
            groups.append(Group(CompositeKind.DELTOID, tuple(sorted((i, j)))))

    for i in order:
        if not claimed[i]:
            kind = (CompositeKind.ACUTE_TRIANGLE
                    if tris[i].kind is TriangleKind.ACUTE
                    else CompositeKind.OBTUSE_TRIANGLE)
            groups.append(Group(kind, (i,)))
    return CompositeTiling(patch, tuple(groups))


def count_tiles(tiling: CompositeTiling) -> dict[CompositeKind, int]:
    out: dict[CompositeKind, int] = {}
    for g in tiling.groups:
        out[g.kind] = out.get(g.kind, 0) + 1
    return out


@dataclass(frozen=True)
class GroupingReport:
    ok: bool
    problems: tuple[str, ...] = ()


def verify_grouping(tiling: CompositeTiling) -> GroupingReport:
    """Re-check the partition property and every group's geometry.

    Template groups are re-verified by applying the recorded isometry to
    the template and demanding exact triangle equality; pair groups from
    glue_rhombs are re-verified structurally (mirror twin across the
    shared edge); singletons must be lone triangles of their kind.
    """
    problems: list[str] = []
    seen: set[int] = set()
    tris = tiling.patch.triangles
    for g in tiling.groups:
        for i in g.indices:
            if i in seen:
                problems.append(f"triangle {i} appears in two groups")
            seen.add(i)
    if seen != set(range(len(tris))):
        problems.append("groups do not cover the triangle set")

    scale = None
    for g in tiling.groups:
        if g.kind in SINGLETON_KINDS:
            want = (TriangleKind.ACUTE if g.kind is CompositeKind.ACUTE_TRIANGLE
                    else TriangleKind.OBTUSE)
            if len(g.indices) != 1 or tris[g.indices[0]].kind is not want:
                problems.append(f"bad singleton group {g}")
            continue
        if g.iso is None:
            ok = _verify_pair(tris, g)
            if not ok:
                problems.append(f"pair group failed re-verification: {g}")
            continue
        if scale is None:
            scale = TAU ** _patch_scale_exponent(tiling.patch)
        got = {_tri_key(tris[i].kind, tris[i].apex, tris[i].base0, tris[i].base1)
               for i in g.indices}
        want_keys = set()
        for t in templates()[g.kind].parts:
            a = g.iso.apply(t.apex * scale)
            b0 = g.iso.apply(t.base0 * scale)
            b1 = g.iso.apply(t.base1 * scale)
            want_keys.add(_tri_key(t.kind, a, b0, b1))
        if got != want_keys:
            problems.append(f"isometry re-verification failed for {g.kind.value} "
                            f"at indices {g.indices}")
    return GroupingReport(not problems, tuple(problems))


def _verify_pair(tris: Sequence[Triangle], g: Group) -> bool:
    if len(g.indices) != 2:
        return False
    t1, t2 = (tris[i] for i in g.indices)
    if t1.kind is not t2.kind or t1.chirality == t2.chirality:
        return False
    if g.kind in (CompositeKind.THIN_RHOMB, CompositeKind.THICK_RHOMB):
        want = (TriangleKind.ACUTE if g.kind is CompositeKind.THIN_RHOMB
                else TriangleKind.OBTUSE)
        if t1.kind is not want:
            return False
        same_base = {t1.base0, t1.base1} == {t2.base0, t2.base1}
        return same_base and t1.apex != t2.apex
    if g.kind is CompositeKind.DELTOID:
        if t1.kind is not TriangleKind.ACUTE or t1.apex != t2.apex:
            return False
        shared = {t1.base0, t1.base1} & {t2.base0, t2.base1}
        return len(shared) == 1
    return False
