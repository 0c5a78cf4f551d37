"""Cut-and-project generation of 5-fold quasilattices.

Lattice points of Z^5 are split along an orthogonal decomposition of
5-space: a 2D "physical" plane spanned by the five unit vectors projected
at 72-degree spacing, a 2D "internal" plane where the same vectors land at
144-degree spacing, and the symmetric diagonal line.  A point is accepted
when its internal + diagonal projection falls strictly inside the
acceptance window (the projected unit 5-cube, shifted by a chosen offset
gamma), and its physical projection lies within the requested radius.

The physical projection of an accepted point x equals sqrt(2/5) times the
exact plane embedding of its quasilattice reduction (x0-x4, x1-x4, x2-x4,
x3-x4), which ties this module to the exact-arithmetic one.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy.spatial import ConvexHull, cKDTree

from .exact import CycloPoint

__all__ = [
    "ProjectionBasis",
    "Window",
    "QuasiPoint",
    "ScanEntry",
    "projection_basis",
    "build_window",
    "lattice_to_cyclo",
    "generate_quasilattice",
    "scan_offset",
    "symmetric_gamma",
    "LatticeEnumeration",
]

# Strict-interior margin for window acceptance: symmetric partners of a
# boundary point see residuals equal to floating error (~1e-15), far below
# this, so acceptance decisions respect exact symmetries.
WINDOW_MARGIN = 1e-9


@dataclass(frozen=True)
class ProjectionBasis:
    par: np.ndarray    # 2x5, physical plane
    perp: np.ndarray   # 2x5, internal plane
    delta: np.ndarray  # 1x5, symmetric diagonal

    def stacked(self) -> np.ndarray:
        return np.vstack([self.par, self.perp, self.delta])

    def orthogonality_residual(self) -> float:
        q = self.stacked()
        return float(np.abs(q @ q.T - np.eye(5)).max())


def projection_basis() -> ProjectionBasis:
    k = np.arange(5)
    scale = math.sqrt(2.0 / 5.0)
    par = scale * np.vstack([np.cos(2 * np.pi * k / 5), np.sin(2 * np.pi * k / 5)])
    perp = scale * np.vstack([np.cos(4 * np.pi * k / 5), np.sin(4 * np.pi * k / 5)])
    delta = np.full((1, 5), 1.0 / math.sqrt(5.0))
    return ProjectionBasis(par, perp, delta)


@dataclass(frozen=True)
class Window:
    """Convex acceptance polytope in internal+diagonal space as half-space
    rows (unit outward normal, offset): inside means n.x + offset <= 0."""

    normals: np.ndarray
    offsets: np.ndarray
    gamma: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def facet_count(self) -> int:
        return len(self.offsets)

    def shifted(self, gamma: Sequence[float]) -> "Window":
        return replace(self, gamma=tuple(float(g) for g in gamma))

    def residuals(self, points: np.ndarray) -> np.ndarray:
        p = np.atleast_2d(points) - np.asarray(self.gamma)
        return p @ self.normals.T + self.offsets

    def contains(self, points: np.ndarray, margin: float = WINDOW_MARGIN) -> np.ndarray:
        return (self.residuals(points) < -margin).all(axis=1)


def cube_vertex_projections(basis: ProjectionBasis | None = None) -> np.ndarray:
    basis = basis or projection_basis()
    corners = np.array([[(v >> i) & 1 for i in range(5)] for v in range(32)],
                       dtype=float)
    proj = np.vstack([basis.perp, basis.delta])
    return corners @ proj.T


def build_window(basis: ProjectionBasis | None = None) -> Window:
    """Acceptance window: convex hull of the 32 projected 5-cube vertices."""
    pts = cube_vertex_projections(basis)
    hull = ConvexHull(pts)
    eq = hull.equations  # rows (nx, ny, nz, b) with n.x + b <= 0 inside
    window = Window(eq[:, :3].copy(), eq[:, 3].copy())
    inside = window.residuals(pts) <= 1e-9
    if not inside.all():
        raise ArithmeticError("degenerate acceptance window (basis bug?)")
    return window


def lattice_to_cyclo(x: Sequence[int]) -> CycloPoint:
    """Reduce a 5D lattice point to the rank-4 quasilattice basis."""
    x0, x1, x2, x3, x4 = (int(v) for v in x)
    return CycloPoint(x0 - x4, x1 - x4, x2 - x4, x3 - x4)


@dataclass(frozen=True)
class QuasiPoint:
    lattice: tuple[int, int, int, int, int]
    cyclo: CycloPoint
    xy: tuple[float, float]


@dataclass(frozen=True)
class ScanEntry:
    gamma: tuple[float, float, float]
    order: int
    count: int


def symmetric_gamma() -> tuple[float, float, float]:
    """The fully symmetric cut: window centered on the origin.

    The projected-cube window is a zonotope centered at the image of
    (1/2,...,1/2); shifting by minus that center makes the acceptance
    domain invariant under the full 36-degree symmetry (coordinate cycling
    with sign reversal), which is the singular cut where order 10 appears.
    """
    return (0.0, 0.0, -math.sqrt(5.0) / 2.0)


class LatticeEnumeration:
    """Box enumeration of Z^5 with cached projections, reusable across
    window offsets."""

    def __init__(self, box: int, radius: float,
                 basis: ProjectionBasis | None = None,
                 window: Window | None = None):
        if box < 1:
            raise ValueError("box must be >= 1")
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.box = box
        self.radius = radius
        self.basis = basis or projection_basis()
        self.window = window or build_window(self.basis)
        axes = [np.arange(-box, box + 1)] * 5
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 5)
        par_xy = grid @ self.basis.par.T
        keep = (par_xy ** 2).sum(axis=1) <= radius * radius
        self.points = grid[keep]
        self.par_xy = par_xy[keep]
        proj3 = np.vstack([self.basis.perp, self.basis.delta])
        self.internal = self.points @ proj3.T

    def accept(self, gamma: Sequence[float]) -> np.ndarray:
        return self.window.shifted(gamma).contains(self.internal)


def generate_quasilattice(radius: float, gamma: Sequence[float], box: int,
                          enumeration: LatticeEnumeration | None = None,
                          ) -> list[QuasiPoint]:
    """All lattice points within `radius` whose internal projection falls
    strictly inside the gamma-shifted window, sorted by lattice coordinates.

    Warns when accepted points touch the enumeration box: the box is then
    too small to guarantee every in-radius point was seen.
    """
    enum = enumeration or LatticeEnumeration(box, radius)
    mask = enum.accept(gamma)
    rows = enum.points[mask]
    xy = enum.par_xy[mask]
    order = np.lexsort(rows.T[::-1])
    out = []
    for i in order:
        lattice = tuple(int(v) for v in rows[i])
        out.append(QuasiPoint(lattice, lattice_to_cyclo(lattice),
                              (float(xy[i][0]), float(xy[i][1]))))
    if rows.size and int(np.abs(rows).max()) >= enum.box:
        warnings.warn(
            f"accepted points reach the enumeration box (+-{enum.box}); "
            "increase box to saturate the radius", stacklevel=2)
    return out


def _float_symmetry_order(xy: np.ndarray, tol: float) -> int:
    """Largest n in {10, 5, 2, 1} whose rotation maps the float point set
    onto itself under nearest-neighbour matching within tol."""
    if len(xy) == 0:
        return 1
    tree = cKDTree(xy)
    for n in (10, 5, 2):
        theta = 2 * math.pi / n
        c, s = math.cos(theta), math.sin(theta)
        rot = np.array([[c, -s], [s, c]])
        dist, _ = tree.query(xy @ rot.T, k=1)
        if float(dist.max()) <= tol:
            return n
    return 1


def scan_offset(path: Sequence[Sequence[float]], radius: float, box: int,
                enumeration: LatticeEnumeration | None = None) -> list[ScanEntry]:
    """Generate the quasilattice for each offset and report its measured
    rotational symmetry order about the accepted point nearest the origin."""
    if len(path) == 0:
        raise ValueError("path must contain at least one gamma")
    enum = enumeration or LatticeEnumeration(box, radius)
    tol = 1e-6 * radius
    out = []
    for gamma in path:
        mask = enum.accept(gamma)
        xy = enum.par_xy[mask]
        count = int(mask.sum())
        if count == 0:
            out.append(ScanEntry(tuple(float(g) for g in gamma), 1, 0))
            continue
        norms = (xy ** 2).sum(axis=1)
        near = np.flatnonzero(norms == norms.min())
        if len(near) > 1:
            rows = enum.points[mask][near]
            near = near[np.lexsort(rows.T[::-1])[:1]]
        center = xy[near[0]]
        order = _float_symmetry_order(xy - center, tol)
        out.append(ScanEntry(tuple(float(g) for g in gamma), order, count))
    return out
