"""Schwarz lantern meshes inscribed in a right circular cylinder.

Vertex ``(k, j)`` for ring ``j = 0..m`` and ``k = 0..n-1`` sits at angle
``(2k + j % 2) * pi / n`` and height ``j * a / m``; odd rings are rotated by
half a step so every band is a staggered strip of ``2n`` congruent isosceles
triangles. Vertex ``(k, j)`` has flat index ``j * n + k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._kernels_py import ring_xy
from .ga3 import Bivector3, Vector3, wedge

MESH_TRIANGLE_CAP = 10**8
# Coarse vertices examined per vectorized step in check_nesting.
_NESTING_CHUNK = 1 << 22


class ParameterError(ValueError):
    pass


class MeshTooLargeError(ValueError):
    """Requested mesh exceeds ``MESH_TRIANGLE_CAP`` triangles."""


def _is_int(v) -> bool:
    return isinstance(v, (int, np.integer)) and not isinstance(v, bool)


@dataclass(frozen=True)
class LanternParams:
    """Lantern of ``n`` angular subdivisions and ``m`` bands.

    ``a`` is the cylinder height and ``radius`` its radius.
    """

    n: int
    m: int
    a: float = 1.0
    radius: float = 1.0

    def __post_init__(self):
        if not _is_int(self.n) or self.n < 3:
            raise ParameterError(f"n must be an integer >= 3, got {self.n!r}")
        if not _is_int(self.m) or self.m < 1:
            raise ParameterError(f"m must be an integer >= 1, got {self.m!r}")
        for name in ("a", "radius"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float, np.floating)) and math.isfinite(v) and v > 0):
                raise ParameterError(f"{name} must be a finite positive number, got {v!r}")

    @property
    def triangle_count(self) -> int:
        return 2 * self.n * self.m

    @property
    def vertex_count(self) -> int:
        return self.n * (self.m + 1)


@dataclass(frozen=True)
class Triangle:
    v0: Vector3
    v1: Vector3
    v2: Vector3


@dataclass(frozen=True, eq=False)
class TriangleMesh:
    """Indexed triangle mesh; ``vertices`` is (N, 3) float, ``triangles`` (T, 3) int."""

    params: LanternParams
    vertices: np.ndarray
    triangles: np.ndarray

    def triangle(self, t: int) -> Triangle:
        a, b, c = (Vector3(*map(float, self.vertices[i])) for i in self.triangles[t])
        return Triangle(a, b, c)


def _ring_heights(p: LanternParams) -> np.ndarray:
    return np.arange(p.m + 1, dtype=np.float64) * (p.a / p.m)


def lantern_vertices(p: LanternParams) -> np.ndarray:
    """Vertex coordinates of the lantern, shape ``(n*(m+1), 3)``."""
    rings = ring_xy(p.n, float(p.radius))
    parity = np.arange(p.m + 1) % 2
    xy = rings[parity]  # (m+1, n, 2)
    z = np.broadcast_to(_ring_heights(p)[:, None, None], (p.m + 1, p.n, 1))
    return np.concatenate([xy, z], axis=-1).reshape(-1, 3)


def _lantern_triangles(n: int, m: int) -> np.ndarray:
    k = np.arange(n, dtype=np.int64)
    kp1 = (k + 1) % n
    j = np.arange(m, dtype=np.int64)[:, None]
    lo = j * n + k
    lo_next = j * n + kp1
    up = (j + 1) * n + k
    up_next = (j + 1) * n + kp1
    even = (j % 2) == 0
    # upright (L_k, L_k+1, apex); apex U_k on even bands, U_k+1 on odd
    upright = np.stack([lo, lo_next, np.where(even, up, up_next)], axis=-1)
    # inverted (apex, U_k+1, U_k); apex L_k+1 on even bands, L_k on odd
    inverted = np.stack([np.where(even, lo_next, lo), up_next, up], axis=-1)
    return np.stack([upright, inverted], axis=2).reshape(-1, 3)


def check_mesh_cap(p: LanternParams) -> None:
    if p.triangle_count > MESH_TRIANGLE_CAP:
        raise MeshTooLargeError(
            f"lantern n={p.n}, m={p.m} has {p.triangle_count} triangles "
            f"(cap {MESH_TRIANGLE_CAP})")


def generate_lantern(p: LanternParams) -> TriangleMesh:
    """Materialize the lantern mesh.

    Triangles are ordered band by band, alternating upright and inverted,
    and wound so the dual of each triangle bivector points away from the
    axis.

    Raises
    ------
    MeshTooLargeError
        If ``2*n*m`` exceeds ``MESH_TRIANGLE_CAP``.
    """
    check_mesh_cap(p)
    return TriangleMesh(p, lantern_vertices(p), _lantern_triangles(p.n, p.m))


def apex_edges(p: LanternParams) -> tuple[Vector3, Vector3]:
    """Edge vectors ``r, s`` of the apex triangle, free of cancellation.

    ``R*cos(pi/n) - R`` is evaluated as ``-2*R*sin(pi/(2n))**2``.
    """
    R = float(p.radius)
    sx = R * math.sin(math.pi / p.n)
    dy = -2.0 * R * math.sin(math.pi / (2 * p.n)) ** 2
    dz = p.a / p.m
    return Vector3(sx, dy, dz), Vector3(-sx, dy, dz)


def apex_triangle(p: LanternParams) -> Triangle:
    """Triangle with apex ``(0, R, 0)`` and base in the plane ``z = a/m``.

    ``v1`` is the base vertex on the ``+x`` side. The mesh contains a
    congruent copy with opposite winding.
    """
    R = float(p.radius)
    apex = Vector3(0.0, R, 0.0)
    x = R * math.sin(math.pi / p.n)
    y = R * math.cos(math.pi / p.n)
    z = p.a / p.m
    return Triangle(apex, Vector3(x, y, z), Vector3(-x, y, z))


def triangle_bivector(t: Triangle) -> Bivector3:
    """``(v1 - v0) ^ (v2 - v0) / 2``; its norm is the triangle's area."""
    return wedge(t.v1 - t.v0, t.v2 - t.v0) * 0.5


def mesh_area(mesh: TriangleMesh) -> float:
    return kernels.impl.mesh_area(mesh.vertices, mesh.triangles)


def closed_form_area(p: LanternParams) -> float:
    """``2 n m R sin(pi/n) sqrt(R^2 (1 - cos(pi/n))^2 + (a/m)^2)``."""
    R = float(p.radius)
    n, m = p.n, p.m
    one_minus_cos = 2.0 * math.sin(math.pi / (2 * n)) ** 2
    per_triangle = R * math.sin(math.pi / n) * math.hypot(R * one_minus_cos, p.a / m)
    return 2.0 * n * float(m) * per_triangle


def lantern_sums(p: LanternParams) -> tuple[float, float]:
    """(area, tangent-projected area) without materializing the mesh."""
    check_mesh_cap(p)
    return kernels.impl.lantern_sums(float(p.radius), float(p.a), p.n, p.m)


def _nearest_ring_distance(coarse_xy: np.ndarray, fine_xy: np.ndarray) -> np.ndarray:
    """For each coarse point, planar distance to the nearest fine point.

    Fine points are sorted by polar angle; each query checks its two
    angular neighbours.
    """
    fa = np.arctan2(fine_xy[:, 1], fine_xy[:, 0])
    order = np.argsort(fa, kind="stable")
    fa = fa[order]
    fxy = fine_xy[order]
    ca = np.arctan2(coarse_xy[:, 1], coarse_xy[:, 0])
    hi = np.searchsorted(fa, ca) % len(fa)
    lo = (hi - 1) % len(fa)
    d_hi = np.hypot(*(coarse_xy - fxy[hi]).T)
    d_lo = np.hypot(*(coarse_xy - fxy[lo]).T)
    return np.minimum(d_hi, d_lo)


def check_nesting(p_coarse: LanternParams, p_fine: LanternParams, tol: float | None = None) -> bool:
    """True iff every coarse vertex lies within ``tol`` of some fine vertex.

    Rings share their planar coordinates by parity, so the planar nearest
    distances are computed once per (coarse parity, fine parity) pair and
    combined with the height offsets of the fine rings near each coarse
    ring. Neither mesh is materialized.
    """
    if p_coarse.radius != p_fine.radius or p_coarse.a != p_fine.a:
        raise ParameterError("nesting compares lanterns on the same cylinder")
    if tol is None:
        tol = 1e-9 * max(float(p_coarse.radius), float(p_coarse.a))
    c_rings = ring_xy(p_coarse.n, float(p_coarse.radius))
    f_rings = ring_xy(p_fine.n, float(p_fine.radius))
    planar = np.array([[_nearest_ring_distance(c_rings[pc], f_rings[pf]) for pf in (0, 1)]
                       for pc in (0, 1)])  # (2, 2, n_coarse)
    dz_f = p_fine.a / p_fine.m
    span = int(math.ceil(2 * tol / dz_f)) + 2
    rows = max(1, _NESTING_CHUNK // (p_coarse.n * span))
    for j0 in range(0, p_coarse.m + 1, rows):
        j = np.arange(j0, min(p_coarse.m + 1, j0 + rows))
        z_c = j * (p_coarse.a / p_coarse.m)
        lo = np.clip(np.floor((z_c - tol) / dz_f).astype(np.int64), 0, p_fine.m)
        hi = np.clip(np.ceil((z_c + tol) / dz_f).astype(np.int64), 0, p_fine.m)
        best = np.full((len(j), p_coarse.n), np.inf)
        for d in range(span):
            l = lo + d
            dz = np.abs(l * dz_f - z_c)
            ok = (l <= hi) & (dz <= tol)
            if not ok.any():
                continue
            dist = np.hypot(planar[j % 2, l % 2], dz[:, None])
            best = np.where(ok[:, None], np.minimum(best, dist), best)
        if not np.all(best <= tol):
            return False
    return True
