"""Pure numpy implementation of the hot mesh kernels.

Mirrors ``_ckernels.pyx`` function for function; used when the compiled
extension is unavailable and as a cross-check for it.
"""
import math

import numpy as np

# Bands per chunk in the streamed lantern sums; bounds peak memory.
_CHUNK_TRIANGLES = 1 << 20


def _half_wedge(v0, v1, v2):
    e1 = v1 - v0
    e2 = v2 - v0
    out = np.empty(e1.shape, dtype=np.float64)
    out[..., 0] = 0.5 * (e1[..., 0] * e2[..., 1] - e1[..., 1] * e2[..., 0])
    out[..., 1] = 0.5 * (e1[..., 0] * e2[..., 2] - e1[..., 2] * e2[..., 0])
    out[..., 2] = 0.5 * (e1[..., 1] * e2[..., 2] - e1[..., 2] * e2[..., 1])
    return out


def _projected_terms(biv, v0, v1, v2):
    cx = (v0[..., 0] + v1[..., 0] + v2[..., 0]) / 3.0
    cy = (v0[..., 1] + v1[..., 1] + v2[..., 1]) / 3.0
    rho = np.hypot(cx, cy)
    return np.abs(biv[..., 2] * cx - biv[..., 1] * cy) / rho


def _corners(vertices, triangles):
    vertices = np.asarray(vertices, dtype=np.float64)
    triangles = np.asarray(triangles, dtype=np.int64)
    return vertices[triangles[:, 0]], vertices[triangles[:, 1]], vertices[triangles[:, 2]]


def triangle_bivectors(vertices, triangles):
    return _half_wedge(*_corners(vertices, triangles))


def mesh_area(vertices, triangles):
    biv = triangle_bivectors(vertices, triangles)
    return float(np.sqrt(np.einsum("ij,ij->i", biv, biv)).sum())


def projected_area(vertices, triangles):
    v0, v1, v2 = _corners(vertices, triangles)
    biv = _half_wedge(v0, v1, v2)
    return float(_projected_terms(biv, v0, v1, v2).sum())


def ring_xy(n, radius):
    """Ring coordinates for both stagger parities, shape (2, n, 2)."""
    q = np.arange(2 * n, dtype=np.float64)
    theta = q * (math.pi / n)
    xy = np.stack([radius * np.cos(theta), radius * np.sin(theta)], axis=-1)
    # parity p uses angles (2k + p) * pi / n
    return np.stack([xy[0::2], xy[1::2]])


def lantern_sums(radius, height, n, m):
    """Total and tangent-projected area of the (n, m) lantern.

    Triangles are produced band by band from the same vertex formula and
    connectivity as the materialized mesh, without storing the mesh.
    """
    rings = ring_xy(n, radius)
    k = np.arange(n)
    kp1 = (k + 1) % n
    dz = height / m
    bands_per_chunk = max(1, _CHUNK_TRIANGLES // (2 * n))
    area_parts = []
    proj_parts = []
    for j0 in range(0, m, bands_per_chunk):
        js = np.arange(j0, min(m, j0 + bands_per_chunk))
        z_lo = (js * dz)[:, None]
        z_hi = ((js + 1) * dz)[:, None]
        par = (js % 2)[:, None]
        lo = rings[par, k[None, :]]
        lo_next = rings[par, kp1[None, :]]
        up = rings[1 - par, k[None, :]]
        up_next = rings[1 - par, kp1[None, :]]

        def lift(xy, z):
            return np.concatenate([xy, np.broadcast_to(z, xy.shape[:-1])[..., None]], axis=-1)

        L = lift(lo, z_lo)
        Ln = lift(lo_next, z_lo)
        U = lift(up, z_hi)
        Un = lift(up_next, z_hi)
        even = (par == 0)[..., None]
        # upright: (L_k, L_k+1, apex) with apex U_k (even) or U_k+1 (odd)
        up_apex = np.where(even, U, Un)
        # inverted: (apex, U_k+1, U_k) with apex L_k+1 (even) or L_k (odd)
        inv_apex = np.where(even, Ln, L)
        for v0, v1, v2 in ((L, Ln, up_apex), (inv_apex, Un, U)):
            biv = _half_wedge(v0, v1, v2)
            area_parts.append(np.sqrt(np.einsum("...i,...i->...", biv, biv)).sum())
            proj_parts.append(_projected_terms(biv, v0, v1, v2).sum())
    return math.fsum(area_parts), math.fsum(proj_parts)
