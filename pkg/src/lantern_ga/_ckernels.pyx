# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same API as ``_kernels_py``."""
import numpy as np

from libc.math cimport sqrt, fabs, cos, sin, M_PI


# plain sums within a block, compensated across blocks
cdef Py_ssize_t BLOCK = 512


cdef struct Acc:
    double s
    double c


cdef inline void acc_add(Acc* a, double x) noexcept nogil:
    # Neumaier compensated summation
    cdef double t = a.s + x
    if fabs(a.s) >= fabs(x):
        a.c += (a.s - t) + x
    else:
        a.c += (x - t) + a.s
    a.s = t


cdef inline void half_wedge(const double* v0, const double* v1, const double* v2,
                            double* out) noexcept nogil:
    cdef double e1x = v1[0] - v0[0], e1y = v1[1] - v0[1], e1z = v1[2] - v0[2]
    cdef double e2x = v2[0] - v0[0], e2y = v2[1] - v0[1], e2z = v2[2] - v0[2]
    out[0] = 0.5 * (e1x * e2y - e1y * e2x)
    out[1] = 0.5 * (e1x * e2z - e1z * e2x)
    out[2] = 0.5 * (e1y * e2z - e1z * e2y)


cdef inline double projected_term(const double* v0, const double* v1,
                                  const double* v2, const double* b) noexcept nogil:
    cdef double cx = (v0[0] + v1[0] + v2[0]) / 3.0
    cdef double cy = (v0[1] + v1[1] + v2[1]) / 3.0
    return fabs(b[2] * cx - b[1] * cy) / sqrt(cx * cx + cy * cy)


cdef inline double norm3(const double* b) noexcept nogil:
    return sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2])


def triangle_bivectors(vertices, triangles):
    cdef double[:, ::1] V = np.ascontiguousarray(vertices, dtype=np.float64)
    cdef long long[:, ::1] T = np.ascontiguousarray(triangles, dtype=np.int64)
    out_arr = np.empty((T.shape[0], 3), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t t
    with nogil:
        for t in range(T.shape[0]):
            half_wedge(&V[T[t, 0], 0], &V[T[t, 1], 0], &V[T[t, 2], 0], &out[t, 0])
    return out_arr


def mesh_area(vertices, triangles):
    cdef double[:, ::1] V = np.ascontiguousarray(vertices, dtype=np.float64)
    cdef long long[:, ::1] T = np.ascontiguousarray(triangles, dtype=np.int64)
    cdef double b[3]
    cdef Acc acc = Acc(0.0, 0.0)
    cdef double block
    cdef Py_ssize_t t, start, stop, nt = T.shape[0]
    with nogil:
        start = 0
        while start < nt:
            stop = min(start + BLOCK, nt)
            block = 0.0
            for t in range(start, stop):
                half_wedge(&V[T[t, 0], 0], &V[T[t, 1], 0], &V[T[t, 2], 0], b)
                block += norm3(b)
            acc_add(&acc, block)
            start = stop
    return acc.s + acc.c


def projected_area(vertices, triangles):
    cdef double[:, ::1] V = np.ascontiguousarray(vertices, dtype=np.float64)
    cdef long long[:, ::1] T = np.ascontiguousarray(triangles, dtype=np.int64)
    cdef double b[3]
    cdef Acc acc = Acc(0.0, 0.0)
    cdef double block
    cdef Py_ssize_t t, start, stop, nt = T.shape[0]
    cdef const double* v0
    cdef const double* v1
    cdef const double* v2
    with nogil:
        start = 0
        while start < nt:
            stop = min(start + BLOCK, nt)
            block = 0.0
            for t in range(start, stop):
                v0 = &V[T[t, 0], 0]
                v1 = &V[T[t, 1], 0]
                v2 = &V[T[t, 2], 0]
                half_wedge(v0, v1, v2, b)
                block += projected_term(v0, v1, v2, b)
            acc_add(&acc, block)
            start = stop
    return acc.s + acc.c


def ring_xy(Py_ssize_t n, double radius):
    """Ring coordinates for both stagger parities, shape (2, n, 2)."""
    out_arr = np.empty((2, n, 2), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    cdef Py_ssize_t p, k
    cdef double theta
    cdef double step = M_PI / n
    for p in range(2):
        for k in range(n):
            theta = (2 * k + p) * step
            out[p, k, 0] = radius * cos(theta)
            out[p, k, 1] = radius * sin(theta)
    return out_arr


def lantern_sums(double radius, double height, Py_ssize_t n, long long m):
    """Total and tangent-projected area of the (n, m) lantern, streamed by band."""
    rings = ring_xy(n, radius)
    cdef double[:, :, ::1] R = rings
    cdef double dz = height / m
    cdef Acc area = Acc(0.0, 0.0)
    cdef Acc proj = Acc(0.0, 0.0)
    cdef double band_area, band_proj
    cdef double L[3]
    cdef double Ln[3]
    cdef double U[3]
    cdef double Un[3]
    cdef double b[3]
    cdef double* apex
    cdef long long j
    cdef Py_ssize_t k, kp1
    cdef int p, q
    with nogil:
        for j in range(m):
            p = <int>(j % 2)
            q = 1 - p
            L[2] = j * dz
            Ln[2] = L[2]
            U[2] = (j + 1) * dz
            Un[2] = U[2]
            band_area = 0.0
            band_proj = 0.0
            for k in range(n):
                kp1 = k + 1
                if kp1 == n:
                    kp1 = 0
                L[0] = R[p, k, 0]
                L[1] = R[p, k, 1]
                Ln[0] = R[p, kp1, 0]
                Ln[1] = R[p, kp1, 1]
                U[0] = R[q, k, 0]
                U[1] = R[q, k, 1]
                Un[0] = R[q, kp1, 0]
                Un[1] = R[q, kp1, 1]
                if p == 0:
                    apex = &U[0]
                else:
                    apex = &Un[0]
                half_wedge(L, Ln, apex, b)
                band_area += norm3(b)
                band_proj += projected_term(L, Ln, apex, b)
                if p == 0:
                    apex = &Ln[0]
                else:
                    apex = &L[0]
                half_wedge(apex, Un, U, b)
                band_area += norm3(b)
                band_proj += projected_term(apex, Un, U, b)
            # plain sums within a band, compensated across bands
            acc_add(&area, band_area)
            acc_add(&proj, band_proj)
    return area.s + area.c, proj.s + proj.c
