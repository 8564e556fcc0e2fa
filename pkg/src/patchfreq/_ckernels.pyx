# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in _pykernels.py (same signatures and results)."""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor, ceil, sqrt, hypot, INFINITY

cnp.import_array()


cdef inline void _bounds(double[:, ::1] minv, int row, double rp, double cx, double cy,
                         double rho, long *lo, long *hi):
    cdef double mid = minv[row, 2] * cx + minv[row, 3] * cy
    cdef double half = hypot(minv[row, 0], minv[row, 1]) * rp + hypot(minv[row, 2], minv[row, 3]) * rho
    lo[0] = <long>floor(mid - half)
    hi[0] = <long>ceil(mid + half)


def lattice_points(m_in, minv_in, double par_radius, double cx, double cy,
                   double perp_radius, long residue_mod=0):
    cdef double[:, ::1] m = np.ascontiguousarray(m_in, dtype=np.float64)
    cdef double[:, ::1] minv = np.ascontiguousarray(minv_in, dtype=np.float64)
    cdef long lo1, hi1, lo2, hi2
    _bounds(minv, 0, par_radius, cx, cy, perp_radius, &lo1, &hi1)
    _bounds(minv, 1, par_radius, cx, cy, perp_radius, &lo2, &hi2)
    cdef double det = m[2, 2] * m[3, 3] - m[2, 3] * m[3, 2]
    cdef double w00 = m[3, 3] / det, w01 = -m[2, 3] / det
    cdef double w10 = -m[3, 2] / det, w11 = m[2, 2] / det
    cdef double h3 = hypot(w00, w01) * perp_radius
    cdef double h4 = hypot(w10, w11) * perp_radius
    cdef double r2p = par_radius * par_radius, r2q = perp_radius * perp_radius
    cdef long n1, n2, n3, n4, lo3, hi3, lo4, hi4, s
    cdef double tx, ty, mid3, mid4, px, py, qx, qy
    cdef Py_ssize_t cap = 1024, count = 0
    out = np.empty((cap, 4), dtype=np.int64)
    cdef long long[:, ::1] buf = out
    for n1 in range(lo1, hi1 + 1):
        for n2 in range(lo2, hi2 + 1):
            tx = cx - n1 * m[2, 0] - n2 * m[2, 1]
            ty = cy - n1 * m[3, 0] - n2 * m[3, 1]
            mid3 = w00 * tx + w01 * ty
            mid4 = w10 * tx + w11 * ty
            lo3 = <long>floor(mid3 - h3)
            hi3 = <long>ceil(mid3 + h3)
            lo4 = <long>floor(mid4 - h4)
            hi4 = <long>ceil(mid4 + h4)
            for n3 in range(lo3, hi3 + 1):
                for n4 in range(lo4, hi4 + 1):
                    if residue_mod > 0:
                        s = (n1 + n2 + n3 + n4) % residue_mod
                        if s == 0:
                            continue
                    px = m[0, 0] * n1 + m[0, 1] * n2 + m[0, 2] * n3 + m[0, 3] * n4
                    py = m[1, 0] * n1 + m[1, 1] * n2 + m[1, 2] * n3 + m[1, 3] * n4
                    if px * px + py * py > r2p:
                        continue
                    qx = m[2, 0] * n1 + m[2, 1] * n2 + m[2, 2] * n3 + m[2, 3] * n4 - cx
                    qy = m[3, 0] * n1 + m[3, 1] * n2 + m[3, 2] * n3 + m[3, 3] * n4 - cy
                    if qx * qx + qy * qy > r2q:
                        continue
                    if count == cap:
                        cap *= 2
                        grown = np.empty((cap, 4), dtype=np.int64)
                        grown[:count] = out[:count]
                        out = grown
                        buf = out
                    buf[count, 0] = n1
                    buf[count, 1] = n2
                    buf[count, 2] = n3
                    buf[count, 3] = n4
                    count += 1
    # loops run in lexicographic order, matching the NumPy version
    return out[:count].copy()


def classify_points(pts_in, poly_in, double eps):
    cdef double[:, ::1] pts = np.ascontiguousarray(pts_in, dtype=np.float64)
    cdef double[:, ::1] poly = np.ascontiguousarray(poly_in, dtype=np.float64)
    cdef Py_ssize_t n = pts.shape[0], k = poly.shape[0], i, j
    out = np.empty(n, dtype=np.int8)
    cdef signed char[::1] res = out
    edges = np.empty((k, 5), dtype=np.float64)
    cdef double[:, ::1] e = edges
    cdef double worst, s, px, py
    # per edge: x0, y0, dx, dy, length (same values the NumPy version uses)
    for j in range(k):
        e[j, 0] = poly[j, 0]
        e[j, 1] = poly[j, 1]
        e[j, 2] = poly[(j + 1) % k, 0] - poly[j, 0]
        e[j, 3] = poly[(j + 1) % k, 1] - poly[j, 1]
        e[j, 4] = hypot(e[j, 2], e[j, 3])
    for i in range(n):
        worst = INFINITY
        px = pts[i, 0]
        py = pts[i, 1]
        for j in range(k):
            s = (e[j, 2] * (py - e[j, 1]) - e[j, 3] * (px - e[j, 0])) / e[j, 4]
            if s < worst:
                worst = s
        if worst > eps:
            res[i] = 1
        elif worst < -eps:
            res[i] = 0
        else:
            res[i] = 2
    return out


def count_matches(sorted_keys, bases_in, deltas_in):
    cdef long long[::1] keys = np.ascontiguousarray(sorted_keys, dtype=np.int64)
    cdef long long[::1] bases = np.ascontiguousarray(bases_in, dtype=np.int64)
    cdef long long[::1] deltas = np.ascontiguousarray(deltas_in, dtype=np.int64)
    cdef Py_ssize_t nb = bases.shape[0], nd = deltas.shape[0], nk = keys.shape[0]
    cdef Py_ssize_t i, j, lo, hi, mid
    cdef long long q
    cdef bint found
    out = np.zeros(nb, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    for i in range(nb):
        found = True
        for j in range(nd):
            q = bases[i] + deltas[j]
            lo = 0
            hi = nk
            while lo < hi:
                mid = (lo + hi) >> 1
                if keys[mid] < q:
                    lo = mid + 1
                else:
                    hi = mid
            if lo == nk or keys[lo] != q:
                found = False
                break
        res[i] = found
    return out
