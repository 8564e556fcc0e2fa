"""NumPy reference implementation of the hot loops (see _ckernels.pyx)."""
from __future__ import annotations

import math

import numpy as np


def _row_bounds(minv_row, rp, c, rho):
    mid = minv_row[2] * c[0] + minv_row[3] * c[1]
    half = math.hypot(minv_row[0], minv_row[1]) * rp + math.hypot(minv_row[2], minv_row[3]) * rho
    return math.floor(mid - half), math.ceil(mid + half)


def lattice_points(m, minv, par_radius, cx, cy, perp_radius, residue_mod=0):
    """Integer 4-vectors n with |M[:2] n| <= par_radius and |M[2:] n - c| <= perp_radius.

    ``m`` maps n to (par_x, par_y, perp_x, perp_y).  With ``residue_mod`` > 0
    points whose coordinate sum is divisible by it are dropped.
    Rows are returned in lexicographic order.
    """
    m = np.ascontiguousarray(m, dtype=np.float64)
    minv = np.ascontiguousarray(minv, dtype=np.float64)
    c = (cx, cy)
    lo1, hi1 = _row_bounds(minv[0], par_radius, c, perp_radius)
    lo2, hi2 = _row_bounds(minv[1], par_radius, c, perp_radius)
    w = m[2:, 2:]
    winv = np.linalg.inv(w)
    h3 = math.hypot(*winv[0]) * perp_radius
    h4 = math.hypot(*winv[1]) * perp_radius
    n2 = np.arange(lo2, hi2 + 1)
    r2p = par_radius * par_radius
    r2q = perp_radius * perp_radius
    chunks = []
    for n1 in range(lo1, hi1 + 1):
        tx = cx - n1 * m[2, 0] - n2 * m[2, 1]
        ty = cy - n1 * m[3, 0] - n2 * m[3, 1]
        mid3 = winv[0, 0] * tx + winv[0, 1] * ty
        mid4 = winv[1, 0] * tx + winv[1, 1] * ty
        lo3 = np.floor(mid3 - h3).astype(np.int64)
        lo4 = np.floor(mid4 - h4).astype(np.int64)
        span3 = int(np.max(np.ceil(mid3 + h3).astype(np.int64) - lo3)) + 1
        span4 = int(np.max(np.ceil(mid4 + h4).astype(np.int64) - lo4)) + 1
        d3, d4 = np.meshgrid(np.arange(span3), np.arange(span4), indexing="ij")
        d3 = d3.ravel()
        d4 = d4.ravel()
        a2 = np.repeat(n2, d3.size)
        a3 = (lo3[:, None] + d3[None, :]).ravel()
        a4 = (lo4[:, None] + d4[None, :]).ravel()
        a1 = np.full(a2.shape, n1, dtype=np.int64)
        f1, f2, f3, f4 = (a.astype(np.float64) for a in (a1, a2, a3, a4))
        # same operation order as the compiled kernel, so both agree bitwise
        px = m[0, 0] * f1 + m[0, 1] * f2 + m[0, 2] * f3 + m[0, 3] * f4
        py = m[1, 0] * f1 + m[1, 1] * f2 + m[1, 2] * f3 + m[1, 3] * f4
        qx = m[2, 0] * f1 + m[2, 1] * f2 + m[2, 2] * f3 + m[2, 3] * f4 - cx
        qy = m[3, 0] * f1 + m[3, 1] * f2 + m[3, 2] * f3 + m[3, 3] * f4 - cy
        ok = (px * px + py * py <= r2p) & (qx * qx + qy * qy <= r2q)
        if residue_mod:
            ok &= ((a1 + a2 + a3 + a4) % residue_mod) != 0
        if ok.any():
            sel = np.stack([a1[ok], a2[ok], a3[ok], a4[ok]], axis=1)
            chunks.append(sel)
    if not chunks:
        return np.zeros((0, 4), dtype=np.int64)
    out = np.concatenate(chunks).astype(np.int64)
    order = np.lexsort(out.T[::-1])
    return out[order]


def classify_points(pts, poly, eps):
    """0 outside, 1 strictly inside, 2 within eps of the boundary (ccw convex poly)."""
    pts = np.asarray(pts, dtype=np.float64)
    poly = np.asarray(poly, dtype=np.float64)
    worst = np.full(len(pts), np.inf)
    k = len(poly)
    for i in range(k):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % k]
        length = math.hypot(x1 - x0, y1 - y0)
        s = ((x1 - x0) * (pts[:, 1] - y0) - (y1 - y0) * (pts[:, 0] - x0)) / length
        worst = np.minimum(worst, s)
    out = np.full(len(pts), 2, dtype=np.int8)
    out[worst > eps] = 1
    out[worst < -eps] = 0
    return out


def count_matches(sorted_keys, bases, deltas):
    """For each base b: 1 if every b + d (d in deltas) is among sorted_keys."""
    keys = np.asarray(sorted_keys, dtype=np.int64)
    bases = np.asarray(bases, dtype=np.int64)
    ok = np.ones(len(bases), dtype=bool)
    if len(keys) == 0:
        return np.zeros(len(bases), dtype=np.uint8) if len(deltas) else ok.astype(np.uint8)
    for d in np.asarray(deltas, dtype=np.int64):
        q = bases + d
        idx = np.searchsorted(keys, q)
        idx[idx >= len(keys)] = len(keys) - 1
        ok &= keys[idx] == q
    return ok.astype(np.uint8)
