#!/usr/bin/env python3
"""Time the compiled kernels against the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--radius 120] [--repeat 3]

Both backends get identical inputs; results are checked for equality
before any timing is reported.
"""
from __future__ import annotations

import argparse
import random
import time

import numpy as np

from patchfreq import kernels
from patchfreq.dualizer import (_base, _encode, _matrices, _max_radius, _vertex_windows,
                                generate_seeded)


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=float, default=120.0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled extension not built; only the NumPy backend is available")
    m, minv = _matrices("penrose")
    rho = _max_radius(_vertex_windows("penrose").values())
    cx, cy = 0.1234567, -0.0456789
    window = np.array(_vertex_windows("penrose")[1].to_float())

    t = generate_seeded(1, min(args.radius, 60.0), "penrose")
    keys = np.sort(_encode(t.tile_anchor, t.tile_class))
    bases = _base(t.vertices)
    rng = random.Random(0)
    sample = rng.sample(range(len(t.tiles)), 6)
    deltas = _encode(t.tile_anchor[sample] - t.tile_anchor[sample[0]], t.tile_class[sample])

    results = {}
    for name, impl in impls.items():
        tl, pts = best_of(lambda: impl.lattice_points(m, minv, args.radius + 2, cx, cy, rho, 5),
                          args.repeat)
        perp = np.array([cx, cy]) - pts.astype(np.float64) @ m[2:].T
        tc, cls = best_of(lambda: impl.classify_points(perp, window, 1e-9), args.repeat)
        tm, hits = best_of(lambda: impl.count_matches(keys, bases, deltas), args.repeat)
        results[name] = (tl, tc, tm, pts, cls, hits)

    ref = results["python"]
    for name, r in results.items():
        for a, b in zip(r[3:], ref[3:]):
            if not np.array_equal(a, b):
                raise SystemExit(f"backend {name} disagrees with the NumPy reference")

    n = len(ref[3])
    print(f"radius {args.radius}: {n} candidate lifts, {len(bases)} match bases")
    print(f"{'backend':8s} {'lattice_points':>15s} {'classify':>10s} {'count_matches':>14s}")
    for name, (tl, tc, tm, *_rest) in results.items():
        print(f"{name:8s} {tl * 1e3:13.1f}ms {tc * 1e3:8.1f}ms {tm * 1e3:12.1f}ms")
    if "cython" in results:
        c, p = results["cython"], results["python"]
        print("speedup  " + "  ".join(f"{p[i] / c[i]:.1f}x" for i in range(3)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
