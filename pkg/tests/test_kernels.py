from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patchfreq import _pykernels, kernels
from patchfreq.dualizer import _matrices, _max_radius, _vertex_windows

compiled = kernels.backends().get("cython")
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def brute_lattice_points(m, par_radius, cx, cy, perp_radius, residue_mod, box):
    rng = np.arange(-box, box + 1)
    g = np.array(np.meshgrid(rng, rng, rng, rng, indexing="ij")).reshape(4, -1).T
    f = g.astype(float)
    par = f @ m[:2].T
    perp = f @ m[2:].T - np.array([cx, cy])
    ok = (np.hypot(par[:, 0], par[:, 1]) <= par_radius * (1 - 1e-12)) & \
        (np.hypot(perp[:, 0], perp[:, 1]) <= perp_radius * (1 - 1e-12))
    if residue_mod:
        ok &= g.sum(axis=1) % residue_mod != 0
    return {tuple(r) for r in g[ok]}


@pytest.mark.parametrize("name, mod", [("penrose", 5), ("ammann-beenker", 0)])
def test_lattice_points_against_brute_force(name, mod):
    m, minv = _matrices(name)
    rho = _max_radius(_vertex_windows(name).values())
    got = {tuple(r) for r in _pykernels.lattice_points(m, minv, 3.0, 0.1, -0.2, rho, mod)}
    want = brute_lattice_points(m, 3.0, 0.1, -0.2, rho, mod, 8)
    assert want <= got
    assert len(got - want) <= 2  # only points sitting on the boundary to within rounding


def test_selected_backend_matches_env():
    assert kernels.BACKEND in ("python", "cython")
    code = "from patchfreq import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, PATCHFREQ_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["penrose", "ammann-beenker"]),
       st.floats(0.5, 12.0), st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))
def test_lattice_points_backends_agree(name, radius, cx, cy):
    m, minv = _matrices(name)
    rho = _max_radius(_vertex_windows(name).values())
    mod = 5 if name == "penrose" else 0
    a = _pykernels.lattice_points(m, minv, radius, cx, cy, rho, mod)
    b = compiled.lattice_points(m, minv, radius, cx, cy, rho, mod)
    assert np.array_equal(a, b)


@needs_ext
@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 400), st.sampled_from([0.0, 1e-9, 1e-3]))
def test_classify_backends_agree(seed, n, eps):
    rng = np.random.default_rng(seed)
    poly = np.array(_vertex_windows("penrose")[2].to_float())
    pts = rng.uniform(-1.5, 1.5, size=(n, 2))
    if n:
        pts[0] = poly[0]  # exactly on a corner
    assert np.array_equal(_pykernels.classify_points(pts, poly, eps),
                          compiled.classify_points(pts, poly, eps))


@needs_ext
@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 300), st.integers(0, 6))
def test_count_matches_backends_agree(seed, n, nd):
    rng = np.random.default_rng(seed)
    keys = np.unique(rng.integers(0, 500, size=n))
    bases = rng.integers(0, 500, size=n)
    deltas = rng.integers(-20, 20, size=nd)
    a = _pykernels.count_matches(keys, bases, deltas)
    b = compiled.count_matches(keys, bases, deltas)
    assert np.array_equal(a, b)


def test_classify_simple_square():
    sq = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    pts = np.array([[0.5, 0.5], [2, 2], [1.0, 0.5]])
    for impl in kernels.backends().values():
        assert list(impl.classify_points(pts, sq, 1e-9)) == [1, 0, 2]


def test_count_matches_simple():
    keys = np.array([1, 3, 5, 7])
    for impl in kernels.backends().values():
        assert list(impl.count_matches(keys, np.array([1, 2, 0]), np.array([0, 2]))) == [1, 0, 0]
        assert list(impl.count_matches(np.array([], dtype=np.int64), np.array([1]), np.array([0]))) == [0]
