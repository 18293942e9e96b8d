import numpy as np
import pytest

from supertrees import _fallback, spectral
from supertrees.enumeration import enumerate_supertrees
from supertrees.families import hyperstar, loose_path, s1
from supertrees.spectral import SolverOptions, spectral_radius

needs_ext = pytest.mark.skipif("cython" not in spectral.BACKENDS, reason="compiled kernel not built")


@pytest.fixture
def backend():
    saved = spectral.BACKEND
    yield spectral.set_backend
    spectral.set_backend(saved)


def test_fallback_always_available():
    assert "python" in spectral.BACKENDS


def test_unknown_backend(backend):
    with pytest.raises(ValueError):
        backend("fortran")


@needs_ext
def test_apply_parity(rng):
    from supertrees import _kernels

    for G in [loose_path(4, 3), hyperstar(5, 4), s1(9, 5, 6)]:
        edges = np.asarray(G.edges, dtype=np.int64)
        deg = np.asarray(G.degrees, dtype=np.float64)
        x = np.array([rng.uniform(0.1, 2) for _ in range(G.n)])
        for diag in (0.0, 1.0):
            a, b = np.empty(G.n), np.empty(G.n)
            _fallback.apply_tensor(edges, deg, diag, x, a)
            _kernels.apply_tensor(edges, deg, diag, x, b)
            np.testing.assert_allclose(a, b, rtol=1e-14)


@needs_ext
@pytest.mark.parametrize("k", [2, 3, 4])
def test_solver_parity_over_enumeration(backend, k):
    opts = SolverOptions()
    for T in enumerate_supertrees(5, k):
        backend("python")
        a = spectral_radius(T, opts=opts)
        backend("cython")
        b = spectral_radius(T, opts=opts)
        assert a.iterations == b.iterations
        assert abs(a.value - b.value) <= 1e-12
        np.testing.assert_allclose(a.eigenvector, b.eigenvector, atol=1e-12)


@needs_ext
def test_parity_on_adjacency(backend):
    G = s1(8, 4, 3)
    backend("python")
    a = spectral_radius(G, "A")
    backend("cython")
    b = spectral_radius(G, "A")
    assert abs(a.value - b.value) <= 1e-12
