import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybridclust import kernels
from hybridclust import _kernels_py

compiled = pytest.mark.skipif("compiled" not in kernels.BACKENDS, reason="extension not built")


@pytest.fixture
def restore_backend():
    name = kernels.backend_name()
    yield
    kernels.use_backend(name)


def _table(seed, n, ties):
    rng = np.random.default_rng(seed)
    a = rng.integers(1, 4, (n, n)).astype(float) if ties else rng.exponential(size=(n, n))
    t = np.triu(a, 1) + np.triu(a, 1).T
    if n > 2 and rng.random() < 0.3:
        t[0, 1] = t[1, 0] = np.inf
    return t


@compiled
@settings(max_examples=100, deadline=None)
@given(n=st.integers(1, 14), data=st.data(), seed=st.integers(0, 2**32 - 1), ties=st.booleans())
def test_hac_backends_agree(n, data, seed, ties):
    target = data.draw(st.integers(1, n))
    t = _table(seed, n, ties)
    la, ha = kernels.BACKENDS["python"].hac_merge(t, target)
    lb, hb = kernels.BACKENDS["compiled"].hac_merge(t, target)
    assert np.array_equal(la, lb)
    assert [h[:2] for h in ha] == [h[:2] for h in hb]
    # bit-identical linkage values (same summation order)
    assert [h[2] for h in ha] == [h[2] for h in hb]


@compiled
@settings(max_examples=100, deadline=None)
@given(n_cl=st.integers(1, 6), m=st.integers(1, 5), seed=st.integers(0, 2**32 - 1), ties=st.booleans())
def test_round_robin_backends_agree(n_cl, m, seed, ties):
    rng = np.random.default_rng(seed)
    d = rng.integers(0, 3, (n_cl * m, n_cl)).astype(float) if ties else rng.random((n_cl * m, n_cl))
    a = kernels.BACKENDS["python"].round_robin(d, m)
    b = kernels.BACKENDS["compiled"].round_robin(d, m)
    assert np.array_equal(a, b)
    assert sorted(a.ravel().tolist()) == list(range(n_cl * m))


def test_round_robin_does_not_modify_input():
    d = np.arange(8.0).reshape(4, 2)
    before = d.copy()
    for mod in kernels.BACKENDS.values():
        assert mod.round_robin(d, 2).tolist() == [[0, 2], [1, 3]]
    assert np.array_equal(d, before)


def test_use_backend(restore_backend):
    kernels.use_backend("python")
    assert kernels.backend_name() == "python"
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_python_merge_history_distances():
    t = np.array([[0, 1, 4], [1, 0, 2], [4, 2, 0]], float)
    labels, hist = _kernels_py.hac_merge(t, 1)
    assert hist == [(0, 1, 1.0), (0, 1, 3.0)]
    assert labels.tolist() == [0, 0, 0]


def test_high_level_results_identical_across_backends(restore_backend):
    from hybridclust.ahp import AoConfig, mkm_ahp
    from hybridclust.fhp import hac_fhp
    from conftest import draw_instance

    results = {}
    for backend in kernels.BACKENDS:
        kernels.use_backend(backend)
        rng = np.random.default_rng(11)
        _, comb, f_opt = draw_instance(rng)
        f = hac_fhp(f_opt, 5).F
        a = mkm_ahp(f_opt, 4, AoConfig(), rng, h_eq=comb.H_eq).precoder.F
        results[backend] = (f, a)
    ref = results["python"]
    assert all(np.array_equal(v[0], ref[0]) and np.array_equal(v[1], ref[1]) for v in results.values())


def test_falls_back_to_python_without_extension():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['hybridclust._kernels'] = None\n"
        "from hybridclust import kernels\n"
        "print(kernels.backend_name(), sorted(kernels.BACKENDS))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True).stdout
    assert out.split()[0] == "python"
