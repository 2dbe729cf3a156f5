"""The compiled and plain-numpy kernels must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qbcap import _accel, _kernels


def herm(seed, dim):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return np.ascontiguousarray(g + g.conj().T)


@given(st.integers(0, 2**31), st.sampled_from([2, 4, 8]))
def test_jacobi_paths_agree(seed, dim):
    a = herm(seed, dim)
    w1, _, s1 = _kernels.jacobi_eigh(a, _kernels.OFF_TOL, _kernels.MAX_SWEEPS)
    w2, _, s2 = _kernels.jacobi_eigh_numpy(a, _kernels.OFF_TOL, _kernels.MAX_SWEEPS)
    assert s1 >= 0 and s2 >= 0
    assert np.allclose(np.sort(w1), np.sort(w2), atol=1e-12)


def test_batch_paths_agree():
    stack = np.array([herm(k, 4) for k in range(50)])
    a, sa = _kernels.batch_eigvalsh(stack, _kernels.OFF_TOL, _kernels.MAX_SWEEPS)
    b, sb = _kernels.batch_eigvalsh_numpy(stack, _kernels.OFF_TOL, _kernels.MAX_SWEEPS)
    assert np.all(sa >= 0) and np.all(sb >= 0)
    assert np.allclose(a, b, atol=1e-12)


def test_sweep_budget_reports_failure():
    a = herm(1, 8)
    _, _, sweeps = _kernels.jacobi_eigh_numpy(a, _kernels.OFF_TOL, 0)
    assert sweeps == -1


def test_python_impl_unwraps():
    f = _accel.python_impl(_kernels.jacobi_eigh)
    assert f is _kernels._jacobi_eigh


@pytest.mark.skipif(not _accel.NUMBA_ENABLED, reason="numba not active")
def test_env_flag_disables_numba():
    env = dict(os.environ, QBCAP_DISABLE_NUMBA="1")
    code = "from qbcap import _accel, _kernels; print(_accel.NUMBA_ENABLED, hasattr(_kernels.jacobi_eigh, 'py_func'))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", "False"]
