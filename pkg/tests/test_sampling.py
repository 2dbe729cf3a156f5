import numpy as np
import pytest
from hypothesis import given, strategies as st

from qbcap.sampling import (
    DEFAULT_SEED,
    random_density_arrays,
    random_density_matrix,
    random_local_unitary,
    random_unitary,
    stream,
)

seeds = st.integers(0, 2**64 - 1)


def test_default_seed():
    assert DEFAULT_SEED == 0xB0CA9


def test_streams_reproducible_and_independent():
    a = stream("tradeoff2", 7).standard_normal(5)
    assert np.array_equal(a, stream("tradeoff2", 7).standard_normal(5))
    assert not np.array_equal(a, stream("qmp", 7).standard_normal(5))
    assert not np.array_equal(a, stream("tradeoff2", 8).standard_normal(5))


def test_bad_seed():
    with pytest.raises(ValueError):
        stream("x", -1)


@given(seeds, st.sampled_from([2, 3]))
def test_density_arrays_valid(seed, qubits):
    stack = random_density_arrays(qubits, 5, stream("d", seed))
    assert stack.shape == (5, 2**qubits, 2**qubits)
    for m in stack:
        assert np.allclose(m, m.conj().T)
        assert abs(np.trace(m) - 1) < 1e-12
        assert np.linalg.eigvalsh(m).min() > -1e-12


def test_full_rank_and_validates():
    rho = random_density_matrix(3, stream("fr", 1))
    rho.validate()
    assert np.linalg.eigvalsh(rho.matrix).min() > 0


def test_bad_qubits():
    with pytest.raises(ValueError):
        random_density_arrays(4, 1)
    with pytest.raises(ValueError):
        random_unitary(2)


@given(seeds, st.sampled_from([4, 8]))
def test_unitary(seed, dim):
    u = random_unitary(dim, stream("u", seed))
    assert np.allclose(u @ u.conj().T, np.eye(dim), atol=1e-12)


def test_haar_moment():
    # E|U_11|^2 = 1/d and E|U_11|^4 = 2/(d(d+1)) for Haar measure
    s = stream("haar", 3)
    x = np.array([abs(random_unitary(4, s)[0, 0]) ** 2 for _ in range(4000)])
    assert x.mean() == pytest.approx(0.25, abs=0.01)
    assert (x**2).mean() == pytest.approx(0.1, abs=0.01)


def test_haar_phase_uniform():
    s = stream("phase", 5)
    ph = np.array([np.angle(random_unitary(4, s)[0, 0]) for _ in range(4000)])
    assert abs(np.exp(1j * ph).mean()) < 0.05


def test_local_unitary_is_product():
    u = random_local_unitary(stream("lu", 2))
    assert np.allclose(u @ u.conj().T, np.eye(4), atol=1e-12)
    # a product operator has operator-Schmidt rank 1
    r = u.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    sv = np.linalg.svd(r, compute_uv=False)
    assert sv[1] < 1e-12
