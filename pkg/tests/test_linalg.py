import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import make_rho_a, make_rho_b
from qbcap.errors import BadSubsystem, InvalidState, LengthMismatch, NotHermitian, NotUnitary
from qbcap.linalg import (
    DensityMatrix,
    Spectrum,
    batch_eigenvalues,
    conjugate,
    dephase,
    hermitian_eigh,
    hermitian_eigenvalues,
    majorizes,
    partial_trace,
)
from qbcap.sampling import random_density_matrix, random_unitary, stream

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_hermitian(dim, rng):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return g + g.conj().T


class TestEigenvalues:
    def test_pauli_z(self):
        assert np.allclose(hermitian_eigenvalues(np.diag([1.0, -1.0])).values, [-1, 1], atol=1e-14)

    def test_rho_a_spectrum(self):
        lam = hermitian_eigenvalues(make_rho_a(1.0).matrix).values
        lo, hi = 0.25 - math.sqrt(5) / 12, 0.25 + math.sqrt(5) / 12
        assert np.allclose(lam, [lo, lo, hi, hi], atol=1e-12)

    @given(seeds, st.sampled_from([2, 4, 8]))
    def test_matches_numpy_and_trace(self, seed, dim):
        h = random_hermitian(dim, np.random.default_rng(seed))
        w, v = hermitian_eigh(h)
        assert np.all(np.diff(w) >= 0)
        assert abs(w.sum() - np.trace(h).real) <= 1e-9
        assert np.allclose(w, oracles.eigvals(h), atol=1e-9)
        assert np.abs(v @ np.diag(w) @ v.conj().T - h).max() <= 1e-9

    def test_large_entries_converge(self):
        h = 1e4 * random_hermitian(8, np.random.default_rng(3))
        assert np.allclose(hermitian_eigenvalues(h).values, oracles.eigvals(h), rtol=1e-12, atol=1e-8)

    def test_degenerate_input(self):
        assert np.allclose(hermitian_eigenvalues(np.eye(4)).values, 1.0)

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))

    def test_batch_matches_single(self, rng):
        stack = np.array([random_hermitian(4, rng) for _ in range(20)])
        out = batch_eigenvalues(stack)
        for k in range(20):
            assert np.allclose(out[k], oracles.eigvals(stack[k]), atol=1e-10)


class TestSpectrum:
    def test_rejects_descending(self):
        with pytest.raises(ValueError):
            Spectrum(np.array([1.0, 0.0]))

    def test_ties_within_tolerance(self):
        Spectrum(np.array([0.5, 0.5 - 1e-12]))

    def test_probability_check(self):
        with pytest.raises(InvalidState) as exc:
            Spectrum(np.array([-0.1, 1.1])).check_probability()
        assert exc.value.invariant == "psd"


class TestDensityMatrix:
    def test_invariants_named(self):
        cases = {
            "hermitian": np.array([[0.5, 0.1], [0.0, 0.5]]),
            "trace": np.diag([0.5, 0.6]),
            "psd": np.diag([1.5, -0.5]),
            "dimension": np.eye(3) / 3,
        }
        for name, m in cases.items():
            with pytest.raises(InvalidState) as exc:
                DensityMatrix.from_array(m)
            assert exc.value.invariant == name

    def test_entry_is_one_based(self):
        rho = make_rho_a(1.0)
        assert rho.entry(1, 2) == pytest.approx(1 / 6)
        assert rho.qubits == 2 and rho.dim == 4

    def test_immutable(self):
        rho = make_rho_b(1.0)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestPartialTrace:
    def test_rho_b_uniform(self):
        for keep in "AB":
            assert np.allclose(partial_trace(make_rho_b(0.7), keep).matrix, np.eye(2) / 2)

    def test_rho_a_keep_b(self):
        a = 0.9
        expected = 0.5 * np.array([[1, 2 * a / 3], [2 * a / 3, 1]])
        assert np.allclose(partial_trace(make_rho_a(a), "B").matrix, expected, atol=1e-14)

    def test_product_state(self, rng):
        r1 = oracles.ginibre_state(2, rng)
        r2 = oracles.ginibre_state(2, rng)
        rho = DensityMatrix(np.kron(r1, r2), 2)
        assert np.allclose(partial_trace(rho, "A").matrix, r1, atol=1e-15)
        assert np.allclose(partial_trace(rho, "B").matrix, r2, atol=1e-15)

    @given(seeds, st.sampled_from([2, 3]))
    def test_against_loop_oracle(self, seed, qubits):
        rho = random_density_matrix(qubits, stream("pt", seed))
        for q, name in enumerate("ABC"[:qubits]):
            red = partial_trace(rho, name)
            assert np.allclose(red.matrix, oracles.reduce_loop(rho.matrix, q, qubits), atol=1e-14)
            assert abs(np.trace(red.matrix) - 1) <= 1e-10
            red.validate()

    def test_two_qubit_marginal_of_three(self, rng):
        rho = DensityMatrix(oracles.ginibre_state(8, rng), 3)
        ac = partial_trace(rho, "AC")
        assert np.allclose(partial_trace(ac, "A").matrix, partial_trace(rho, "A").matrix)
        assert np.allclose(partial_trace(ac, "B").matrix, partial_trace(rho, "C").matrix)

    @pytest.mark.parametrize("keep", ["", "AB", "D", [5]])
    def test_bad_subsystem(self, keep):
        with pytest.raises(BadSubsystem):
            partial_trace(make_rho_b(0.2), keep)


class TestConjugateDephase:
    def test_identity(self):
        rho = make_rho_a(0.4)
        assert np.array_equal(conjugate(rho, np.eye(4)).matrix, rho.matrix)

    def test_u14_display(self):
        u = oracles.transposition(4, 1, 4)
        m = np.arange(16).reshape(4, 4) + 0j
        m = m + m.T
        out = conjugate(DensityMatrix(m, 2), u).matrix
        assert out[0, 0] == m[3, 3] and out[0, 3] == m[3, 0] and out[1, 2] == m[1, 2]

    @given(seeds)
    def test_spectrum_preserved(self, seed):
        s = stream("conj", seed)
        rho = random_density_matrix(2, s)
        u = random_unitary(4, s)
        a = hermitian_eigenvalues(rho.matrix).values
        b = hermitian_eigenvalues(conjugate(rho, u).matrix).values
        assert np.allclose(a, b, atol=1e-9)

    def test_not_unitary(self):
        with pytest.raises(NotUnitary):
            conjugate(make_rho_b(0.5), 2 * np.eye(4))

    def test_dephase_rho_b(self):
        assert np.allclose(dephase(make_rho_b(1.0)).matrix, np.diag([0.5, 0, 0, 0.5]))

    @given(seeds, st.sampled_from([2, 3]))
    def test_dephased_is_majorized(self, seed, qubits):
        rho = random_density_matrix(qubits, stream("deph", seed))
        lam = hermitian_eigenvalues(rho.matrix).values
        assert majorizes(lam, rho.diagonal())


class TestMajorizes:
    def test_pure_vs_mixed(self):
        assert majorizes([1, 0, 0, 0], [0.25] * 4)
        assert not majorizes([0.25] * 4, [1, 0, 0, 0])

    @given(st.lists(st.floats(0, 1), min_size=4, max_size=4).filter(lambda x: sum(x) > 1e-3))
    def test_reflexive(self, xs):
        p = np.array(xs) / sum(xs)
        assert majorizes(p, p)

    @given(st.lists(st.floats(0.01, 1), min_size=4, max_size=4), st.lists(st.floats(0.01, 1), min_size=4, max_size=4))
    def test_partial_sum_oracle(self, xs, ys):
        p, q = np.array(xs) / sum(xs), np.array(ys) / sum(ys)
        ps, qs = sorted(p, reverse=True), sorted(q, reverse=True)
        expected = all(sum(ps[:k]) >= sum(qs[:k]) - 1e-10 for k in range(1, 5))
        assert majorizes(p, q) == expected

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            majorizes([1, 0], [1, 0, 0])
