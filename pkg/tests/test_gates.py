import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from qbcap.errors import IndexOutOfRange
from qbcap.gates import PermutationGate, U, apply_gate, apply_gates, matches_pattern, placement, reorder, sort_gates
from qbcap.linalg import DensityMatrix
from qbcap.sampling import random_density_matrix, stream

seeds = st.integers(0, 2**32 - 1)


def test_normalizes_order():
    assert U(4, 1) == U(1, 4) and str(U(4, 1)) == "U14"


@pytest.mark.parametrize("text", ["14", "U14", "u14", "1,4", (1, 4), "(1,4)"])
def test_parse(text):
    assert PermutationGate.parse(text) == U(1, 4)


@pytest.mark.parametrize("bad", [(1, 1), (0, 2), (-1, 3)])
def test_invalid(bad):
    with pytest.raises(IndexOutOfRange):
        PermutationGate(*bad)


def test_out_of_range_for_dim():
    with pytest.raises(IndexOutOfRange):
        U(1, 5).matrix(4)
    with pytest.raises(IndexOutOfRange):
        PermutationGate.parse("145")


def test_matrix_is_involution():
    for i, j in itertools.combinations(range(1, 9), 2):
        m = U(i, j).matrix(8)
        assert np.array_equal(m @ m, np.eye(8))
        assert np.array_equal(m, oracles.transposition(8, i, j))


@given(seeds, st.integers(1, 8), st.integers(1, 8))
def test_apply_matches_matrix(seed, i, j):
    if i == j:
        return
    rho = random_density_matrix(3, stream("gate", seed))
    u = oracles.transposition(8, i, j)
    assert np.array_equal(apply_gate(rho, U(i, j)).matrix, u @ rho.matrix @ u.T)


def test_json_round_trip():
    assert PermutationGate.parse(U(2, 3).to_json()) == U(2, 3)


@given(st.lists(st.floats(0, 1), min_size=8, max_size=8), st.permutations(range(1, 9)))
def test_sort_gates_reach_pattern(values, pattern):
    d = np.array(values)
    gates = sort_gates(d, pattern)
    assert len(gates) <= 7
    rho = DensityMatrix(np.diag(d), 3)
    out = apply_gates(rho, gates).diagonal()
    assert matches_pattern(out, pattern)
    assert np.allclose(out, placement(d, pattern)) or np.allclose(np.sort(out), np.sort(d))


def test_already_sorted_needs_no_gates():
    assert sort_gates(np.array([0.4, 0.3, 0.2, 0.1]), (1, 2, 3, 4)) == []


def test_ties_no_gate():
    assert sort_gates(np.array([0.25] * 4), (4, 3, 2, 1)) == []


def test_reorder_preserves_spectrum(rng):
    rho = DensityMatrix(oracles.ginibre_state(4, rng), 2)
    new, gates = reorder(rho, (4, 3, 2, 1))
    assert np.allclose(oracles.eigvals(new.matrix), oracles.eigvals(rho.matrix))
    assert matches_pattern(new.diagonal(), (4, 3, 2, 1))
