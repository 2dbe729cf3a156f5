import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from qbcap.errors import BadSpec, DimensionMismatch
from qbcap.hamiltonians import (
    LONGITUDINAL,
    TRANSVERSE,
    FieldAxis,
    Model,
    ModelSpec,
    build_h0,
    build_model,
    custom_hamiltonian,
    h0_dominance_check,
    hamiltonian,
    subsystem_hamiltonian,
)
from qbcap.sampling import random_density_matrix, stream


def spectrum(spec):
    return hamiltonian(spec).spectrum.values


class TestH0:
    def test_longitudinal(self):
        assert np.allclose(spectrum(ModelSpec.h0()), [-2, 0, 0, 2], atol=1e-12)

    def test_transverse(self):
        r = 2 * math.sqrt(2)
        assert np.allclose(spectrum(ModelSpec.h0(axis=TRANSVERSE)), [-r, 0, 0, r], atol=1e-12)

    @given(st.tuples(*[st.floats(-2, 2)] * 3).filter(lambda e: np.linalg.norm(e) > 1e-3))
    def test_general_field(self, comps):
        r = 2 * float(np.linalg.norm(comps))
        spec = ModelSpec.h0(axis=FieldAxis.general(*comps))
        assert np.allclose(spectrum(spec), [-r, 0, 0, r], atol=1e-9)

    @pytest.mark.parametrize("axis", ["longitudinal", "transverse"])
    def test_three_qubit_symmetric(self, axis):
        vals = spectrum(ModelSpec.h0(axis=axis, qubits=3))
        assert np.allclose(vals, -vals[::-1], atol=1e-12)
        assert np.allclose(vals, oracles.eigvals(oracles.h0(axis, 3)), atol=1e-12)

    def test_requires_non_interacting(self):
        with pytest.raises(BadSpec):
            build_h0(ModelSpec.ising())


class TestModels:
    def test_transverse_ising(self):
        assert np.allclose(spectrum(ModelSpec.ising(axis=TRANSVERSE, J=1.0)), [-3, -1, 1, 3], atol=1e-12)

    def test_longitudinal_ising(self):
        assert np.allclose(spectrum(ModelSpec.ising(J=0.5)), [-2.5, 0.5, 0.5, 1.5], atol=1e-12)

    def test_longitudinal_xx(self):
        assert np.allclose(spectrum(ModelSpec.xx(J=0.3, alpha=1.0)), [-2, -0.6, 0.6, 2], atol=1e-12)

    @pytest.mark.parametrize("model", ["Ising", "XX", "XXZ", "XXX"])
    @pytest.mark.parametrize("axis", ["longitudinal", "transverse"])
    def test_closed_forms(self, model, axis):
        rng = np.random.default_rng(hash((model, axis)) % 2**32)
        for _ in range(50):
            E, J = rng.uniform(0.1, 2), rng.uniform(0.01, 2)
            alpha = {"Ising": 0.0, "XXX": 1.0}.get(model, rng.uniform(0.05, 1) * rng.choice([-1, 1]))
            beta = {"XX": 0.0}.get(model, 1.0)
            spec = ModelSpec(qubits=2, axis=axis, E=E, J=J, alpha=alpha, beta=beta, model=model)
            expected = oracles.appendix_b_spectrum(model, axis, E, J, alpha)
            assert np.allclose(spectrum(spec), expected, atol=1e-9)

    def test_hermitian(self):
        for spec in (ModelSpec.xxz(axis=TRANSVERSE, alpha=0.3), ModelSpec.xxx()):
            m = hamiltonian(spec).matrix
            assert np.abs(m - m.conj().T).max() <= 1e-12

    def test_build_model_rejects_three_qubits(self):
        with pytest.raises(BadSpec):
            build_model(ModelSpec(qubits=3, J=1, beta=1, model="Ising"))

    def test_j_zero_equals_free(self):
        a = spectrum(ModelSpec(J=0.0, beta=1.0, model="Ising"))
        assert np.allclose(a, spectrum(ModelSpec.h0()))


class TestSpecValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(J=-1.0),
            dict(alpha=1.5),
            dict(model="Ising", J=1, alpha=0.5, beta=1),
            dict(model="XX", J=1, alpha=0.0, beta=0),
            dict(model="XXZ", J=1, alpha=0.5, beta=0.5),
            dict(model="XXX", J=1, alpha=0.5, beta=1),
            dict(qubits=4),
            dict(model="Nonsense"),
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(BadSpec):
            ModelSpec(**kwargs)

    def test_general_axis_nonzero(self):
        with pytest.raises(BadSpec):
            FieldAxis.general(0, 0, 0)

    def test_json_round_trip(self):
        for spec in (ModelSpec.xxz(axis=TRANSVERSE, alpha=-0.4, J=0.7), ModelSpec.h0(axis=FieldAxis.general(1, 2, 3))):
            again = ModelSpec.from_json(json.loads(spec.dumps()))
            assert again == spec
            assert set(spec.to_json()) == {"qubits", "axis", "E", "J", "alpha", "beta", "model"}

    def test_json_defaults_per_model(self):
        spec = ModelSpec.from_json('{"model": "Ising", "J": 0.5}')
        assert (spec.alpha, spec.beta) == (0.0, 1.0)

    def test_json_unknown_key(self):
        with pytest.raises(BadSpec):
            ModelSpec.from_json('{"Jz": 1}')

    def test_custom_needs_matrix(self):
        with pytest.raises(BadSpec):
            hamiltonian(ModelSpec(model=Model.CUSTOM))


class TestSubsystem:
    def test_spectra(self):
        assert np.allclose(subsystem_hamiltonian(ModelSpec.h0(), "A").spectrum.values, [-1, 1])
        r2 = math.sqrt(2)
        assert np.allclose(subsystem_hamiltonian(ModelSpec.h0(axis=TRANSVERSE), "B").spectrum.values, [-r2, r2])
        r3 = math.sqrt(3)
        gen = ModelSpec.h0(axis=FieldAxis.general(1, 1, 1))
        assert np.allclose(subsystem_hamiltonian(gen, "A").spectrum.values, [-r3, r3])

    def test_no_c_for_two_qubits(self):
        with pytest.raises(BadSpec):
            subsystem_hamiltonian(ModelSpec.h0(), "C")


class TestDominance:
    def test_transverse_ising_dominates(self):
        h = hamiltonian(ModelSpec.ising(axis=TRANSVERSE))
        h0 = hamiltonian(ModelSpec.h0(axis=TRANSVERSE))
        s = stream("dominance", 1)
        assert all(h0_dominance_check(random_density_matrix(2, s), h, h0) for _ in range(1000))

    def test_equal(self):
        h0 = hamiltonian(ModelSpec.h0())
        assert h0_dominance_check(random_density_matrix(2, stream("eq", 2)), h0, h0)

    def test_shrunken_custom(self):
        h0 = hamiltonian(ModelSpec.h0())
        small = custom_hamiltonian(0.5 * h0.matrix, ModelSpec.h0())
        s = stream("shrunk", 3)
        for _ in range(20):
            rho = random_density_matrix(2, s)
            expected = oracles.capacity(rho.matrix, small.matrix) >= oracles.capacity(rho.matrix, h0.matrix) - 1e-10
            assert h0_dominance_check(rho, small, h0) == expected

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            h0_dominance_check(
                random_density_matrix(3, stream("x", 0)), hamiltonian(ModelSpec.h0()), hamiltonian(ModelSpec.h0())
            )
