"""Batch verification suites behind ``qbcap verify``.

Samples are drawn sequentially from the suite's named stream and then
evaluated, optionally in threads; results are gathered by index so the
report does not depend on the worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .capacity import capacity_from_spectra, local_gap, total_hamiltonian
from .gates import PermutationGate
from .hamiltonians import LONGITUDINAL, TRANSVERSE, ModelSpec
from .linalg import DensityMatrix, batch_eigenvalues, partial_trace_array
from .mintime import (
    PROTOCOL_COORDINATES,
    cartan_algebra_checks,
    invariants_from_coordinates,
    local_invariants,
)
from .protocol2 import gain_condition, gate_action_identities
from .protocol3 import TABLE1, coherence_split_3q, preserved_ic, table1_action, table1_prediction
from .qmp import slacks_2q, slacks_3q
from .sampling import DEFAULT_SEED, random_density_arrays, random_local_unitary, random_unitary, stream

SUITES = ("tradeoff2", "tradeoff3", "qmp", "theorem2", "theorem4", "gate-identities", "table1", "cartan")

CAPACITY_TOL = 1e-9
IDENTITY_TOL = 1e-12
EQUIVALENCE_TOL = 1e-9


@dataclass
class SuiteResult:
    suite: str
    n: int
    violations: int
    max_violation_magnitude: float
    seconds: float
    first_violation_index: int | None = None

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "violations": self.violations,
            "max_violation_magnitude": self.max_violation_magnitude,
            "seconds": self.seconds,
            "first_violation_index": self.first_violation_index,
        }


def tradeoff_models() -> list[ModelSpec]:
    """The eight interacting two-qubit models checked by ``tradeoff2``."""
    out = []
    for axis in (LONGITUDINAL, TRANSVERSE):
        out += [
            ModelSpec.ising(axis=axis),
            ModelSpec.xx(axis=axis),
            ModelSpec.xxz(axis=axis, alpha=0.5),
            ModelSpec.xxx(axis=axis),
        ]
    return out


def _local_spreads(states: np.ndarray, qubits: int) -> np.ndarray:
    """(n, qubits) array of lambda_max - lambda_min of each one-qubit marginal."""
    cols = []
    for q in range(qubits):
        red = partial_trace_array(states, (q,), qubits)
        a, d, b = red[:, 0, 0].real, red[:, 1, 1].real, red[:, 0, 1]
        cols.append(np.sqrt((a - d) ** 2 + 4 * np.abs(b) ** 2))
    return np.stack(cols, axis=1)


def _collect(per_sample: np.ndarray):
    """per_sample: violation magnitude per sample, <= 0 meaning no violation."""
    bad = np.flatnonzero(per_sample > 0)
    first = int(bad[0]) if bad.size else None
    mag = float(per_sample[bad].max()) if bad.size else 0.0
    return int(bad.size), mag, first


def _chunked(func, items: list, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def _tradeoff(states: np.ndarray, qubits: int, specs: list[ModelSpec], dominance: bool) -> np.ndarray:
    lam = batch_eigenvalues(states)
    spreads = _local_spreads(states, qubits)
    worst = np.full(len(states), -np.inf)
    for spec in specs:
        total = capacity_from_spectra(lam, total_hamiltonian(spec).spectrum.values)
        sub = local_gap(spec) * spreads.sum(axis=1)
        worst = np.maximum(worst, sub - total - CAPACITY_TOL)
        if dominance:
            free = capacity_from_spectra(lam, total_hamiltonian(spec.free()).spectrum.values)
            worst = np.maximum(worst, free - total - CAPACITY_TOL)
    return worst


def suite_tradeoff2(n: int, rng, workers: int = 1) -> np.ndarray:
    states = random_density_arrays(2, n, rng)
    return _tradeoff(states, 2, tradeoff_models(), dominance=True)


def suite_tradeoff3(n: int, rng, workers: int = 1) -> np.ndarray:
    states = random_density_arrays(3, n, rng)
    specs = [ModelSpec.h0(axis=LONGITUDINAL, qubits=3), ModelSpec.h0(axis=TRANSVERSE, qubits=3)]
    return _tradeoff(states, 3, specs, dominance=False)


def suite_qmp(n: int, rng, workers: int = 1) -> np.ndarray:
    """n two-qubit states plus max(1, n // 10) three-qubit states."""
    two = random_density_arrays(2, n, rng)
    three = random_density_arrays(3, max(1, n // 10), rng)
    lam2 = batch_eigenvalues(two)
    la = batch_eigenvalues(partial_trace_array(two, (0,), 2))
    lb = batch_eigenvalues(partial_trace_array(two, (1,), 2))
    v2 = -slacks_2q(lam2, la, lb).min(axis=1)
    lam3 = batch_eigenvalues(three)
    deltas = np.sort(_local_spreads(three, 3), axis=1)
    v3 = -slacks_3q(lam3, deltas).min(axis=1)
    return np.concatenate([v2, v3]) - 1e-10


def _implication(qubits: int, n: int, rng, workers: int) -> np.ndarray:
    dim = 2**qubits
    states = random_density_arrays(qubits, n, rng)
    unitaries = [random_unitary(dim, rng) for _ in range(n)]

    def check(k):
        cond, gain = gain_condition(DensityMatrix(states[k], qubits), unitaries[k])
        return 1.0 if cond and not gain else -1.0

    return np.array(_chunked(check, list(range(n)), workers))


def suite_theorem2(n: int, rng, workers: int = 1) -> np.ndarray:
    return _implication(2, n, rng, workers)


def suite_theorem4(n: int, rng, workers: int = 1) -> np.ndarray:
    return _implication(3, n, rng, workers)


TWO_QUBIT_GATES = tuple(PermutationGate(i, j) for i, j in ((1, 4), (2, 3), (1, 2), (3, 4), (1, 3), (2, 4)))


def suite_gate_identities(n: int, rng, workers: int = 1) -> np.ndarray:
    states = random_density_arrays(2, n, rng)
    spec = ModelSpec.h0()

    def check(k):
        rho = DensityMatrix(states[k], 2)
        errs = [c.error for g in TWO_QUBIT_GATES for c in gate_action_identities(rho, g, spec)]
        return max(errs) - IDENTITY_TOL

    return np.array(_chunked(check, list(range(n)), workers))


def suite_table1(n: int, rng, workers: int = 1) -> np.ndarray:
    states = random_density_arrays(3, n, rng)

    def check(k):
        rho = DensityMatrix(states[k], 3)
        before = coherence_split_3q(rho)
        worst = 0.0
        for g in TABLE1:
            after = table1_action(rho, g)
            pred = table1_prediction(rho, g)
            worst = max(worst, *(abs(a - p) for a, p in zip(after.coherent(), pred)))
            for name in preserved_ic(g):
                key = "ic_" + name
                worst = max(worst, abs(getattr(after, key) - getattr(before, key)))
        return worst - IDENTITY_TOL

    return np.array(_chunked(check, list(range(n)), workers))


def suite_cartan(n: int, rng, workers: int = 1) -> np.ndarray:
    """Sample k: invariance of a random gate's invariants under random local unitaries.

    The closure relations and the protocol-gate round trips are folded into sample 0.
    """
    out = np.empty(n)
    for k in range(n):
        u = random_unitary(4, rng)
        v1, v2 = random_local_unitary(rng), random_local_unitary(rng)
        a, b = local_invariants(u), local_invariants(v1 @ u @ v2)
        err = max(abs(a.chi1 - b.chi1), abs(a.chi2 - b.chi2))
        out[k] = err - EQUIVALENCE_TOL
    closure = max(c.residual for c in cartan_algebra_checks()) - IDENTITY_TOL
    round_trip = max(
        max(abs(x.chi1 - y.chi1), abs(x.chi2 - y.chi2))
        for g, c in PROTOCOL_COORDINATES.items()
        for x, y in [(local_invariants(g.matrix(4)), invariants_from_coordinates(c))]
    ) - 1e-10
    out[0] = max(out[0], closure, round_trip)
    return out


_RUNNERS = {
    "tradeoff2": suite_tradeoff2,
    "tradeoff3": suite_tradeoff3,
    "qmp": suite_qmp,
    "theorem2": suite_theorem2,
    "theorem4": suite_theorem4,
    "gate-identities": suite_gate_identities,
    "table1": suite_table1,
    "cartan": suite_cartan,
}


def run_suite(name: str, n: int, seed: int = DEFAULT_SEED, workers: int = 1) -> SuiteResult:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if n < 1:
        raise ValueError("n must be >= 1")
    t0 = time.perf_counter()
    per_sample = _RUNNERS[name](n, stream(name, seed), workers)
    count, mag, first = _collect(per_sample)
    return SuiteResult(name, n, count, mag, time.perf_counter() - t0, first)
