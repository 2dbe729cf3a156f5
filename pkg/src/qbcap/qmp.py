"""Spectral compatibility conditions of the quantum marginal problem.

The checkers take spectra, so hypothetical (possibly infeasible) marginals can
be probed. Slack >= 0 means the inequality is satisfied.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadSubsystem
from .linalg import DensityMatrix, Spectrum, hermitian_eigenvalues, partial_trace

SLACK_TOL = 1e-10


@dataclass(frozen=True)
class InequalitySlack:
    inequality_id: str
    slack: float

    @property
    def satisfied(self) -> bool:
        return self.slack >= -SLACK_TOL

    def to_json(self) -> dict:
        return {"inequality_id": self.inequality_id, "slack": self.slack}


def _spectrum(values, n: int, what: str) -> np.ndarray:
    vals = values.values if isinstance(values, Spectrum) else np.asarray(values, dtype=float)
    if vals.shape != (n,):
        raise ValueError(f"{what} needs {n} eigenvalues, got {vals.shape}")
    if abs(vals.sum() - 1.0) > 1e-9:
        raise ValueError(f"{what} eigenvalues sum to {vals.sum()!r}, expected 1")
    return np.sort(vals)


@dataclass(frozen=True)
class MarginalScenario2Q:
    global_: np.ndarray
    local_A: np.ndarray
    local_B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "global_", _spectrum(self.global_, 4, "global spectrum"))
        object.__setattr__(self, "local_A", _spectrum(self.local_A, 2, "local_A"))
        object.__setattr__(self, "local_B", _spectrum(self.local_B, 2, "local_B"))

    @classmethod
    def from_state(cls, rho: DensityMatrix) -> "MarginalScenario2Q":
        if rho.qubits != 2:
            raise BadSubsystem("need a two-qubit state")
        return cls(
            hermitian_eigenvalues(rho.matrix).values,
            hermitian_eigenvalues(partial_trace(rho, "A").matrix).values,
            hermitian_eigenvalues(partial_trace(rho, "B").matrix).values,
        )


@dataclass(frozen=True)
class MarginalScenario3Q:
    """Global spectrum plus the ascending local gaps lambda_max - lambda_min."""

    global_: np.ndarray
    deltas: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "global_", _spectrum(self.global_, 8, "global spectrum"))
        d = tuple(float(x) for x in self.deltas)
        if len(d) != 3:
            raise ValueError("need three local gaps")
        if any(x < -SLACK_TOL or x > 1 + SLACK_TOL for x in d):
            raise ValueError(f"local gaps must lie in [0, 1], got {d}")
        if not (d[0] <= d[1] + SLACK_TOL and d[1] <= d[2] + SLACK_TOL):
            raise ValueError(f"local gaps must be ascending, got {d}")
        object.__setattr__(self, "deltas", d)

    @classmethod
    def from_state(cls, rho: DensityMatrix) -> "MarginalScenario3Q":
        if rho.qubits != 3:
            raise BadSubsystem("need a three-qubit state")
        gaps = []
        for name in "ABC":
            lam = hermitian_eigenvalues(partial_trace(rho, name).matrix).values
            gaps.append(lam[1] - lam[0])
        return cls(hermitian_eigenvalues(rho.matrix).values, tuple(sorted(gaps)))


def slacks_2q(lam: np.ndarray, lam_a: np.ndarray, lam_b: np.ndarray) -> np.ndarray:
    """Slacks of the four two-qubit conditions; arrays may carry a leading batch axis."""
    l0, l1, l2, l3 = (lam[..., k] for k in range(4))
    a0 = lam_a[..., 0]
    b0 = lam_b[..., 0]
    return np.stack(
        [
            a0 - (l0 + l1),
            b0 - (l0 + l1),
            a0 + b0 - (2 * l0 + l1 + l2),
            np.minimum(l3 - l1, l2 - l0) - np.abs(a0 - b0),
        ],
        axis=-1,
    )


IDS_2Q = ("eq3", "eq4", "eq5", "eq6")


def implied_slacks_2q(lam, lam_a, lam_b) -> np.ndarray:
    """Consequences used in the trade-off proof, on the largest local eigenvalues."""
    l1, l2, l3 = (lam[..., k] for k in (1, 2, 3))
    a1 = lam_a[..., 1]
    b1 = lam_b[..., 1]
    return np.stack(
        [l2 + l3 - a1, l2 + l3 - b1, 2 * l3 + l1 + l2 - a1 - b1],
        axis=-1,
    )


IDS_IMPLIED_2Q = ("A1", "A2", "A3")


def slacks_3q(lam: np.ndarray, deltas: np.ndarray) -> np.ndarray:
    """Slacks of the ten three-qubit conditions.

    ``lam`` ascending (index 0 = smallest), ``deltas`` ascending local gaps.
    """
    l = [lam[..., k] for k in range(8)]
    l1, l2, l3, l4, l5, l6, l7, l8 = l
    d1, d2, d3 = (deltas[..., k] for k in range(3))
    rows = [
        (d3, l8 + l7 + l6 + l5 - l4 - l3 - l2 - l1),
        (d2 + d3, 2 * l8 + 2 * l7 - 2 * l2 - 2 * l1),
        (d1 + d2 + d3, 3 * l8 + l7 + l6 + l5 - l4 - l3 - l2 - 3 * l1),
        (-d1 + d2 + d3, l8 + 3 * l7 + l6 + l5 - l4 - l3 - l2 - 3 * l1),
        (-d1 + d2 + d3, 3 * l8 + l7 + l6 + l5 - l4 - l3 - 3 * l2 - l1),
        (d1 + d2 + 2 * d3, 4 * l8 + 2 * l7 + 2 * l6 - 2 * l3 - 2 * l2 - 4 * l1),
        (-d1 + d2 + 2 * d3, 2 * l8 + 4 * l7 + 2 * l6 - 2 * l3 - 2 * l2 - 4 * l1),
        (-d1 + d2 + 2 * d3, 4 * l8 + 2 * l7 + 2 * l5 - 2 * l3 - 2 * l2 - 4 * l1),
        (-d1 + d2 + 2 * d3, 4 * l8 + 2 * l7 + 2 * l6 - 2 * l4 - 2 * l2 - 4 * l1),
        (-d1 + d2 + 2 * d3, 4 * l8 + 2 * l7 + 2 * l6 - 2 * l3 - 4 * l2 - 2 * l1),
    ]
    return np.stack([rhs - lhs for lhs, rhs in rows], axis=-1)


IDS_3Q = tuple(f"E{k}" for k in range(1, 11))


def _report(ids, slacks) -> tuple[bool, list[InequalitySlack]]:
    report = [InequalitySlack(i, float(s)) for i, s in zip(ids, slacks)]
    return all(r.satisfied for r in report), report


def check_2q(s: MarginalScenario2Q) -> tuple[bool, list[InequalitySlack]]:
    """All four two-qubit conditions; returns (passed, per-inequality slacks)."""
    return _report(IDS_2Q, slacks_2q(s.global_, s.local_A, s.local_B))


def check_3q(s: MarginalScenario3Q) -> tuple[bool, list[InequalitySlack]]:
    return _report(IDS_3Q, slacks_3q(s.global_, np.asarray(s.deltas)))


def check_state(rho: DensityMatrix) -> tuple[bool, list[InequalitySlack]]:
    if rho.qubits == 2:
        return check_2q(MarginalScenario2Q.from_state(rho))
    if rho.qubits == 3:
        return check_3q(MarginalScenario3Q.from_state(rho))
    raise BadSubsystem("need a two- or three-qubit state")


def violations(report: list[InequalitySlack]) -> list[InequalitySlack]:
    return [r for r in report if not r.satisfied]
