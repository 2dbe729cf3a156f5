"""Local invariants of two-qubit gates and minimal gate times under an Ising/XXZ drift."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveCoupling, UnsupportedGate
from .gates import PermutationGate
from .hamiltonians import I2, SX, SY, SZ, kron
from .linalg import check_unitary

MAGIC = np.array(
    [[1, 0, 0, 1j], [0, 1j, 1, 0], [0, 1j, -1, 0], [1, 0, 0, -1j]], dtype=np.complex128
) / np.sqrt(2)

IMAG_TOL = 1e-9


@dataclass(frozen=True)
class LocalInvariants:
    chi1: complex
    chi2: float

    def close_to(self, other: "LocalInvariants", tol: float = 1e-10) -> bool:
        return (
            abs(self.chi1.real - other.chi1.real) <= tol
            and abs(self.chi1.imag - other.chi1.imag) <= tol
            and abs(self.chi2 - other.chi2) <= tol
        )


@dataclass(frozen=True)
class CartanCoordinates:
    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        a = (float(self.a1), float(self.a2), float(self.a3))
        if not (a[0] >= a[1] >= a[2] >= 0):
            raise ValueError(f"coordinates must satisfy a1 >= a2 >= a3 >= 0, got {a}")
        if a[0] > np.pi:
            raise ValueError(f"coordinates must not exceed pi, got {a}")
        object.__setattr__(self, "a1", a[0])
        object.__setattr__(self, "a2", a[1])
        object.__setattr__(self, "a3", a[2])

    @property
    def total(self) -> float:
        return self.a1 + self.a2 + self.a3


def local_invariants(u) -> LocalInvariants:
    u = check_unitary(u)
    if u.shape != (4, 4):
        raise ValueError(f"local invariants need a 4x4 unitary, got {u.shape}")
    ub = MAGIC.conj().T @ u @ MAGIC
    up = ub.T @ ub
    det = np.linalg.det(u)
    tr = np.trace(up)
    chi1 = tr**2 / (16 * det)
    chi2 = (tr**2 - np.trace(up @ up)) / (4 * det)
    if abs(chi2.imag) > IMAG_TOL:
        raise ArithmeticError(f"chi2 has imaginary part {chi2.imag:.3g}")
    return LocalInvariants(complex(chi1), float(chi2.real))


def invariants_from_coordinates(c: CartanCoordinates) -> LocalInvariants:
    c1, c2, c3 = np.cos([c.a1, c.a2, c.a3]) ** 2
    s1, s2, s3 = np.sin([c.a1, c.a2, c.a3]) ** 2
    w1 = c1 * c2 * c3 - s1 * s2 * s3
    w2 = 0.25 * np.sin(2 * c.a1) * np.sin(2 * c.a2) * np.sin(2 * c.a3)
    w3 = 4 * c1 * c2 * c3 - 4 * s1 * s2 * s3 - np.cos(2 * c.a1) * np.cos(2 * c.a2) * np.cos(2 * c.a3)
    return LocalInvariants(complex(w1, w2), float(w3))


_HALF_PI = np.pi / 2
# closed-form coordinates for the gates the two-qubit protocol uses
PROTOCOL_COORDINATES = {
    PermutationGate(1, 4): CartanCoordinates(_HALF_PI, _HALF_PI, _HALF_PI),
    PermutationGate(2, 3): CartanCoordinates(_HALF_PI, _HALF_PI, _HALF_PI),
    PermutationGate(1, 2): CartanCoordinates(_HALF_PI, 0.0, 0.0),
    PermutationGate(3, 4): CartanCoordinates(_HALF_PI, 0.0, 0.0),
    PermutationGate(1, 3): CartanCoordinates(_HALF_PI, 0.0, 0.0),
    PermutationGate(2, 4): CartanCoordinates(_HALF_PI, 0.0, 0.0),
}


@dataclass(frozen=True)
class GateTime:
    t_star: float
    gate: PermutationGate
    J: float
    coordinates: CartanCoordinates

    def to_json(self) -> dict:
        return {"gate": self.gate.to_json(), "J": self.J, "t_star": self.t_star}


def protocol_gate_time(g: PermutationGate, J: float) -> GateTime:
    if g not in PROTOCOL_COORDINATES:
        raise UnsupportedGate(f"no stored coordinates for {g}")
    if not J > 0:
        raise NonPositiveCoupling(f"J must be positive, got {J}")
    coords = PROTOCOL_COORDINATES[g]
    return GateTime(coords.total / J, g, float(J), coords)


# Cartan decomposition su(4) = m + l

PAULIS = {"x": SX, "y": SY, "z": SZ}
M_BASIS = {f"{a}{b}": kron(PAULIS[a], PAULIS[b]) for a in "xyz" for b in "xyz"}
L_BASIS = {**{f"{a}1": kron(PAULIS[a], I2) for a in "xyz"}, **{f"{b}2": kron(I2, PAULIS[b]) for b in "xyz"}}


def _projection_residual(x: np.ndarray, basis: dict) -> float:
    """Distance from ``x`` to the span of ``basis`` (orthogonal in the trace inner product)."""
    rest = x.copy()
    for b in basis.values():
        rest = rest - (np.trace(b.conj().T @ x) / np.trace(b.conj().T @ b)) * b
    return float(np.abs(rest).max())


@dataclass(frozen=True)
class ClosureCheck:
    relation: str
    pair: tuple[str, str]
    residual: float


def cartan_algebra_checks() -> list[ClosureCheck]:
    """Every commutator [m,m], [m,l], [l,l] projected onto its claimed subspace."""
    out = []
    cases = (("[m,m] in l", M_BASIS, M_BASIS, L_BASIS),
             ("[m,l] in m", M_BASIS, L_BASIS, M_BASIS),
             ("[l,l] in l", L_BASIS, L_BASIS, L_BASIS))
    for relation, left, right, target in cases:
        for (na, a), (nb, b) in itertools.product(left.items(), right.items()):
            comm = a @ b - b @ a
            out.append(ClosureCheck(relation, (na, nb), _projection_residual(comm, target)))
    return out
