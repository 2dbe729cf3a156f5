"""Battery capacity of a state and how it splits over the subsystems.

The capacity of rho under H is ``sum_i e_i (l_i - l_{d-1-i})`` with both
spectra ascending: the energy gap between the most and least energetic
states unitarily reachable from rho.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadSubsystem, DimensionMismatch
from .hamiltonians import Hamiltonian, ModelSpec, hamiltonian, subsystem_hamiltonian
from .linalg import SUBSYSTEMS, DensityMatrix, dephase, hermitian_eigenvalues, partial_trace


def capacity_from_spectra(lam, eps) -> float | np.ndarray:
    """Capacity from ascending state and energy spectra.

    ``lam`` may be a stack of spectra with shape (n, d); the result then has shape (n,).
    """
    lam = np.asarray(lam, dtype=float)
    eps = np.asarray(eps, dtype=float)
    if lam.shape[-1] != eps.shape[-1]:
        raise DimensionMismatch(f"spectra of length {lam.shape[-1]} and {eps.shape[-1]}")
    diff = lam - lam[..., ::-1]
    out = diff @ eps
    return float(out) if np.ndim(out) == 0 else out


def battery_capacity(rho: DensityMatrix, h: Hamiltonian) -> float:
    if rho.dim != h.dim:
        raise DimensionMismatch(f"state has dimension {rho.dim}, Hamiltonian {h.dim}")
    lam = hermitian_eigenvalues(rho.matrix).values
    return capacity_from_spectra(lam, h.spectrum.values)


@lru_cache(maxsize=256)
def total_hamiltonian(spec: ModelSpec) -> Hamiltonian:
    return hamiltonian(spec)


@lru_cache(maxsize=256)
def local_hamiltonian(spec: ModelSpec) -> Hamiltonian:
    """The single-site Hamiltonian; identical for every subsystem."""
    return subsystem_hamiltonian(spec, "A")


def local_gap(spec: ModelSpec) -> float:
    eps = local_hamiltonian(spec).spectrum.values
    return float(eps[1] - eps[0])


@dataclass(frozen=True)
class CapacityBreakdown:
    total: float
    sub_A: float
    sub_B: float
    sub_C: float | None
    sub_sum: float
    residual: float
    sub_ic: float
    sub_c: float

    @property
    def qubits(self) -> int:
        return 2 if self.sub_C is None else 3

    def subsystem(self, name: str) -> float:
        return {"A": self.sub_A, "B": self.sub_B, "C": self.sub_C}[name]

    @staticmethod
    def columns(qubits: int) -> list[str]:
        cols = ["total", "sub_A", "sub_B"]
        if qubits == 3:
            cols.append("sub_C")
        return cols + ["sub_sum", "residual", "sub_ic", "sub_c"]

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.columns(self.qubits)}

    def to_csv_row(self) -> list[str]:
        return [format_number(getattr(self, k)) for k in self.columns(self.qubits)]


def format_number(x: float) -> str:
    """12 significant digits, locale independent; -0 prints as 0."""
    return format(float(x) + 0.0, ".12g")


def _sub_capacities(rho: DensityMatrix, spec: ModelSpec) -> list[float]:
    out = []
    for name in SUBSYSTEMS[: rho.qubits]:
        reduced = partial_trace(rho, name)
        out.append(battery_capacity(reduced, local_hamiltonian(spec)))
    return out


def subsystem_capacities(rho: DensityMatrix, spec: ModelSpec, h: Hamiltonian | None = None) -> CapacityBreakdown:
    """Total, per-subsystem, residual and incoherent/coherent split.

    ``h`` overrides the total Hamiltonian (e.g. a custom matrix); the
    subsystem Hamiltonians always come from ``spec``'s field.
    """
    if rho.qubits not in (2, 3):
        raise BadSubsystem("subsystem capacities need a two- or three-qubit state")
    if spec.qubits != rho.qubits:
        raise DimensionMismatch(f"{rho.qubits}-qubit state with a {spec.qubits}-qubit model")
    h = total_hamiltonian(spec) if h is None else h
    total = battery_capacity(rho, h)
    subs = _sub_capacities(rho, spec)
    sub_sum = float(sum(subs))
    sub_ic = float(sum(_sub_capacities(dephase(rho), spec)))
    return CapacityBreakdown(
        total=total,
        sub_A=subs[0],
        sub_B=subs[1],
        sub_C=subs[2] if rho.qubits == 3 else None,
        sub_sum=sub_sum,
        residual=total - sub_sum,
        sub_ic=sub_ic,
        sub_c=sub_sum - sub_ic,
    )


def residual_capacity(rho: DensityMatrix, spec: ModelSpec, h: Hamiltonian | None = None) -> float:
    """Total capacity minus the sum of the subsystem capacities (not clamped)."""
    return subsystem_capacities(rho, spec, h).residual


def sub_capacity(rho: DensityMatrix, spec: ModelSpec) -> float:
    return float(sum(_sub_capacities(rho, spec)))


def sub_ic(rho: DensityMatrix, spec: ModelSpec) -> float:
    return sub_capacity(dephase(rho), spec)


@dataclass(frozen=True)
class CoherenceSplit2Q:
    c_A: float
    c_B: float
    c_star: float
    ic_A: float
    ic_B: float


def coherence_split_2q(rho: DensityMatrix) -> CoherenceSplit2Q:
    if rho.qubits != 2:
        raise BadSubsystem("coherence_split_2q needs a two-qubit state")
    r = rho.matrix
    d = r.diagonal().real
    return CoherenceSplit2Q(
        c_A=2 * float(abs(r[0, 2] + r[1, 3])),
        c_B=2 * float(abs(r[0, 1] + r[2, 3])),
        c_star=2 * float(abs(r[0, 3] + r[1, 2])),
        ic_A=float(d[0] + d[1] - d[2] - d[3]),
        ic_B=float(d[0] + d[2] - d[1] - d[3]),
    )


def closed_form_sub_capacity_2q(rho: DensityMatrix, spec: ModelSpec) -> tuple[float, float]:
    """Subsystem capacities from matrix entries: gap * sqrt(C^2 + IC^2)."""
    s = coherence_split_2q(rho)
    gap = local_gap(spec)
    return gap * float(np.hypot(s.c_A, s.ic_A)), gap * float(np.hypot(s.c_B, s.ic_B))
