"""Basis transpositions U_ij and diagonal reordering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRange
from .linalg import DensityMatrix

TIE_TOL = 1e-12


@dataclass(frozen=True, order=True)
class PermutationGate:
    """U_ij: the identity with rows i and j exchanged (1-based, i < j)."""

    i: int
    j: int

    def __post_init__(self):
        i, j = int(self.i), int(self.j)
        if i == j or i < 1 or j < 1:
            raise IndexOutOfRange(f"invalid transposition ({self.i}, {self.j})")
        object.__setattr__(self, "i", min(i, j))
        object.__setattr__(self, "j", max(i, j))

    def __str__(self):
        return f"U{self.i}{self.j}" if self.j < 10 else f"U({self.i},{self.j})"

    def permutation(self, dim: int) -> np.ndarray:
        if self.j > dim:
            raise IndexOutOfRange(f"{self} does not act on dimension {dim}")
        perm = np.arange(dim)
        perm[[self.i - 1, self.j - 1]] = perm[[self.j - 1, self.i - 1]]
        return perm

    def matrix(self, dim: int) -> np.ndarray:
        return np.eye(dim, dtype=np.complex128)[self.permutation(dim)]

    def to_json(self) -> list[int]:
        return [self.i, self.j]

    @classmethod
    def parse(cls, text) -> "PermutationGate":
        """Accepts ``"14"``, ``"U14"``, ``"1,4"`` or a pair."""
        if isinstance(text, (tuple, list)):
            return cls(*text)
        t = str(text).strip().upper().lstrip("U").strip("()")
        if "," in t:
            a, b = t.split(",")
        elif len(t) == 2:
            a, b = t
        else:
            raise IndexOutOfRange(f"cannot parse gate {text!r}")
        return cls(int(a), int(b))


def U(i: int, j: int) -> PermutationGate:
    return PermutationGate(i, j)


def apply_gate(rho: DensityMatrix, g: PermutationGate) -> DensityMatrix:
    """U rho U^dagger for a transposition, done exactly by index permutation."""
    perm = g.permutation(rho.dim)
    return DensityMatrix(rho.matrix[np.ix_(perm, perm)], rho.qubits)


def apply_gates(rho: DensityMatrix, gates: Sequence[PermutationGate]) -> DensityMatrix:
    for g in gates:
        rho = apply_gate(rho, g)
    return rho


def matches_pattern(diag: np.ndarray, pattern: Sequence[int], tol: float = TIE_TOL) -> bool:
    """``pattern`` lists 1-based indices from largest to smallest diagonal entry."""
    vals = np.asarray(diag)[np.asarray(pattern) - 1]
    return bool(np.all(vals[:-1] >= vals[1:] - tol))


def placement(diag: np.ndarray, pattern: Sequence[int]) -> np.ndarray:
    """Diagonal obtained by placing the sorted values along ``pattern``."""
    out = np.empty(len(diag))
    out[np.asarray(pattern) - 1] = np.sort(diag)[::-1]
    return out


def sort_gates(diag: np.ndarray, pattern: Sequence[int], tol: float = TIE_TOL) -> list[PermutationGate]:
    """Selection sort along ``pattern``; at most dim - 1 transpositions.

    Replaying the returned gates on a state with diagonal ``diag`` makes it
    match ``pattern``.
    """
    d = np.array(diag, dtype=float)
    pos = [p - 1 for p in pattern]
    gates = []
    for k, here in enumerate(pos):
        rest = pos[k:]
        best = max(rest, key=lambda p: d[p])  # first maximal position in pattern order
        if d[best] > d[here] + tol:
            gates.append(PermutationGate(here + 1, best + 1))
            d[[here, best]] = d[[best, here]]
    return gates


def reorder(rho: DensityMatrix, pattern: Sequence[int]) -> tuple[DensityMatrix, list[PermutationGate]]:
    gates = sort_gates(rho.diagonal(), pattern)
    return apply_gates(rho, gates), gates
