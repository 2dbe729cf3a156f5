"""Small dense Hermitian linear algebra (dimension 2, 4 or 8).

Basis convention: qubit A is the first tensor factor and basis states are
ordered |0..0>, |0..1>, ..., |1..1>. For two qubits rows 1..4 are
|00>, |01>, |10>, |11>.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import (
    BadSubsystem,
    InvalidState,
    LengthMismatch,
    NoConvergence,
    NotHermitian,
    NotUnitary,
)

VALIDATION_TOL = 1e-10
DEGENERACY_TOL = 1e-9
PHYSICAL_DIMS = (2, 4, 8)

SUBSYSTEMS = "ABC"


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues."""

    values: np.ndarray
    degeneracy_tol: float = DEGENERACY_TOL

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1:
            raise ValueError("spectrum must be one-dimensional")
        if np.any(np.diff(vals) < -self.degeneracy_tol):
            raise ValueError("spectrum values must be ascending")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k):
        return self.values[k]

    @classmethod
    def from_unsorted(cls, values: Iterable[float], degeneracy_tol: float = DEGENERACY_TOL) -> "Spectrum":
        return cls(np.sort(np.asarray(list(values), dtype=float), kind="stable"), degeneracy_tol)

    @property
    def total(self) -> float:
        return float(self.values.sum())

    def check_probability(self, tol: float = VALIDATION_TOL) -> None:
        if self.values.size and self.values[0] < -tol:
            raise InvalidState(f"negative eigenvalue {self.values[0]:.3e}", "psd")
        if abs(self.total - 1.0) > 1e-9:
            raise InvalidState(f"eigenvalues sum to {self.total!r}", "trace")


@dataclass(frozen=True)
class DensityMatrix:
    """A qubit density matrix.

    The constructor only checks the shape. Use :meth:`from_array` for input
    that has not been produced by this package, which also checks
    Hermiticity, unit trace and positivity.
    """

    matrix: np.ndarray
    qubits: int

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (2**self.qubits, 2**self.qubits):
            raise InvalidState(
                f"matrix of shape {m.shape} does not describe {self.qubits} qubit(s)", "dimension"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_array(cls, matrix, qubits: int | None = None, tol: float = VALIDATION_TOL) -> "DensityMatrix":
        m = np.asarray(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidState(f"expected a square matrix, got shape {m.shape}", "dimension")
        dim = m.shape[0]
        if qubits is None:
            if dim not in PHYSICAL_DIMS:
                raise InvalidState(f"dimension {dim} is not 2, 4 or 8", "dimension")
            qubits = dim.bit_length() - 1
        rho = cls(m, qubits)
        rho.validate(tol)
        return rho

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self, tol: float = VALIDATION_TOL) -> None:
        m = self.matrix
        asym = np.abs(m - m.conj().T).max()
        if asym > tol:
            raise NotHermitian(f"max |M - M^dagger| = {asym:.3e} exceeds {tol:g}")
        tr = np.trace(m)
        if abs(tr - 1.0) > tol:
            raise InvalidState(f"trace is {tr.real:.12g}{tr.imag:+.3g}j, expected 1", "trace")
        lam = hermitian_eigenvalues(m, tol).values
        if lam[0] < -tol:
            raise InvalidState(f"smallest eigenvalue {lam[0]:.3e} is negative", "psd")

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()

    def entry(self, i: int, j: int) -> complex:
        """Matrix element with 1-based indices."""
        return complex(self.matrix[i - 1, j - 1])


def _as_matrix(m) -> np.ndarray:
    if isinstance(m, DensityMatrix):
        return m.matrix
    return np.asarray(m, dtype=np.complex128)


def hermitian_eigh(m, tol: float = VALIDATION_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors (as columns) of a Hermitian matrix."""
    a = _as_matrix(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > 8:
        raise ValueError("eigensolver supports dimension <= 8 only")
    asym = np.abs(a - a.conj().T).max() if a.size else 0.0
    if asym > tol:
        raise NotHermitian(f"max |M - M^dagger| = {asym:.3e} exceeds {tol:g}")
    herm = 0.5 * (a + a.conj().T)
    w, v, sweeps = _kernels.jacobi_eigh(np.ascontiguousarray(herm), _kernels.OFF_TOL, _kernels.MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi exceeded {_kernels.MAX_SWEEPS} sweeps")
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m, tol: float = VALIDATION_TOL) -> Spectrum:
    return Spectrum(hermitian_eigh(m, tol)[0])


def batch_eigenvalues(stack: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a stack of Hermitian matrices, shape (n, d)."""
    st = np.asarray(stack, dtype=np.complex128)
    st = np.ascontiguousarray(0.5 * (st + st.conj().transpose(0, 2, 1)))
    out, status = _kernels.batch_eigvalsh(st, _kernels.OFF_TOL, _kernels.MAX_SWEEPS)
    if np.any(status < 0):
        bad = int(np.flatnonzero(status < 0)[0])
        raise NoConvergence(f"Jacobi exceeded {_kernels.MAX_SWEEPS} sweeps on matrix {bad}")
    return out


def subsystem_indices(keep, qubits: int) -> tuple[int, ...]:
    """Normalise a subsystem selection (letters or 0-based ints) to sorted ints."""
    if isinstance(keep, str):
        keep = list(keep)
    idx = []
    for k in keep:
        if isinstance(k, str):
            if len(k) != 1 or k.upper() not in SUBSYSTEMS[:qubits]:
                raise BadSubsystem(f"unknown subsystem {k!r} for {qubits} qubits")
            idx.append(SUBSYSTEMS.index(k.upper()))
        else:
            if not 0 <= int(k) < qubits:
                raise BadSubsystem(f"subsystem index {k!r} out of range for {qubits} qubits")
            idx.append(int(k))
    idx = sorted(set(idx))
    if not idx or len(idx) >= qubits:
        raise BadSubsystem("keep must be a nonempty strict subset of the subsystems")
    return tuple(idx)


def partial_trace_array(m: np.ndarray, keep: Sequence[int], qubits: int) -> np.ndarray:
    """Partial trace on a raw matrix or a stack of matrices (leading axis)."""
    m = np.asarray(m)
    batch = m.ndim == 3
    t = m.reshape((-1 if batch else 1,) + (2,) * (2 * qubits))
    letters = "abcdefghijklmn"
    row = list(letters[:qubits])
    col = list(letters[qubits : 2 * qubits])
    for q in range(qubits):
        if q not in keep:
            col[q] = row[q]
    out = "".join(row[q] for q in keep) + "".join(col[q] for q in keep)
    r = np.einsum("z" + "".join(row) + "".join(col) + "->z" + out, t)
    d = 2 ** len(keep)
    r = r.reshape(-1, d, d)
    return r if batch else r[0]


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on the qubits in ``keep`` (e.g. ``"A"``, ``"AC"`` or ``[0, 2]``)."""
    if rho.qubits not in (2, 3):
        raise BadSubsystem("partial trace needs a two- or three-qubit state")
    idx = subsystem_indices(keep, rho.qubits)
    return DensityMatrix(partial_trace_array(rho.matrix, idx, rho.qubits), len(idx))


def check_unitary(u, tol: float = VALIDATION_TOL) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NotUnitary(f"expected a square matrix, got shape {u.shape}")
    err = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
    if err > tol:
        raise NotUnitary(f"max |U^dagger U - I| = {err:.3e} exceeds {tol:g}")
    return u


def conjugate(rho: DensityMatrix, u) -> DensityMatrix:
    """U rho U^dagger."""
    u = check_unitary(u)
    if u.shape != rho.matrix.shape:
        raise NotUnitary(f"unitary of shape {u.shape} does not act on a {rho.dim}-dimensional state")
    return DensityMatrix(u @ rho.matrix @ u.conj().T, rho.qubits)


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Drop every off-diagonal element."""
    return DensityMatrix(np.diag(rho.matrix.diagonal()), rho.qubits)


def majorizes(p, q, tol: float = 1e-10) -> bool:
    """True iff ``p`` majorizes ``q``: every descending partial sum of p >= that of q."""
    a = np.sort(np.asarray(list(p), dtype=float))[::-1]
    b = np.sort(np.asarray(list(q), dtype=float))[::-1]
    if a.shape != b.shape:
        raise LengthMismatch(f"spectra have lengths {a.size} and {b.size}")
    if abs(a.sum() - b.sum()) > 1e-9:
        raise ValueError(f"spectra have different totals {a.sum()!r} and {b.sum()!r}")
    return bool(np.all(np.cumsum(a) >= np.cumsum(b) - tol))
