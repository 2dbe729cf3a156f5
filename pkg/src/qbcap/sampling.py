"""Random states and unitaries for the Monte-Carlo suites.

Generators are numpy PCG64 streams. A named stream is seeded from
``SeedSequence(seed, spawn_key=(crc32(name),))`` so every suite draws
from its own reproducible sequence.
"""

from __future__ import annotations

import zlib

import numpy as np

from .linalg import DensityMatrix

DEFAULT_SEED = 0xB0CA9


def stream(name: str = "", seed: int = DEFAULT_SEED) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    key = (zlib.crc32(name.encode()),) if name else ()
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def _rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return stream(seed=DEFAULT_SEED if rng is None else rng)


def ginibre(dim: int, rng, size: int | None = None) -> np.ndarray:
    shape = (dim, dim) if size is None else (size, dim, dim)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_density_arrays(qubits: int, n: int, rng=None) -> np.ndarray:
    """Stack of n Ginibre density matrices, shape (n, d, d)."""
    if qubits not in (2, 3):
        raise ValueError(f"qubits must be 2 or 3, got {qubits}")
    g = ginibre(2**qubits, _rng(rng), n)
    rho = g @ g.conj().transpose(0, 2, 1)
    tr = np.trace(rho, axis1=1, axis2=2).real
    return rho / tr[:, None, None]


def random_density_matrix(qubits: int, rng=None) -> DensityMatrix:
    return DensityMatrix(random_density_arrays(qubits, 1, rng)[0], qubits)


def random_unitary(dim: int, rng=None) -> np.ndarray:
    """Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal removed."""
    if dim not in (4, 8):
        raise ValueError(f"dim must be 4 or 8, got {dim}")
    z = ginibre(dim, _rng(rng))
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def random_local_unitary(rng=None) -> np.ndarray:
    """Haar element of U(2) x U(2)."""
    rng = _rng(rng)

    def u2():
        q, r = np.linalg.qr(ginibre(2, rng))
        return q * (np.diagonal(r) / np.abs(np.diagonal(r)))

    return np.kron(u2(), u2())
