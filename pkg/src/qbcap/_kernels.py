"""Hot numeric kernels.

Each kernel is written once against the numpy API subset numba understands.
``maybe_njit`` compiles it unless ``QBCAP_DISABLE_NUMBA`` is set; the
``*_numpy`` aliases always run the uncompiled source.
"""

import math

import numpy as np

from ._accel import maybe_njit

MAX_SWEEPS = 100
OFF_TOL = 1e-12


def _jacobi_eigh(a, tol, max_sweeps):
    """Cyclic Jacobi diagonalisation of a complex Hermitian matrix.

    Returns ``(w, v, sweeps)`` with ``a @ v == v @ diag(w)``. ``w`` is in
    solver order, not sorted. ``sweeps`` is -1 when the budget ran out.
    The stopping threshold is ``tol * max(1, ||a||_F)``.
    """
    n = a.shape[0]
    a = a.astype(np.complex128)
    v = np.eye(n, dtype=np.complex128)

    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j].real ** 2 + a[i, j].imag ** 2
    thresh = tol * max(1.0, math.sqrt(fro))

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if math.sqrt(off) <= thresh:
            w = np.empty(n)
            for i in range(n):
                w[i] = a[i, i].real
            return w, v, sweep
        if sweep == max_sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ph = np.conj(apq / r)
                # 2x2 block of the unitary step; real rotation after a phase on column q
                v00 = c + 0j
                v01 = s + 0j
                v10 = -s * ph
                v11 = c * ph

                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = colp * v00 + colq * v10
                a[:, q] = colp * v01 + colq * v11
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = np.conj(v00) * rowp + np.conj(v10) * rowq
                a[q, :] = np.conj(v01) * rowp + np.conj(v11) * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = vp * v00 + vq * v10
                v[:, q] = vp * v01 + vq * v11

    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, -1


def _make_batch_eigvalsh(eigh):
    def batch_eigvalsh(stack, tol, max_sweeps):
        m = stack.shape[0]
        n = stack.shape[1]
        out = np.empty((m, n))
        status = np.empty(m, dtype=np.int64)
        for k in range(m):
            w, _, sweeps = eigh(stack[k], tol, max_sweeps)
            out[k] = np.sort(w)
            status[k] = sweeps
        return out, status

    return batch_eigvalsh


jacobi_eigh_numpy = _jacobi_eigh
jacobi_eigh = maybe_njit(_jacobi_eigh)

batch_eigvalsh_numpy = _make_batch_eigvalsh(jacobi_eigh_numpy)
batch_eigvalsh = maybe_njit(_make_batch_eigvalsh(jacobi_eigh))
