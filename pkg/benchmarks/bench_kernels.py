"""Compare the numba Jacobi kernels with their plain-numpy twins.

    python3 benchmarks/bench_kernels.py [--n 2000] [--repeat 3]

With QBCAP_DISABLE_NUMBA=1 both columns run the python path.
"""

import argparse
import timeit

import numpy as np

from qbcap import _accel, _kernels
from qbcap.sampling import random_density_arrays, stream


def bench(label, func, stack, repeat):
    func(stack[:2], _kernels.OFF_TOL, _kernels.MAX_SWEEPS)  # warm up / compile
    best = min(timeit.repeat(lambda: func(stack, _kernels.OFF_TOL, _kernels.MAX_SWEEPS), number=1, repeat=repeat))
    print(f"  {label:<8} {best * 1e3:10.2f} ms  ({best / len(stack) * 1e6:8.2f} us per matrix)")
    return best


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    print(f"numba enabled: {_accel.NUMBA_ENABLED}")
    for qubits in (2, 3):
        stack = random_density_arrays(qubits, args.n, stream("bench", 1))
        print(f"{args.n} matrices of dimension {2**qubits}")
        fast = bench("numba", _kernels.batch_eigvalsh, stack, args.repeat)
        slow = bench("numpy", _kernels.batch_eigvalsh_numpy, stack, args.repeat)
        a, _ = _kernels.batch_eigvalsh(stack, _kernels.OFF_TOL, _kernels.MAX_SWEEPS)
        b, _ = _kernels.batch_eigvalsh_numpy(stack, _kernels.OFF_TOL, _kernels.MAX_SWEEPS)
        print(f"  speedup  {slow / fast:10.1f}x   max |diff| {np.abs(a - b).max():.1e}")


if __name__ == "__main__":
    main()
