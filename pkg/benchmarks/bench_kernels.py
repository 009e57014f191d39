"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from qcdm import _pykernels, linalg

try:
    from qcdm import _kernels
except ImportError:
    _kernels = None


def hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return np.ascontiguousarray((a + a.conj().T) / 2)


def best(fn, repeat):
    number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _kernels)] if _kernels else [])
    rng = np.random.default_rng(0)

    print(f"{'kernel':<34}{'dim':>5}" + "".join(f"{name:>14}" for name, _ in backends) + f"{'speedup':>10}")
    for n in (4, 8, 16, 32, 64):
        a = hermitian(rng, n)
        times = [best(lambda k=k: k.jacobi_eigh(a.copy(), linalg.JACOBI_TOL, linalg.JACOBI_MAX_SWEEPS),
                      args.repeat) for _, k in backends]
        _row("jacobi_eigh", n, times)
    for dims in ([2, 2], [2, 2, 2], [2, 2, 2, 2], [4, 4, 4], [2] * 6):
        n = int(np.prod(dims))
        a = np.ascontiguousarray(hermitian(rng, n))
        kept = linalg._offsets(dims, [0])
        traced = linalg._offsets(dims, list(range(1, len(dims))))
        times = [best(lambda k=k: k.partial_trace(a, kept, traced), args.repeat) for _, k in backends]
        _row(f"partial_trace {dims}", n, times)


def _row(label, n, times):
    cells = "".join(f"{t * 1e6:>12.1f}us" for t in times)
    speedup = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else ""
    print(f"{label:<34}{n:>5}{cells}{speedup}")


if __name__ == "__main__":
    main()
