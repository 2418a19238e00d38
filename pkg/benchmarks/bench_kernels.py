"""Timing comparison of the eigensolver backends.

Usage: python3 benchmarks/bench_kernels.py [--reps 40]

Random Hermitian matrices per size, identical inputs for every backend.
numpy's LAPACK eigvalsh runs alongside as the reference point.
"""

import argparse
import time

import numpy as np

from purity_bounds._kernels import available_backends, eigvalsh_desc


def _random_hermitian(n, rng):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2.0


def _time(fn, mats, reps):
    # warm once to keep one-time costs out of the loop
    fn(mats[0])
    t0 = time.perf_counter()
    for i in range(reps):
        fn(mats[i % len(mats)])
    return (time.perf_counter() - t0) / reps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--reps", type=int, default=40)
    args = ap.parse_args()

    rng = np.random.default_rng(12)
    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    header = f"{'n':>4}  " + "".join(f"{b:>14}" for b in backends) \
        + f"{'numpy':>14}"
    print(header)
    print("-" * len(header))
    for n in (4, 8, 16, 32):
        mats = [_random_hermitian(n, rng) for _ in range(8)]
        cells = []
        for b in backends:
            dt = _time(lambda m, b=b: eigvalsh_desc(m, backend=b), mats,
                       args.reps)
            cells.append(f"{dt * 1e6:>11.1f} us")
        dt = _time(lambda m: np.linalg.eigvalsh(m), mats, args.reps)
        cells.append(f"{dt * 1e6:>11.1f} us")
        print(f"{n:>4}  " + "".join(cells))

    # agreement spot check so the table can be trusted
    m = _random_hermitian(16, rng)
    ref = np.sort(np.linalg.eigvalsh(m))[::-1]
    for b in backends:
        got = eigvalsh_desc(m, backend=b)
        err = float(np.max(np.abs(got - ref)))
        print(f"max |diff vs numpy| ({b}): {err:.2e}")


if __name__ == "__main__":
    main()
