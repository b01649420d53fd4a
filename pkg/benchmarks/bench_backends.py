#!/usr/bin/env python3
"""Time the QL eigensolver's compiled and interpreted backends side by side.

Both backends run the same source statements, so this is a pure dispatch
comparison: the jitted kernel pays a one-off compile on first call (excluded
by the warmup), after which it should win by a wide factor that grows with
matrix size.  The script also cross-checks that the two kernels agree on
every benchmarked matrix.

Usage: python benchmarks/bench_backends.py [--sizes 50,100,200] [--repeats 5]
"""

import argparse
import statistics
import time

import numpy as np

from idrabi.backend import active_backend, available_kernels, eigh_tridiagonal
from idrabi.model import ModelParams, Parity, build_hamiltonian

PARAMS = ModelParams(omega=1.0, omega0=0.75, g=0.4, k=0.5)


def chain(size):
    h = build_hamiltonian(PARAMS, Parity.POSITIVE, size)
    return h.diagonal, h.offdiagonal


def median_time(kernel, diag, off, want_vectors, repeats):
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        eigh_tridiagonal(diag, off, want_vectors, kernel=kernel)
        timings.append(time.perf_counter() - start)
    return statistics.median(timings)


def run(sizes, repeats):
    kernels = available_kernels()
    names = sorted(kernels)
    print(f"backends: {', '.join(names)} (default: {active_backend()})")
    print(f"median of {repeats} runs, seconds\n")
    header = f"{'size':>6} {'mode':>8}" + "".join(f"{name:>12}" for name in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)

    for size in sizes:
        diag, off = chain(size)
        for name in names:  # compile/warm caches outside the timed region
            eigh_tridiagonal(diag, off, True, kernel=kernels[name])
        spectra = {
            name: eigh_tridiagonal(diag, off, kernel=kernels[name])[0] for name in names
        }
        if len(names) == 2:
            a, b = (spectra[name] for name in names)
            disagreement = float(np.max(np.abs(a - b)))
            scale = max(1.0, float(np.max(np.abs(a))))
            if disagreement > 1e-12 * scale:
                raise SystemExit(
                    f"backends disagree at size {size}: max delta {disagreement:.3e}"
                )

        for want_vectors, mode in ((False, "values"), (True, "vectors")):
            times = {
                name: median_time(kernels[name], diag, off, want_vectors, repeats)
                for name in names
            }
            line = f"{size:>6} {mode:>8}" + "".join(
                f"{times[name]:>12.2e}" for name in names
            )
            if len(names) == 2:
                fast, slow = sorted(times.values())
                line += f"{slow / fast:>9.1f}x"
            print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes", default="50,100,200,400,800",
        help="comma-separated matrix sizes (default: 50,100,200,400,800)",
    )
    parser.add_argument(
        "--repeats", type=int, default=5, help="timed runs per cell (default: 5)"
    )
    args = parser.parse_args()
    sizes = [int(part) for part in args.sizes.split(",") if part.strip()]
    run(sizes, args.repeats)


if __name__ == "__main__":
    main()
