#!/usr/bin/env python3
"""Timing comparison of the amplitude-evaluation backends.

Fills the same amplitude blocks through the compiled extension and the
pure-Python reference and reports the wall time per full radial sweep.
The workload mirrors one angular Fourier pass of the decomposition
pipeline at its default settings, so the ratio printed here is the
speedup of the dominant cost of a run.

Usage:
    python benchmarks/kernel_benchmark.py [--grid-n 200] [--ntheta 512]
        [--bsigma 0.25] [--repeats 5] [--block-rows 16]
"""

import argparse
import statistics
import time

import numpy as np

from biphoton._kernels import _ref
from biphoton.grids import angular_grid, build_radial_grid, default_k_max

try:
    from biphoton._kernels import _fast
except ImportError:
    _fast = None


def sweep_seconds(module, family: int, nodes, cos_dtheta, t: float, block_rows: int) -> float:
    """One full block-by-block fill over the radial grid, timed."""
    n = nodes.size
    buf = np.empty((min(block_rows, n), n, cos_dtheta.size))
    started = time.perf_counter()
    for start in range(0, n, block_rows):
        stop = min(start + block_rows, n)
        module.fill_amplitude_block(
            buf[: stop - start], family, nodes[start:stop], nodes, cos_dtheta, t
        )
    return time.perf_counter() - started


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--grid-n", type=int, default=200, help="radial quadrature order")
    parser.add_argument("--ntheta", type=int, default=512, help="azimuthal samples")
    parser.add_argument("--bsigma", type=float, default=0.25, help="control parameter")
    parser.add_argument("--repeats", type=int, default=5, help="timed repetitions")
    parser.add_argument("--block-rows", type=int, default=16, help="rows per block")
    args = parser.parse_args(argv)

    grid = build_radial_grid(args.grid_n, 0.0, default_k_max(args.bsigma))
    _, cos_dtheta = angular_grid(args.ntheta)
    backends = [("python", _ref)]
    if _fast is not None:
        backends.append(("compiled", _fast))
    else:
        print("compiled extension not built; timing the reference only")

    values = args.grid_n * args.grid_n * args.ntheta
    print(
        f"block fill: {args.grid_n} x {args.grid_n} nodes, {args.ntheta} angles "
        f"({values / 1e6:.1f}M values per sweep), b_sigma = {args.bsigma}"
    )
    print(f"{'family':<10} {'backend':<10} {'median s':>10} {'Mvals/s':>10} {'speedup':>9}")
    for family, code in (("gaussian", _ref.GAUSSIAN), ("sinc", _ref.SINC)):
        baseline = None
        for name, module in backends:
            sweep_seconds(module, code, grid.nodes, cos_dtheta, args.bsigma, args.block_rows)
            times = [
                sweep_seconds(
                    module, code, grid.nodes, cos_dtheta, args.bsigma, args.block_rows
                )
                for _ in range(args.repeats)
            ]
            median = statistics.median(times)
            if baseline is None:
                baseline = median
            speedup = f"{baseline / median:9.2f}" if median > 0 else " " * 9
            print(
                f"{family:<10} {name:<10} {median:10.4f} {values / median / 1e6:10.1f} {speedup}"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
