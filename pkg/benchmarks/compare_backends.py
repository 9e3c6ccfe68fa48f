"""
Compiled vs pure-Python kernel.

    python3 benchmarks/compare_backends.py [--sizes 36 72 120] [--kernel-only]

The end-to-end part times ``isingmaps compute --mode fast`` in a fresh
process per run; the kernel part times one right-hand-side assembly.
"""
import argparse
import time

from isingmaps import bench, kernels
from isingmaps.solver import SolveState, compute_up_to


def kernel_timing(n: int, repeat: int = 3) -> dict[str, float]:
    base = compute_up_to(n - 3, "fast")
    out = {}
    for name in kernels.available():
        best = float("inf")
        for _ in range(repeat):
            state = SolveState.from_rooted(base.N, base.rooted, "fast", name)
            start = time.perf_counter()
            state.scaled_rhs(n)
            best = min(best, time.perf_counter() - start)
        out[name] = best
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--sizes", type=int, nargs="+", default=list(bench.SIZES))
    parser.add_argument("--kernel-only", action="store_true")
    args = parser.parse_args()

    for n in (36, 60, 90):
        times = kernel_timing(n)
        cells = "  ".join(f"{k} {v * 1e3:8.1f} ms" for k, v in times.items())
        print(f"rhs assembly at {n} edges: {cells}")
    if not args.kernel_only:
        print(bench.format_rows(bench.run(args.sizes)))


if __name__ == "__main__":
    main()
