"""Time the compiled binary64 kernels against the pure-Python fallback.

Both implementations must agree bit for bit before timing starts; the
script aborts otherwise. Run from the repository root:

    python3 benchmarks/bench_kernels.py --cells 4096 --repeat 5
"""

import argparse
import random
import time

from enokit._kernels import (
    HAVE_COMPILED,
    interp_traces_py,
    primitive_floats_py,
    recon_traces_py,
)

try:
    from enokit import _speedups
except ImportError:
    _speedups = None


def make_inputs(n, seed=12345):
    rng = random.Random(seed)
    interfaces = [0.0]
    for _ in range(n):
        interfaces.append(interfaces[-1] + rng.uniform(0.5, 2.0))
    averages = [float(rng.randint(-8, 8)) for _ in range(n)]
    return interfaces, averages


def best_of(fn, args, repeat, number):
    timings = []
    for _ in range(repeat):
        start = time.perf_counter()
        for _ in range(number):
            fn(*args)
        timings.append((time.perf_counter() - start) / number)
    return min(timings)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cells", type=int, default=4096)
    parser.add_argument("--order", type=int, default=3)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=3)
    args = parser.parse_args()

    if _speedups is None:
        raise SystemExit("compiled extension not importable; nothing to compare")

    interfaces, averages = make_inputs(args.cells)
    nodes = interfaces[:-1]
    values = averages
    p = args.order

    cases = [
        ("primitive", primitive_floats_py, _speedups.primitive_floats,
         (interfaces, averages, 0.0)),
        (f"recon_traces p={p}", recon_traces_py, _speedups.recon_traces,
         (interfaces, averages, p, 0.0)),
        (f"interp_traces p={p}", interp_traces_py, _speedups.interp_traces,
         (nodes, values, p)),
    ]

    for name, pure, fast, call_args in cases:
        if pure(*call_args) != fast(*call_args):
            raise SystemExit(f"{name}: compiled output differs from pure output")

    print(f"cells={args.cells} order={p} compiled={HAVE_COMPILED}")
    print(f"{'kernel':<20} {'pure (ms)':>12} {'compiled (ms)':>14} {'speedup':>9}")
    for name, pure, fast, call_args in cases:
        t_pure = best_of(pure, call_args, args.repeat, args.number)
        t_fast = best_of(fast, call_args, args.repeat, args.number)
        print(f"{name:<20} {t_pure * 1e3:>12.3f} {t_fast * 1e3:>14.3f}"
              f" {t_pure / t_fast:>8.1f}x")


if __name__ == "__main__":
    main()
