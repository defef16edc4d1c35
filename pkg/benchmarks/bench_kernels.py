"""Compare the compiled and pure-Python exact-arithmetic kernels.

Usage:

    python3 benchmarks/bench_kernels.py

Times the two hot kernels (rational matrix multiply and Gauss-Jordan
elimination) on identical seeded inputs, then an end-to-end Jacobian rank
computation under each backend (selected via the PLANEINV_KERNEL variable in
a subprocess, since the backend is chosen at import time).
"""

import os
import statistics
import subprocess
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from planeinv import _kernels_py  # noqa: E402
from planeinv.grassmann import SplitMix64  # noqa: E402

try:
    from planeinv import _kernels_cy
except ImportError:
    _kernels_cy = None


def seeded_matrix(rng, rows, cols, denom_bound=7):
    return [
        [
            Fraction(rng.next_int(50), 1 + abs(rng.next_int(denom_bound)))
            for _ in range(cols)
        ]
        for _ in range(rows)
    ]


def bench(fn, repeats=7):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def micro_table():
    rng = SplitMix64(99)
    size = 24
    a = seeded_matrix(rng, size, size)
    b = seeded_matrix(rng, size, size)
    wide = seeded_matrix(rng, size, 2 * size)

    rows = []
    backends = [("pure-python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("compiled", _kernels_cy))

    for name, mod in backends:
        t_mul = bench(lambda m=mod: m.mat_mul(a, b))
        t_rref = bench(lambda m=mod: m.rref_in_place([list(r) for r in wide]))
        rows.append((name, t_mul, t_rref))
    return size, rows


def end_to_end(backend):
    code = (
        "import time\n"
        "from planeinv.orbit import jacobian_rank\n"
        "from planeinv.grassmann import sample_config\n"
        "t0 = time.perf_counter()\n"
        "r = jacobian_rank(sample_config(5, 2, 5, seed=404))\n"
        "print(time.perf_counter() - t0)\n"
    )
    env = dict(os.environ, PLANEINV_KERNEL=backend)
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    if out.returncode != 0:
        return None
    return float(out.stdout.strip())


def main():
    size, rows = micro_table()
    print(f"kernel micro-benchmarks ({size}x{size} rational matrices, median of 7)")
    print(f"{'backend':<14} {'mat_mul':>12} {'rref':>12}")
    for name, t_mul, t_rref in rows:
        print(f"{name:<14} {t_mul * 1e3:>10.2f}ms {t_rref * 1e3:>10.2f}ms")
    if len(rows) == 2:
        base, fast = rows[0], rows[1]
        print(
            f"speedup (compiled / pure): "
            f"mat_mul x{base[1] / fast[1]:.2f}, rref x{base[2] / fast[2]:.2f}"
        )

    print()
    print("end-to-end: jacobian_rank on a (5, 2, 5) configuration")
    for backend in ("py", "cy") if _kernels_cy is not None else ("py",):
        t = end_to_end(backend)
        label = {"py": "pure-python", "cy": "compiled"}[backend]
        if t is None:
            print(f"{label:<14} failed to run")
        else:
            print(f"{label:<14} {t:>10.2f}s")


if __name__ == "__main__":
    main()
