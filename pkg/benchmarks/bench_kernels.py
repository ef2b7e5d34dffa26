"""Compare the compiled kernel backend against the NumPy reference.

Run from the repository root after installing:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from qheis._kernels import _ref

try:
    from qheis._kernels import _fast
except ImportError:
    _fast = None


def _time(fn, *args, repeats=5):
    fn(*args)  # warm-up
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    n = 1_000_000
    quat_a = rng.normal(size=(n, 4))
    quat_b = rng.normal(size=(n, 4))
    pts_a = rng.normal(size=(n, 7))
    pts_b = rng.normal(size=(n, 7))

    gens = rng.normal(size=(5, 3, 3, 4))
    gens[4] = 0.0
    for i in range(3):
        gens[4, i, i, 0] = 1.0
    words = rng.integers(0, 4, size=(5000, 12)).astype(np.int64)

    cases = [
        ("quat_mul (1e6)", "quat_mul", (quat_a, quat_b)),
        ("gauge (1e6)", "gauge", (pts_a,)),
        ("compose (1e6)", "compose", (pts_a, pts_b)),
        ("cygan (1e6)", "cygan", (pts_a, pts_b)),
        ("word_deviation (5000x12)", "word_deviation", (gens, words)),
    ]

    if _fast is None:
        print("compiled backend not built; timing the NumPy reference only")
    print(f"{'kernel':<28}{'numpy ref':>12}{'compiled':>12}{'speedup':>10}")
    for label, name, args in cases:
        t_ref = _time(getattr(_ref, name), *args)
        if _fast is None:
            print(f"{label:<28}{t_ref * 1e3:>10.1f}ms{'-':>12}{'-':>10}")
            continue
        t_fast = _time(getattr(_fast, name), *args)
        ref_out = getattr(_ref, name)(*args)
        fast_out = getattr(_fast, name)(*args)
        assert np.allclose(ref_out, fast_out, atol=1e-12), label
        print(f"{label:<28}{t_ref * 1e3:>10.1f}ms{t_fast * 1e3:>10.1f}ms"
              f"{t_ref / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
