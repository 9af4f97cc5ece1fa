"""Compare the compiled kernels against the pure-numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]

Times the raw kernels on realistic slice stacks and a few end-to-end
operations (tsvt, tensor completion).  The end-to-end timings use
whichever backend is active in this process, so the script reports both
the kernel-level ratio and the active backend name.
"""

import argparse
import time

import numpy as np

from tubal import _kernels_py, backend, prox, solvers, synth


def _best_of(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(repeats):
    try:
        from tubal import _kernels
    except ImportError:
        _kernels = None

    rng = np.random.default_rng(0)
    cases = [
        ("svd_shrink 64x64x32", (32, 64, 64)),
        ("svd_shrink 128x128x16", (16, 128, 128)),
        ("svd_shrink 32x256x8", (8, 32, 256)),
    ]
    print(f"{'kernel case':28s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, shape in cases:
        slices = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        thresh = np.full((shape[0], min(shape[1], shape[2])), 0.3)
        t_py = _best_of(lambda: _kernels_py.svd_shrink_slices(slices, thresh), repeats)
        if _kernels is None:
            print(f"{name:28s} {t_py * 1e3:9.2f}ms  (compiled kernels not built)")
            continue
        t_c = _best_of(lambda: _kernels.svd_shrink_slices(slices, thresh), repeats)
        print(f"{name:28s} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms {t_py / t_c:7.2f}x")

    x = rng.standard_normal((128, 128, 32))
    for name, py_fn, c_fn in [
        (
            "soft_threshold 128^2x32",
            lambda: _kernels_py.soft_threshold(x, 0.2),
            None if _kernels is None else lambda: _kernels.soft_threshold(x, 0.2),
        ),
        (
            "circ_diff axis 0",
            lambda: _kernels_py.circ_diff(x, 0),
            None if _kernels is None else lambda: _kernels.circ_diff(x, 0),
        ),
    ]:
        t_py = _best_of(py_fn, repeats)
        if c_fn is None:
            print(f"{name:28s} {t_py * 1e3:9.2f}ms  (compiled kernels not built)")
            continue
        t_c = _best_of(c_fn, repeats)
        print(f"{name:28s} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms {t_py / t_c:7.2f}x")


def bench_end_to_end(repeats):
    rng = np.random.default_rng(1)
    y = rng.standard_normal((64, 64, 16))
    t_tsvt = _best_of(lambda: prox.tsvt(y, 0.5), repeats)

    x0 = synth.low_tubal_rank(40, 40, 12, 2, seed=0)
    mask = synth.missing_mask(x0.shape, 0.5, seed=1)
    obs = np.where(mask, x0, 0.0)
    t_lrtc = _best_of(lambda: solvers.lrtc(obs, mask), max(1, repeats // 2))

    print()
    print(f"end-to-end with '{backend.backend_name()}' backend:")
    print(f"{'tsvt 64x64x16':28s} {t_tsvt * 1e3:9.2f}ms")
    print(f"{'lrtc 40x40x12 (full solve)':28s} {t_lrtc * 1e3:9.2f}ms")
    print()
    print("rerun under TUBAL_PURE_PYTHON=1 to time the fallback end to end")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    bench_kernels(args.repeats)
    bench_end_to_end(args.repeats)


if __name__ == "__main__":
    main()
