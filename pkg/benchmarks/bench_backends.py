"""Compare the compiled kernel against the pure-numpy fallback.

Run:  python benchmarks/bench_backends.py
Both backends are loaded side by side (the fallback is always importable), so
no environment juggling is needed. Prints median wall time per operation.
"""

import statistics
import time

import numpy as np

from gngshape._kernels import fallback
from gngshape.gng import GngParams, GngTrainer
from gngshape.image import BinaryImage

try:
    from gngshape._kernels import _core
except ImportError:
    _core = None


def timed(fn, repeats=5):
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def disk_image(size=256, radius=90.0):
    ys, xs = np.mgrid[0:size, 0:size]
    return BinaryImage((xs - size / 2) ** 2 + (ys - size / 2) ** 2 <= radius**2)


def bench_training(kernel):
    import gngshape.gng as gng_mod

    img = disk_image()
    params = GngParams(seed=0)

    def run():
        original = gng_mod.gng_block
        gng_mod.gng_block = kernel.gng_block  # route the hot loop through one backend
        try:
            GngTrainer(img, params).run()
        finally:
            gng_mod.gng_block = original

    return timed(run, repeats=3)


def bench_dp(kernel, n=150, rows=40):
    rng = np.random.default_rng(0)
    a = rng.uniform(0, 5, size=(rows, n))
    b = rng.uniform(0, 5, size=(rows, n))
    diff = a.T[:, None, :] - b.T[None, :, :]
    cost = np.ascontiguousarray(np.sqrt((diff * diff).sum(axis=2)))

    def run():
        for shift in range(n):
            kernel.dp_cost(cost, 1.0, shift)

    return timed(run, repeats=3)


def main():
    backends = [("fallback", fallback)]
    if _core is not None:
        backends.insert(0, ("cython", _core))
    else:
        print("compiled extension unavailable; benchmarking fallback only")

    print(f"{'operation':<34}" + "".join(f"{name:>12}" for name, _ in backends))
    rows = [
        ("GNG training, 350 neurons, 256^2", bench_training),
        ("cyclic DP scan, 150x150 boundary", bench_dp),
    ]
    results = {}
    for label, bench in rows:
        line = f"{label:<34}"
        for name, kernel in backends:
            t = bench(kernel)
            results[(label, name)] = t
            line += f"{t * 1e3:>10.1f}ms"
        print(line)
    if _core is not None:
        for label, _ in rows:
            speedup = results[(label, "fallback")] / results[(label, "cython")]
            print(f"{label}: compiled is {speedup:.1f}x faster")


if __name__ == "__main__":
    main()
