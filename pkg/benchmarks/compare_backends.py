"""Time the numba and pure-numpy kernel backends on the same workloads.

Each backend runs in its own subprocess because the choice is fixed at import
time by ``POROLBP_PURE_NUMPY``.

    python3 benchmarks/compare_backends.py [--size 512] [--repeats 5]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from porolbp import kernels, train, detect
from porolbp.bench import bench_image, features_1d, features_2d
from porolbp.synth import synthesize

size, repeats = int(sys.argv[1]), int(sys.argv[2])
kernels.warmup()
img = bench_image(size)
clean = synthesize("periodic", size, 0, seed=1).image
test = synthesize("periodic", size, 5, seed=1).image

def best(fn):
    fn()
    t = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        t = min(t, time.perf_counter() - t0)
    return t

model = train(clean)
print(json.dumps({
    "backend": kernels.BACKEND,
    "features_1d": best(lambda: features_1d(img)),
    "features_2d": best(lambda: features_2d(img)),
    "train": best(lambda: train(clean)),
    "detect": best(lambda: detect(test, model)),
}))
"""


def run(size, repeats, pure):
    env = dict(os.environ, POROLBP_PURE_NUMPY="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", WORKER, str(size), str(repeats)],
                         env=env, check=True, capture_output=True, text=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    numba_r = run(args.size, args.repeats, pure=False)
    numpy_r = run(args.size, args.repeats, pure=True)
    print(f"{'workload':<14}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for key in ("features_1d", "features_2d", "train", "detect"):
        a, b = numba_r[key] * 1e3, numpy_r[key] * 1e3
        print(f"{key:<14}{a:>12.2f}{b:>12.2f}{b / a:>9.1f}x")
    print(f"1D/2D ratio   {numba_r['features_1d'] / numba_r['features_2d']:>12.3f}"
          f"{numpy_r['features_1d'] / numpy_r['features_2d']:>12.3f}")


if __name__ == "__main__":
    main()
