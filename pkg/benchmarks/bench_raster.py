"""Time the raster classifier's numba and numpy backends side by side.

Usage:
    python benchmarks/bench_raster.py --resolution 512 --samples 1001 --repeats 3

The numba kernel is warmed up once before timing so compilation is not
counted.  Set POLYVOR_THREADS to see thread-count scaling.
"""

import argparse
import os
import statistics
import time

from polyvor import hardy_weinberg_curve, raster_voronoi, sample_curve, validate_metric
from polyvor import _kernels

METRICS = {
    "hexagon": [[0, 1, 1], [1, 0, 1], [1, 1, 0]],
    "two-cell": [[0, 2, 3], [2, 0, 4], [3, 4, 0]],
    "three-cell": [[0, 2, 1], [2, 0, 2], [1, 2, 0]],
}


def time_backend(sample, d, resolution, repeats, force_numpy):
    if force_numpy:
        os.environ["POLYVOR_NO_NUMBA"] = "1"
    else:
        os.environ.pop("POLYVOR_NO_NUMBA", None)
    name = _kernels.backend_name()
    raster_voronoi(sample, d, 32)           # warm-up / jit compile
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        raster_voronoi(sample, d, resolution)
        times.append(time.perf_counter() - t0)
    return name, times


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--metric", choices=sorted(METRICS), default="two-cell")
    ap.add_argument("--resolution", type=int, default=512)
    ap.add_argument("--samples", type=int, default=1001)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    d = validate_metric(METRICS[args.metric])
    sample = sample_curve(hardy_weinberg_curve(), args.samples)
    pixels = args.resolution ** 2

    print(f"metric={args.metric} resolution={args.resolution} "
          f"samples={args.samples} repeats={args.repeats}")
    rows = []
    for force_numpy in (False, True):
        name, times = time_backend(sample, d, args.resolution, args.repeats,
                                   force_numpy)
        best = min(times)
        rows.append((name, best))
        print(f"  {name:<6} best {best * 1000:8.1f} ms   "
              f"median {statistics.median(times) * 1000:8.1f} ms   "
              f"{pixels / best / 1e6:7.1f} Mpix/s")
    if len({r[0] for r in rows}) == 2:
        print(f"  speedup {rows[1][1] / rows[0][1]:.1f}x "
              f"({rows[0][0]} over {rows[1][0]})")
    else:
        print("  (numba unavailable: both runs used the numpy kernel)")


if __name__ == "__main__":
    main()
