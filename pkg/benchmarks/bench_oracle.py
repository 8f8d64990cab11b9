"""Compare the numba and numpy enumeration backends.

    python3 benchmarks/bench_oracle.py [--cases CL:5 L:8 CL:10] [--repeat 3]

The first numba call per process pays compilation (or cache load); it is
timed separately as ``warmup``.
"""

import argparse
import time

from ladderdist.oracle import HAVE_NUMBA, build_named_graph, enumerate_distribution


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", nargs="+", default=["CL:5", "L:6", "L:8", "CL:10"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = ["numpy"]
    if HAVE_NUMBA:
        backends.insert(0, "numba")
        t0 = time.perf_counter()
        enumerate_distribution(build_named_graph("L", 1), backend="numba")
        print(f"numba warmup {time.perf_counter() - t0:.3f}s")

    print(f"{'graph':<8}{'systems':>10}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for case in args.cases:
        tag, n = case.split(":")
        g = build_named_graph(tag, int(n))
        row, results = [], []
        for b in backends:
            t, dist = best_of(lambda: enumerate_distribution(g, backend=b, budget=1 << 30), args.repeat)
            row.append(t)
            results.append(dist)
        assert all(r == results[0] for r in results), f"backends disagree on {case}"
        speed = f"{row[-1] / row[0]:>9.1f}x" if len(row) == 2 and row[0] > 0 else ""
        print(f"{case:<8}{g.rotation_count():>10}" + "".join(f"{t:>11.4f}s" for t in row) + speed)


if __name__ == "__main__":
    main()
