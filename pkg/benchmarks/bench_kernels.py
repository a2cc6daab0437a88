"""Benchmark the compiled enumeration kernel against the numpy fallback.

Runs the oracle-style workloads that dominate the test suite: bulk verdict
vectors, satisfying-assignment counts, and the balanceability projection,
on realistic graph/group instances.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import sys
import time

from ballab import _kernels_py
from ballab.abelian import parse_group
from ballab.multigraph import build_graph
from ballab.oracle import oracle_forms

try:
    from ballab import _kernels
except ImportError:
    _kernels = None


def k4():
    vertices = "1234"
    edges = [
        (f"e{u}{w}", u, w) for i, u in enumerate(vertices) for w in vertices[i + 1 :]
    ]
    return build_graph(vertices, edges)


def bowtie_edge():
    return build_graph(
        ["u", "v", "p", "q"],
        [
            ("x", "u", "v"),
            ("a", "u", "p"),
            ("b", "p", "v"),
            ("c", "u", "q"),
            ("d", "q", "v"),
        ],
    )


def workloads():
    z4 = parse_group("Z4")
    z2z2 = parse_group("Z2xZ2")
    g_k4, g_bow = k4(), bowtie_edge()
    return [
        (
            "verdicts  K4/Z4 W (4^10 = 1048576)",
            "satisfying_verdicts",
            (z4.moduli, 10, oracle_forms(g_k4, z4, "W")),
        ),
        (
            "count     K4/Z4 H (4^6 x 7 cycles)",
            "count_satisfying",
            (z4.moduli, 6, oracle_forms(g_k4, z4, "H")),
        ),
        (
            "count     bowtie/Z2xZ2 W (4^9 = 262144)",
            "count_satisfying",
            (z2z2.moduli, 9, oracle_forms(g_bow, z2z2, "W")),
        ),
        (
            "project   bowtie/Z4 B (outer 4^4 of 4^9)",
            "count_outer_satisfiable",
            (z4.moduli, 4, 9, oracle_forms(g_bow, z4, "W")),
        ),
    ]


def bench(backend, fn_name, args, repeat):
    fn = getattr(backend, fn_name)
    times = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - start)
    return min(times), result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"{'workload':<44} {'python':>10} {'cython':>10} {'speedup':>8}")
    for label, fn_name, fn_args in workloads():
        t_py, r_py = bench(_kernels_py, fn_name, fn_args, args.repeat)
        if _kernels is None:
            print(f"{label:<44} {t_py * 1e3:>8.1f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_cy, r_cy = bench(_kernels, fn_name, fn_args, args.repeat)
        same = (
            (r_py == r_cy)
            if isinstance(r_py, int)
            else bool((r_py == r_cy).all())
        )
        if not same:
            print(f"BACKEND MISMATCH on {label}", file=sys.stderr)
            return 1
        print(
            f"{label:<44} {t_py * 1e3:>8.1f}ms {t_cy * 1e3:>8.1f}ms "
            f"{t_py / t_cy:>7.1f}x"
        )
    if _kernels is None:
        print("compiled backend unavailable; numpy fallback timed alone")
    return 0


if __name__ == "__main__":
    sys.exit(main())
