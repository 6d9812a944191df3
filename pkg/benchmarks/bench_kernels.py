#!/usr/bin/env python3
"""Benchmark the compiled transport kernel against its pure-Python twin.

Workload: the two monodromy loops of a batch of hyperbolic triangle
orbifolds at the default tolerance.  Both kernels run the identical
algorithm, so the comparison isolates the extension-module speedup.

Usage: python3 benchmarks/bench_kernels.py [--max-order 8] [--repeats 3]
"""

import argparse
import time

from logorbi.hypergeometric import hyperbolic_triples, hypergeometric_monodromy, triangle_data
from logorbi.hypode import available_backends


def run_sweep(triples, backend, tol):
    worst = 0.0
    steps = 0
    for (p, q, r) in triples:
        report = hypergeometric_monodromy(triangle_data(p, q, r), integ_tol=tol, backend=backend)
        worst = max(worst, max(report.trace_defects))
        steps += report.integration_steps
    return worst, steps


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-order", type=int, default=8)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--tol", type=float, default=1e-10)
    args = parser.parse_args()

    triples = hyperbolic_triples(args.max_order)
    data = [triangle_data(p, q, r) for p, q, r in triples]
    print(f"workload: {len(data)} hyperbolic triples up to order {args.max_order}, "
          f"tol {args.tol:g}, best of {args.repeats}")

    results = {}
    for backend in available_backends():
        best = float("inf")
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            worst, steps = run_sweep(triples, backend, args.tol)
            best = min(best, time.perf_counter() - t0)
        results[backend] = (best, worst, steps)
        print(f"{backend:>9}: {best:8.3f} s   "
              f"{best / len(data) * 1000:7.2f} ms/triple   "
              f"worst trace defect {worst:.2e}   {steps} steps")

    if "compiled" in results and "python" in results:
        speedup = results["python"][0] / results["compiled"][0]
        print(f"\nspeedup (python / compiled): {speedup:.1f}x")
    elif "compiled" not in results:
        print("\ncompiled kernel not built; run pip install -e . with Cython available")


if __name__ == "__main__":
    main()
