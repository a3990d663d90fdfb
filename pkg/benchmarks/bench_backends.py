"""Compare the JIT-compiled kernels against the pure-python fallback.

Runs the same workload in two fresh interpreters — one with numba active,
one with KTS_PURE_NUMPY=1 — and prints per-task timings plus speedups.
Warmup (JIT compilation) happens before any clock starts, so the numbers
reflect steady-state throughput.

Usage: python3 benchmarks/bench_backends.py [--quick]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def workload(quick):
    import numpy as np

    from ktsolve import Basis, BivariateSystem, Patch, convert, kernels, kts_solve
    from ktsolve.basis import eval_bi
    from ktsolve.reparam import reparametrize

    kernels.warmup()
    bases = (Basis.POWER, Basis.BERNSTEIN, Basis.CHEBYSHEV)
    rng = np.random.default_rng(7)
    timings = {}

    n_eval = 2000 if quick else 20000
    systems = {b: BivariateSystem(b, rng.standard_normal((5, 5, 2))) for b in bases}
    pts = rng.uniform(-1, 1, (n_eval, 2))
    for b in bases:
        eval_bi(systems[b], 0.1, 0.2)  # warm any lazy per-degree setup
    t0 = time.perf_counter()
    for b in bases:
        f = systems[b]
        lo, hi = b.domain
        for x, y in (lo + (hi - lo) * (pts + 1) / 2)[: n_eval // len(bases)]:
            eval_bi(f, x, y)
    timings["scalar evaluation"] = time.perf_counter() - t0

    n_patch = 200 if quick else 2000
    patches = []
    for b in bases:
        lo, hi = b.domain
        for _ in range(n_patch // len(bases)):
            r = rng.uniform(0.05, 0.3) * (hi - lo) / 2
            c = rng.uniform(lo + r, hi - r, 2)
            patches.append((b, Patch((c[0], c[1]), r)))
    t0 = time.perf_counter()
    for b, patch in patches:
        reparametrize(systems[b], patch)
    timings["patch restriction"] = time.perf_counter() - t0

    n_solve = 1 if quick else 3
    t0 = time.perf_counter()
    for i in range(n_solve):
        g = np.random.default_rng(40 + i)
        k = int(g.integers(2, 5))
        f = BivariateSystem(Basis.CHEBYSHEV, g.standard_normal((k + 1, k + 1, 2)))
        for b in bases:
            kts_solve(convert(f, b))
    timings["full solve"] = time.perf_counter() - t0
    return timings


def run_child(pure, quick):
    env = dict(os.environ)
    if pure:
        env["KTS_PURE_NUMPY"] = "1"
    else:
        env.pop("KTS_PURE_NUMPY", None)
    env["KTS_BENCH_CHILD"] = "quick" if quick else "full"
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__)],
        capture_output=True,
        text=True,
        env=env,
    )
    if proc.returncode != 0:
        sys.stderr.write(proc.stderr)
        raise SystemExit(f"child run failed (pure={pure})")
    return json.loads(proc.stdout)


def main():
    child = os.environ.get("KTS_BENCH_CHILD")
    if child:
        print(json.dumps(workload(quick=child == "quick")))
        return

    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--quick", action="store_true", help="smaller workload (~10x less work)"
    )
    args = parser.parse_args()

    print("timing numba backend ...", flush=True)
    jit = run_child(pure=False, quick=args.quick)
    print("timing pure-numpy backend ...", flush=True)
    pure = run_child(pure=True, quick=args.quick)

    width = max(len(k) for k in jit)
    print(f"\n{'task':<{width}}  {'numba':>10}  {'pure-numpy':>10}  {'speedup':>8}")
    for task in jit:
        ratio = pure[task] / jit[task] if jit[task] > 0 else float("inf")
        print(
            f"{task:<{width}}  {jit[task]:>9.3f}s  {pure[task]:>9.3f}s  {ratio:>7.1f}x"
        )


if __name__ == "__main__":
    main()
