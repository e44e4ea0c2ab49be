"""Compare the compiled GF(p) kernel against the pure-numpy fallback.

Runs each backend in a subprocess (the backend is chosen at import time via
ARQUIVER_BACKEND) over three workloads:

  * rref    - row reduction of random GF(5) matrices
  * matmul  - exact modular products
  * duality - an end-to-end pairwise duality verification

Usage: python3 benchmarks/bench_backends.py
"""

from __future__ import annotations

import json
import os
import subprocess
import sys
import time

import numpy as np


def _bench_primitives(p: int = 5) -> dict[str, float]:
    from arquiver import _gfkernel

    rng = np.random.default_rng(0)
    out: dict[str, float] = {}

    sizes = [(60, 90), (120, 180), (240, 360)]
    mats = [rng.integers(0, p, size=s, dtype=np.int64) for s in sizes]
    start = time.perf_counter()
    for _ in range(30):
        for m in mats:
            _gfkernel.rref(m, p)
    out["rref"] = time.perf_counter() - start

    pairs = [
        (rng.integers(0, p, size=(n, n), dtype=np.int64),
         rng.integers(0, p, size=(n, n), dtype=np.int64))
        for n in (64, 128, 256)
    ]
    start = time.perf_counter()
    for _ in range(30):
        for a, b in pairs:
            _gfkernel.matmul(a, b, p)
    out["matmul"] = time.perf_counter() - start
    return out


def _bench_duality() -> float:
    from arquiver.arsubcat import indec_pool, verify_ar_duality
    from arquiver.exactlin import PrimeField
    from arquiver.quivalg import Quiver, RelationTerm, build_algebra

    q = Quiver(1, [("x", 0, 0)])
    kx3 = build_algebra(q, [[RelationTerm(1, ("x", "x", "x"))]], PrimeField(5))
    start = time.perf_counter()
    pool = indec_pool(kx3, (3,))
    items = [(f"m{i}", m) for i, m in enumerate(pool)]
    report = verify_ar_duality(kx3, "FULL", items)
    assert report.all_equal
    return time.perf_counter() - start


def worker() -> None:
    from arquiver import _gfkernel

    results = {"backend": _gfkernel.BACKEND}
    results.update(_bench_primitives())
    results["duality"] = _bench_duality()
    print(json.dumps(results))


def main() -> int:
    here = os.path.abspath(__file__)
    rows = []
    for requested in ("c", "py"):
        env = dict(os.environ, ARQUIVER_BACKEND=requested)
        proc = subprocess.run(
            [sys.executable, here, "--worker"],
            env=env, capture_output=True, text=True, timeout=600,
        )
        if proc.returncode != 0:
            print(f"backend {requested!r} unavailable:\n{proc.stderr.strip()}")
            continue
        rows.append(json.loads(proc.stdout.strip().splitlines()[-1]))

    if not rows:
        print("no backend ran")
        return 1
    workloads = ("rref", "matmul", "duality")
    header = f"{'workload':<10}" + "".join(f"{r['backend']:>12}" for r in rows)
    if len(rows) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for w in workloads:
        line = f"{w:<10}" + "".join(f"{r[w]:>11.3f}s" for r in rows)
        if len(rows) == 2 and rows[0][w] > 0:
            line += f"{rows[1][w] / rows[0][w]:>9.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    if "--worker" in sys.argv:
        worker()
    else:
        sys.exit(main())
