"""Compare the compiled kernel against the pure-Python fallback.

Micro benchmarks time the hot kernel operations on random 6x6 matrices over
GF(4); the macro benchmark times a catalog build plus the counts suite at
q = 3.  The script re-executes itself under TERNIONS_PURE=1 to collect the
fallback numbers, so run it without that variable set.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time


def bench_micro(repeat):
    from ternions.gf import make_field

    f = make_field(2, 2)
    kern = f.kernel
    rng = random.Random(0)
    mats = [
        tuple(tuple(rng.randrange(4) for _ in range(6)) for _ in range(6))
        for _ in range(200)
    ]
    invertible = [m for m in mats if kern.rank(m) == 6]
    out = {}

    t0 = time.perf_counter()
    for _ in range(repeat):
        for m in mats:
            kern.rref(m)
    out["rref_6x6"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeat):
        for i in range(0, len(mats) - 1, 2):
            kern.meet(mats[i][:3], mats[i + 1][:3], 6)
    out["meet_3x6"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeat):
        for m in invertible:
            kern.matinv(m)
    out["matinv_6x6"] = time.perf_counter() - t0
    return out


def bench_macro():
    from ternions.gf import make_field
    from ternions.suites import VerifyContext, run_suites

    f = make_field(3, 1)
    t0 = time.perf_counter()
    ctx = VerifyContext(field=f, seed=0)
    ctx.catalog
    build = time.perf_counter() - t0

    t0 = time.perf_counter()
    claims = run_suites(ctx, ["counts"])
    suite = time.perf_counter() - t0
    assert all(c["ok"] for c in claims)
    return {"catalog_q3": build, "counts_suite_q3": suite}


def run_one(repeat):
    from ternions.kernels import BACKEND

    rows = {"backend": BACKEND}
    rows.update(bench_micro(repeat))
    rows.update(bench_macro())
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--json", action="store_true", help="machine output, one backend")
    args = ap.parse_args()

    if args.json:
        print(json.dumps(run_one(args.repeat)))
        return

    here = run_one(args.repeat)
    env = dict(os.environ, TERNIONS_PURE="1")
    other = json.loads(
        subprocess.run(
            [sys.executable, __file__, "--repeat", str(args.repeat), "--json"],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        ).stdout
    )
    if here["backend"] == other["backend"]:
        print(f"only the {here['backend']} backend is available; no comparison")

    keys = [k for k in here if k != "backend"]
    width = max(len(k) for k in keys)
    print(f"{'operation':<{width}}  {here['backend']:>10}  {other['backend']:>10}  speedup")
    for k in keys:
        a, b = here[k], other[k]
        ratio = b / a if a else float("inf")
        print(f"{k:<{width}}  {a:>9.3f}s  {b:>9.3f}s  {ratio:>6.1f}x")


if __name__ == "__main__":
    main()
