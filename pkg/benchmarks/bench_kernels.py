"""Time the hot kernels under numba and under the numpy fallback.

Each backend runs in its own interpreter because the choice is made at
import time from SHARPINTERP_NO_NUMBA.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from sharpinterp import _kernels, green, backend

def best(fn, repeat):
    out = None
    ts = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        ts.append(time.perf_counter() - t)
    return min(ts), out

repeat = int(sys.argv[1])
lam = np.geomspace(0.5, 1e4, 64)
cases = {
    "lattice_counts n=3 N=64": lambda: _kernels.lattice_counts(3, 64).sum(),
    "torus series n=2 (64 lam)": lambda: green.green_torus_series(2, 0, 2, 10.0).value + green.evaluate(green.ProblemSpec.torus(2, 0, 2), lam * 1e-3)[0].sum(),
    "torus series n=3 N=256 (64 lam)": lambda: green.evaluate(green.ProblemSpec.torus(3, 0, 2), lam * 100)[0].sum(),
    "T2 closed form K0 sums (64 lam)": lambda: green.evaluate(green.ProblemSpec.torus(2, 1, 2), lam)[0].sum(),
    "beta3 lattice sum": lambda: green._beta3.__wrapped__(7),
    "sphere2 m=3 (64 lam)": lambda: green.evaluate(green.ProblemSpec.sphere2(3), lam)[0].sum(),
    "interval4 (64 lam)": lambda: green.evaluate(green.ProblemSpec.interval4(), lam)[0].sum(),
}
# warm-up compiles the numba kernels outside the timed region
for fn in cases.values():
    fn()
res = {}
for name, fn in cases.items():
    t, v = best(fn, repeat)
    res[name] = {"seconds": t, "value": float(v)}
print(json.dumps({"backend": backend(), "results": res}))
"""


def run(no_numba, repeat):
    env = dict(os.environ, SHARPINTERP_NO_NUMBA="1" if no_numba else "0")
    out = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'kernel':36s} {fast['backend']:>10s} {slow['backend']:>10s} {'speedup':>8s} {'rel diff':>9s}")
    for name, r in fast["results"].items():
        s = slow["results"][name]
        diff = abs(r["value"] - s["value"]) / max(abs(s["value"]), 1e-300)
        print(f"{name:36s} {r['seconds']:10.4f} {s['seconds']:10.4f} {s['seconds'] / r['seconds']:8.1f} {diff:9.1e}")


if __name__ == "__main__":
    main()
