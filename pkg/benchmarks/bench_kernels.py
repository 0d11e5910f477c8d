"""Compare the numba kernels with the pure-Python fallback.

Each backend runs in its own interpreter (the switch is read at import
time).  The first numba call per kernel includes loading or compiling; it
is reported separately as ``warmup`` and excluded from the timings.

    python3 benchmarks/bench_kernels.py --repeat 3
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from turan_forest import _accel, constructions as C
from turan_forest.containment import contains_forest
from turan_forest.formulas import crossover_scan
from turan_forest.oracle import canonical_keys, turan_oracle

repeat, scan_hi = int(sys.argv[1]), int(sys.argv[2])

def free_g3():
    d = C.g3(40, 2)
    assert contains_forest(d.build(), "2P5+2S4", d.symmetry()) is None

def h_family():
    for n in range(8, 31):
        d = C.h_family(n, 1, 4, C.decompose(n, 1, 4).d - 1)
        contains_forest(d.build(), "P4+S3", d.symmetry())

CASES = {
    "containment G3(40,2) vs 2P5+2S4": free_g3,
    "containment H-family sweep": h_family,
    "enumerate classes n=7": lambda: canonical_keys(7),
    "oracle ex(8, 2P4)": lambda: turan_oracle(8, "2P4"),
    f"crossover scan n<={scan_hi:.0e}": lambda: crossover_scan("bracket_path:10,5", "linear:3,-5", 10, scan_hi, 38),
}

t = time.perf_counter()
for fn in CASES.values():
    fn()
out = {"backend": _accel.BACKEND, "warmup": time.perf_counter() - t, "cases": {}}
for name, fn in CASES.items():
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out["cases"][name] = best
print(json.dumps(out))
"""


def run(disable: bool, repeat: int, scan_hi: int) -> dict:
    env = dict(os.environ)
    env.pop("TURAN_FOREST_DISABLE_NUMBA", None)
    if disable:
        env["TURAN_FOREST_DISABLE_NUMBA"] = "1"
    p = subprocess.run([sys.executable, "-c", WORKER, str(repeat), str(scan_hi)], env=env,
                       capture_output=True, text=True, check=True)
    return json.loads(p.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best-of repetitions per case")
    ap.add_argument("--scan-hi", type=int, default=10**6)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    fast = run(False, args.repeat, args.scan_hi)
    slow = run(True, args.repeat, args.scan_hi)
    if args.json:
        print(json.dumps({"numba": fast, "python": slow}, indent=2))
        return 0
    width = max(map(len, fast["cases"]))
    print(f"{'case':<{width}}  {fast['backend']:>10}  {slow['backend']:>10}  speedup")
    for name, t_fast in fast["cases"].items():
        t_slow = slow["cases"][name]
        print(f"{name:<{width}}  {t_fast:>9.4f}s  {t_slow:>9.4f}s  {t_slow / t_fast:>6.1f}x")
    print(f"{'warmup (load/compile + first run)':<{width}}  {fast['warmup']:>9.2f}s  {slow['warmup']:>9.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
