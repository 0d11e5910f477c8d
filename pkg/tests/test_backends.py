"""The compiled kernels and the pure-Python fallback must give identical answers."""

import json
import os
import subprocess
import sys

import pytest

from turan_forest import _accel

WORKLOAD = r"""
import json
import numpy as np
from turan_forest import _accel, constructions as C
from turan_forest.containment import contains_forest
from turan_forest.formulas import crossover_scan
from turan_forest.oracle import canonical_keys, turan_oracle
from turan_forest.verify import small_specs

rng = np.random.default_rng(7)
out = {"backend": _accel.BACKEND}
out["keys6"] = [int(k) for k in canonical_keys(6)]
hits = []
for t in range(60):
    n = int(rng.integers(3, 10))
    upper = np.triu(rng.random((n, n)) < 0.5, 1)
    from turan_forest.graph import Graph
    g = Graph.from_adjacency((upper | upper.T).astype(np.uint8))
    for spec in small_specs(6)[::3]:
        e = contains_forest(g, spec)
        hits.append(None if e is None else [list(p) for p in e.parts])
out["hits"] = hits
d = C.g3(30, 1)
out["g3"] = contains_forest(d.build(), "2P5+S4", d.symmetry()) is None
r = turan_oracle(7, "P4+S3")
out["oracle"] = [r.max_edges, list(r.extremal_classes), r.graphs_examined]
out["scan"] = crossover_scan("bracket_path:10,5", "linear:3,-5", 10, 200000, 38, chunk=50000).to_json()
print(json.dumps(out))
"""


def run_workload(disable: bool) -> dict:
    env = dict(os.environ)
    env.pop(_accel.DISABLE_ENV, None)
    if disable:
        env[_accel.DISABLE_ENV] = "1"
    p = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, timeout=900)
    assert p.returncode == 0, p.stderr
    return json.loads(p.stdout)


@pytest.mark.skipif(_accel.numba is None, reason="numba not installed")
def test_backends_agree():
    fast, slow = run_workload(False), run_workload(True)
    assert (fast.pop("backend"), slow.pop("backend")) == ("numba", "python")
    assert fast == slow


def test_flag_selects_fallback():
    env = dict(os.environ, **{_accel.DISABLE_ENV: "1"})
    p = subprocess.run([sys.executable, "-c", "from turan_forest import BACKEND; print(BACKEND)"],
                       env=env, capture_output=True, text=True)
    assert p.stdout.strip() == "python"
