"""Verification harness.  The pinned failure sets document two claims that
do not hold as stated on their grids; the analysis lives with the
acceptance notes in the README."""

import itertools
import json

import pytest

from turan_forest import constructions as C
from turan_forest import verify as V
from turan_forest.graph import Graph


def test_edge_formulas_pass():
    r = V.check_edge_formulas()
    assert r.status == V.PASS and r.counts()[V.PASS] == len(V.edge_formula_grid())


@pytest.mark.parametrize("thm", ["single-path", "even-paths", "two-p5"])
def test_freeness_suites_pass(thm):
    r = V.check_freeness(thm)
    assert r.status == V.PASS
    assert r.note == V.LOWER_BOUND_NOTE


def test_mutated_construction_is_caught():
    grid = [p for p in V.freeness_grid("two-p5") if p[1][0] <= 20]
    r = V.check_freeness("two-p5", grid=grid, construct=V.mutated_g3)
    assert r.status == V.FAIL
    bad = r.failures()[0]
    assert bad.counterexample["graph6"] and bad.counterexample["certificate"]


def test_freeness_grid_unknown():
    with pytest.raises(ValueError):
        V.freeness_grid("thm99")


H_FAMILY_FAILURES = {(n, 1) for n in (10, 13, 16, 19, 22, 25, 28)} | {(n, 2) for n in (14, 17, 20, 23, 26, 29)}


def test_h_family_failure_set_is_pinned():
    """Containment fails exactly at s = 0 with r = 0 (the star side is one vertex short)."""
    r = V.check_h_family()
    fails = {(p.params["n"], p.params["k"]) for p in r.failures()}
    assert fails == H_FAMILY_FAILURES
    assert all(p.params["s"] == 0 and p.params["r"] == 0 for p in r.failures())
    assert all(p.reason.startswith("expected a copy") for p in r.failures())
    passing = [p for p in r.points if p.status == V.PASS]
    assert len(passing) == 231 and not any(p.params["r"] == 0 and p.params["s"] == 0 for p in passing)


def _independent_contains_p4_s3(g: Graph) -> bool:
    """Place every S3 (center, 3 leaves), then look for a P4 in the rest."""
    for c in range(g.n):
        for leaves in itertools.combinations(g.neighbors(c), 3):
            rest = [v for v in range(g.n) if v != c and v not in leaves]
            for path in itertools.permutations(rest, 4):
                if path[0] < path[-1] and all(g.has_edge(a, b) for a, b in zip(path, path[1:])):
                    return True
    return False


def test_h_family_counterexample_confirmed_independently():
    g = C.h_family(10, 1, 4, 0).build()
    assert not _independent_contains_p4_s3(g)
    # and the checker is not vacuous: one more edge suffices
    assert _independent_contains_p4_s3(C.h_family(11, 1, 4, 0).build())


def test_gap_identity_passes():
    assert V.check_gap_identity().status == V.PASS


CROSSOVER_FAILURES = {(3, 2), (4, 2)}


def test_crossover_failure_set_is_pinned():
    """At path order 2 the claimed bound is below the stabilization point for k = 3, 4."""
    r = V.check_crossovers(hi_first=10**5, hi_second=10**4)
    fails = {(p.params["k"], p.params["L"]) for p in r.failures()}
    assert fails == CROSSOVER_FAILURES
    for p in r.failures():
        assert p.data["stabilization"] > p.data["threshold"]
    first = r.points[0]
    assert first.status == V.PASS and first.data["stabilization"] == 18


def test_crossover_failures_are_real_violations():
    from turan_forest.formulas import bracket_path, bracket_star, even_paths_threshold

    for k, L in CROSSOVER_FAILURES:
        th = even_paths_threshold(k, L)
        bad = [n for n in range(max(th, L * k), 200) if bracket_path(n, L * k, L) >= bracket_star(n, L * k // 2)]
        assert bad, (k, L)
    # the exact failing n, by hand from the closed forms
    assert [n for n in range(6, 50) if bracket_path(n, 6, 2) >= bracket_star(n, 3)] == [6]
    assert [n for n in range(8, 50) if bracket_path(n, 8, 2) >= bracket_star(n, 4)] == [8, 9]


def test_two_p5_range_passes():
    r = V.check_two_p5_range()
    assert r.status == V.PASS and len(r.points) == 51


def test_formula_vs_oracle_small():
    r = V.check_formula_vs_oracle("path", nmax=7, params={"l": [4, 5]})
    assert r.status == V.PASS
    r = V.check_formula_vs_oracle("path-star", nmax=7, params={"k1": 1, "k2": 1, "L": 4})
    assert {p.status for p in r.points} <= {V.PASS, V.SKIPPED}
    assert all("oracle" in p.data for p in r.points)


def test_containment_check_small():
    r = V.check_containment(nmax=5, max_vertices=5)
    assert r.status == V.PASS and r.grid["classes"] == 1 + 2 + 4 + 11 + 34


def test_small_specs_count():
    # parts of size 2..6, each in two kinds (path / star)
    assert len(V.small_specs(6)) == 28
    assert len(V.small_specs(3)) == 4


def test_permutation_invariance_report():
    r = V.check_permutation_invariance(seed=3, trials=20)
    assert r.status == V.PASS and r.grid["seed"] == 3


def test_report_json_is_serializable():
    r = V.check_h_family(grid=[(10, 1, 4, 0), (10, 1, 4, 2)])
    doc = json.loads(json.dumps(r.to_json()))
    assert doc["counts"] == {"PASS": 1, "FAIL": 1, "SKIPPED": 0}
    assert doc["status"] == "FAIL"


def test_unknown_suite():
    with pytest.raises(ValueError):
        V.run_suite("nope")
