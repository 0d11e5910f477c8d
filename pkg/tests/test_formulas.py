from math import comb

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from turan_forest import constructions as C
from turan_forest import formulas as F
from turan_forest.graph import Complete, EmptyGraph, Join, Union, build, canonical_form


def cf(expr):
    g = build(expr)
    return canonical_form(g) if g.n <= 10 else _wl(g)


def classes(res):
    return {canonical_form(d.build()) if d.n <= 10 else _wl(d.build()) for d in res.extremal}


def _wl(g):
    # large graphs: an isomorphism-invariant fingerprint; the tests pair it with exact edge counts
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return (g.n, g.edge_count, nx.weisfeiler_lehman_graph_hash(h, iterations=4))


@pytest.mark.parametrize("n, m, l, v", [(10, 10, 5, 36), (38, 10, 5, 78)])
def test_bracket_path_examples(n, m, l, v):
    assert F.bracket_path(n, m, l) == v


@pytest.mark.parametrize("n", range(2, 40))
def test_bracket_path_degenerate(n):
    assert F.bracket_path(n, 2, 2) == 0


@pytest.mark.parametrize("n, s, v", [(10, 5, 30), (23, 4, 63), (9, 1, 0), (50, 1, 0)])
def test_bracket_star_examples(n, s, v):
    assert F.bracket_star(n, s) == v


@pytest.mark.parametrize("n", range(14, 120))
def test_bracket_decomposition_consistency(n):
    assert F.bracket_path(n, 10, 5) == 36 + F.bracket_path(n - 9, 5, 5)


def test_bracket_domain():
    with pytest.raises(ValueError):
        F.bracket_path(4, 5, 5)
    with pytest.raises(ValueError):
        F.bracket_star(3, 4)


def test_ex_path_examples():
    r = F.ex_path(6, 4)
    assert r.value == 6 and classes(r) == {cf(Union([Complete(3), Complete(3)]))}
    r = F.ex_path(5, 4)
    assert r.value == 4
    assert classes(r) == {cf(Union([Complete(3), Complete(2)])), cf(Join(Complete(1), EmptyGraph(4)))}
    r = F.ex_path(5, 5)
    assert r.value == 6 and classes(r) == {cf(Union([Complete(4), Complete(1)]))}
    assert F.ex_path(3, 7).value == 3


@pytest.mark.parametrize("l", range(2, 9))
@pytest.mark.parametrize("d", range(1, 6))
def test_ex_path_at_multiples(l, d):
    n = d * (l - 1)
    assert 2 * F.ex_path(n, l).value == (l - 2) * n


def test_ex_two_p5_examples():
    r = F.ex_two_p5(10)
    assert r.value == 36
    assert cf(Union([Complete(9), Complete(1)])) in classes(r)
    r = F.ex_two_p5(38)
    assert r.value == 109
    assert classes(r) == {cf(Join(Complete(3), Union([Complete(2), EmptyGraph(33)])))}
    assert F.ex_two_p5(20).value == 55
    assert F.ex_two_p5(9).applicable == F.OUTSIDE_RANGE


def test_ex_k_even_paths_examples():
    r = F.ex_k_even_paths(23, 2, 4)
    assert r.value == 63 and r.threshold == 23
    assert classes(r) == {cf(Join(Complete(3), EmptyGraph(20)))}
    r = F.ex_k_even_paths(8, 2, 4)
    assert r.value == 21 and classes(r) == {cf(Union([Complete(7), Complete(1)]))}
    assert F.ex_k_even_paths(9, 2, 4).value == 22
    with pytest.raises(ValueError):
        F.ex_k_even_paths(30, 2, 5)


@pytest.mark.parametrize("n, v, regime", [(7, 21, 1), (8, 21, 2), (20, 38, 4), (12, 26, 3)])
def test_ex_k_stars_examples(n, v, regime):
    r = F.ex_k_stars(n, 2, 3)
    assert r.value == v and r.note == f"regime {regime}"


def test_ex_k_stars_single_star():
    assert F.ex_k_stars(3, 1, 3).value == 3
    assert F.ex_k_stars(9, 1, 3).value == 9


def test_path_star_examples():
    r = F.ex_path_star(26, 1, 1, 4)
    assert (r.value, r.applicable) == (49, F.PROVEN)
    assert {d.name for d in r.extremal} == {C.G1, C.G2}
    r = F.ex_path_star(80, 2, 1, 6)
    assert (r.value, r.applicable, r.threshold) == (459, F.PROVEN, 80)
    assert [d.name for d in r.extremal] == [C.G2]
    r = F.ex_path_star(59, 2, 1, 5)
    assert (r.value, [d.name for d in r.extremal]) == (227, [C.G3])
    assert F.ex_path_star(38, 2, 0, 5).value == 109


def test_path_star_below_thresholds():
    assert F.ex_path_star(79, 2, 1, 6).applicable != F.PROVEN
    r = F.ex_path_star(5, 2, 1, 5)
    assert r.applicable == F.OUTSIDE_RANGE and r.value == comb(5, 2)
    assert F.ex_path_star(30, 3, 1, 6).applicable == F.CONJECTURED


def test_path_star_without_stars_is_ex_path():
    assert F.ex_path_star(17, 1, 0, 6) == F.ex_path(17, 6)


@pytest.mark.parametrize("n", range(38, 120))
def test_path_star_matches_two_p5(n):
    assert F.ex_path_star(n, 2, 0, 5).value == F.ex_two_p5(n).value


@given(st.integers(1, 3), st.integers(0, 3), st.integers(2, 8), st.integers(1, 200))
@settings(max_examples=300)
def test_proven_results_build_to_value(k1, k2, L, n):
    r = F.ex_path_star(n, k1, k2, L)
    if r.applicable == F.PROVEN:
        for d in r.extremal:
            assert d.build().edge_count == r.value


@pytest.mark.parametrize("k1, k2, L", [(k1, k2, L) for k1 in (1, 2, 3) for k2 in range(4) for L in range(2, 9)])
def test_path_star_monotone_in_proven_regime(k1, k2, L):
    prev = None
    for n in range(1, 201):
        r = F.ex_path_star(n, k1, k2, L)
        if r.applicable != F.PROVEN:
            prev = None
            continue
        if prev is not None:
            assert r.value >= prev
        prev = r.value


def test_formula_result_json():
    doc = F.ex_path_star(26, 1, 1, 4).to_json()
    assert doc["value"] == 49 and doc["applicable"] == "PROVEN"
    assert {e["name"] for e in doc["extremal"]} == {"G1", "G2"}
    assert all(e["edges"] == 49 for e in doc["extremal"])


# -- crossover scanning ------------------------------------------------------


def test_crossover_first_remark():
    r = F.crossover_scan("bracket_path:10,5", "linear:3,-5", 10, 10**6, 38)
    assert r.sufficient and r.stabilization == 18 and r.slack == 20


def test_crossover_even_paths_example():
    r = F.crossover_scan("bracket_path:8,4", "bracket_star:4", 8, 10**5, 23)
    assert r.sufficient and r.stabilization <= 23


def test_crossover_trivial():
    r = F.crossover_scan("const:0", "n", 1, 100)
    assert r.stabilization == 1


def test_crossover_never_stabilizes_is_reported():
    r = F.crossover_scan("n", "const:0", 1, 100, threshold=50)
    assert r.stabilization is None and r.sufficient is False


@given(st.integers(1, 5000))
@settings(max_examples=40)
def test_crossover_chunk_invariance(chunk):
    base = F.crossover_scan("bracket_path:12,4", "bracket_star:6", 12, 5000, 40)
    assert F.crossover_scan("bracket_path:12,4", "bracket_star:6", 12, 5000, 40, chunk=chunk) == base


def test_crossover_jobs_invariance():
    a = F.crossover_scan("bracket_path:10,5", "linear:3,-5", 10, 200000, 38, chunk=7777)
    b = F.crossover_scan("bracket_path:10,5", "linear:3,-5", 10, 200000, 38, chunk=7777, jobs=2)
    assert a == b


def test_crossover_trace_matches_closed_forms():
    r = F.crossover_scan("bracket_path:10,5", "linear:3,-5", 10, 60, trace=True)
    assert r.trace == [(n, F.bracket_path(n, 10, 5), 3 * n - 5) for n in range(10, 61)]


def test_crossover_brute_force_agreement():
    fs = [(n, F.bracket_path(n, 12, 4), F.bracket_star(n, 6)) for n in range(12, 400)]
    last = max((n for n, a, b in fs if a >= b), default=11)
    assert F.crossover_scan("bracket_path:12,4", "bracket_star:6", 12, 399).stabilization == last + 1


@pytest.mark.parametrize("bad", ["foo", "linear:1", "bracket_path:3,5", "bracket_star:0", "const:x"])
def test_parse_formula_id_errors(bad):
    with pytest.raises(ValueError):
        F.parse_formula_id(bad)


def test_scan_domain_checked():
    with pytest.raises(ValueError):
        F.crossover_scan("bracket_path:10,5", "n", 1, 100)
