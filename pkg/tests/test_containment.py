import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import graphs, graphs_with_perm
from turan_forest import constructions as C
from turan_forest.containment import (
    Embedding,
    contains_forest,
    is_free,
    kernel_arrays,
    naive_contains,
    verify_embedding,
)
from turan_forest.forest import parse_spec
from turan_forest.graph import Complete, Copies, Graph, build
from turan_forest.verify import small_specs

SPECS = small_specs(6)
specs = st.sampled_from(SPECS)


def checked(g, spec, symmetry=None):
    """contains_forest with the soundness invariant enforced on every positive answer."""
    emb = contains_forest(g, spec, symmetry)
    if emb is not None:
        assert verify_embedding(g, spec, emb)
    return emb


def test_g3_38_is_2p5_free():
    d = C.g3(38, 0)
    assert checked(d.build(), "2P5", d.symmetry()) is None


def test_complete_graph_contains_everything_that_fits():
    assert checked(Graph.complete(10), "2P5") is not None
    assert checked(Graph.complete(9), "2P5") is None


def test_h_contains_forest_below_d_minus_1():
    d = C.h_family(9, 1, 4, 0)
    assert checked(d.build(), "P4+S3", d.symmetry()) is not None


def test_g1_26_is_free():
    d = C.g1(26, 1, 4)
    assert checked(d.build(), "P4+S3", d.symmetry()) is None


def test_g2_80_is_free():
    d = C.g2(80, 2, 1, 6)
    assert is_free(d.build(), "2P6+S5", d.symmetry())


@pytest.mark.parametrize("spec", ["P2", "S3", "2P5+S4"])
def test_empty_graph_is_free(spec):
    assert is_free(Graph.empty(12), spec)


def test_two_k5_contains_2p5():
    e = Copies(2, Complete(5))
    assert not is_free(build(e), "2P5")


def test_symmetry_hints_do_not_change_answers():
    for d in [C.g1(20, 2, 4), C.g2(15, 2, 1, 4), C.h_family(14, 1, 4, 1), C.g3(12, 1)]:
        for spec in ["P4+S3", "2P4+S3", "P4+2S3", "2P5+S4", "3P4"]:
            g = d.build()
            assert (checked(g, spec) is None) == (checked(g, spec, d.symmetry()) is None)


def test_bad_symmetry_hint_rejected():
    g = Graph.from_edges(4, [(0, 1), (1, 2)])
    with pytest.raises(ValueError, match="automorphism"):
        contains_forest(g, "P2", [((0,), (3,))])
    with pytest.raises(ValueError):
        contains_forest(g, "P2", [((0, 1), (2,))])
    with pytest.raises(ValueError):
        contains_forest(g, "P2", [((0,), (2,)), ((2,), (3,))])


def test_certificate_layout_follows_spec_order():
    g = Graph.complete(9)
    spec = parse_spec("S3+P5")
    emb = checked(g, spec)
    assert [len(p) for p in emb.parts] == [c.vertices for c in spec.components]
    doc = emb.to_json()
    assert [c["kind"] for c in doc["components"]] == [c.kind for c in spec.components]


def test_kernel_order_puts_paths_first():
    kinds, sizes = kernel_arrays(parse_spec("2S3+P5"))
    assert list(kinds) == sorted(kinds)
    assert sorted(sizes) == [3, 3, 5]


# -- the independent checker ------------------------------------------------


def test_verify_embedding_negatives():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4)])
    spec = parse_spec("P3+S1")
    assert verify_embedding(g, spec, [[0, 1, 2], [3, 4]])
    assert not verify_embedding(g, spec, [[0, 1, 2], [2, 3]])  # repeated vertex
    assert not verify_embedding(g, spec, [[0, 2, 1], [3, 4]])  # non-edge 0-2
    assert not verify_embedding(g, spec, [[0, 1], [3, 4]])  # wrong size
    assert not verify_embedding(g, spec, [[0, 1, 2]])  # missing component
    assert not verify_embedding(g, spec, [[0, 1, 9], [3, 4]])  # out of range
    assert not verify_embedding(g, spec, [[0, 1, "x"], [3, 4]])
    assert not verify_embedding(g, spec, None)
    assert not verify_embedding(g, spec, Embedding(spec, ((0, 1, 2),)))


def test_verify_star_center_first():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert verify_embedding(g, "S3", [[0, 1, 2, 3]])
    assert not verify_embedding(g, "S3", [[1, 0, 2, 3]])


# -- properties --------------------------------------------------------------


@given(graphs(max_n=7), specs)
@settings(max_examples=400)
def test_agrees_with_naive(g, spec):
    assert (checked(g, spec) is not None) == naive_contains(g, spec)


@given(graphs_with_perm(max_n=10), specs)
@settings(max_examples=200)
def test_permutation_invariance(gp, spec):
    g, perm = gp
    assert is_free(g, spec) == is_free(g.relabel(perm), spec)


@given(graphs(min_n=2, max_n=10), specs, st.data())
@settings(max_examples=200)
def test_edge_monotonicity(g, spec, data):
    assume(not is_free(g, spec))
    missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)]
    assume(missing)
    u, v = data.draw(st.sampled_from(missing))
    assert checked(g.with_edge(u, v), spec) is not None


@given(graphs(max_n=10), specs)
@settings(max_examples=200)
def test_deterministic(g, spec):
    assert contains_forest(g, spec) == contains_forest(g, spec)
