import pytest
from hypothesis import given, strategies as st

from turan_forest.forest import PATH, STAR, Component, ForestSpec, ForestSpecError, canonical_family, parse_spec


def test_grammar_example():
    f = parse_spec("2P5+3S4")
    assert [(c.kind, c.size) for c in f.components].count((PATH, 5)) == 2
    assert [(c.kind, c.size) for c in f.components].count((STAR, 4)) == 3
    assert f.total_vertices == 25
    assert str(f) == "2P5+3S4"


def test_p4_plus_s3_is_family_1_1_4():
    f = parse_spec("P4+S3")
    assert f == canonical_family(1, 1, 4)
    assert f.total_vertices == 8
    assert f.total_edges == 3 + 3


@pytest.mark.parametrize(
    "text, pos",
    [("0P5", 0), ("", 0), ("P", 1), ("2Q5", 1), ("P1", 1), ("S0", 1), ("P4+", 3), ("P4 S3", 3), ("P4+x", 3)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ForestSpecError) as info:
        parse_spec(text)
    assert info.value.position == pos


def test_whitespace_and_case():
    assert parse_spec(" p4 + 2 s3 ") == parse_spec("P4+2S3")


@pytest.mark.parametrize("k1, k2, l, text", [(2, 3, 5, "2P5+3S4"), (1, 0, 7, "P7"), (0, 2, 4, "2S3")])
def test_canonical_family(k1, k2, l, text):
    assert str(canonical_family(k1, k2, l)) == text


def test_canonical_family_rejects_empty():
    with pytest.raises(ValueError):
        canonical_family(0, 0, 5)


def test_order_does_not_matter():
    assert parse_spec("S3+P4+P4") == parse_spec("2P4+S3")


def test_edge_list_is_a_forest():
    n, edges = parse_spec("P4+2S3").edge_list()
    assert n == 12 and len(edges) == 3 + 6
    assert all(0 <= a < n and 0 <= b < n and a != b for a, b in edges)


terms = st.tuples(st.integers(1, 3), st.sampled_from("PS"), st.integers(2, 9))


@given(st.lists(terms, min_size=1, max_size=4))
def test_str_parse_roundtrip(ts):
    f = parse_spec("+".join(f"{c}{k}{s}" for c, k, s in ts))
    assert parse_spec(str(f)) == f
    assert f.total_vertices == sum(c * (s if k == "P" else s + 1) for c, k, s in ts)


def test_component_validation():
    with pytest.raises(ValueError):
        Component("X", 3)
    assert Component(STAR, 4).vertices == 5
    assert ForestSpec([Component(PATH, 3)]).total_edges == 2
