import os

import pytest
from hypothesis import given

from specgen import specs
from toeplitz_words.debruijn import (
    build_graph,
    degree_profile,
    even_arc_count,
    export_dot,
    export_json,
    graph_from_json,
    graph_stats,
    graph_to_dot,
    graph_to_json,
    palindrome_count_from_graph,
    reversal_is_isomorphism,
    self_reflected_arcs,
)
from toeplitz_words.errors import RangeError, VerificationError
from toeplitz_words.language_oracle import collect_language


@pytest.fixture(scope="module")
def gr_index(gr):
    return collect_language(gr, 40)


def test_grigorchuk_g1(gr_index):
    g = build_graph(gr_index, 1)
    assert (len(g.vertices), len(g.edges)) == (4, 6)
    a = g.vertex_id(b"\x00")
    # three 2-cycles a -> x -> a
    for x in (1, 2, 3):
        assert {(e.source, e.target) for e in g.edges} >= {(a, x), (x, a)}
    st = graph_stats(g)
    assert st.branch_vertices == (a,)
    assert st.strongly_connected


def test_grigorchuk_g2(gr_index):
    g = build_graph(gr_index, 2)
    assert (len(g.vertices), len(g.edges)) == (6, 8)


def test_single_branch_at_block_length(gr, gr_index):
    for k in range(1, 5):
        g = build_graph(gr_index, gr.block_length(k))
        assert len(graph_stats(g).branch_vertices) == 1


def test_pd_g1(pd):
    g = build_graph(collect_language(pd, 4), 1)
    st = graph_stats(g)
    assert [g.vertices[v] for v in st.branch_vertices] == [b"\x00"]


def test_sturmian_sizes(fib):
    idx = collect_language(fib, 60)
    for L in range(0, 50):
        g = build_graph(idx, L)
        assert (len(g.vertices), len(g.edges)) == (L + 1, L + 2)


@given(specs(max_depth=2))
def test_structure_property(spec):
    idx = collect_language(spec, 18)
    for L in range(16):
        g = build_graph(idx, L)
        st = graph_stats(g)
        assert len(g.vertices) == idx.complexity(L)
        assert len(g.edges) == idx.complexity(L + 1)
        assert {g.vertices[v] for v in st.branch_vertices} == {w for w, _ in idx.right_special_words(L)}
        assert reversal_is_isomorphism(g)
        assert st.strongly_connected
        assert palindrome_count_from_graph(g, st) == idx.palindromes(L)


def test_even_arcs_differ_from_palindromes(pd):
    # the plain even-arc count both misses palindromic branch vertices and
    # counts even arcs that are not their own reflection
    idx = collect_language(pd, 12)
    g = build_graph(idx, 5)
    st = graph_stats(g)
    assert idx.palindromes(5) == 4
    assert even_arc_count(st) == 5
    assert len(self_reflected_arcs(g, st)) == 3
    g0 = build_graph(idx, 0)
    assert (even_arc_count(graph_stats(g0)), idx.palindromes(0)) == (0, 1)


def test_degree_profile(gr_index):
    prof = degree_profile(build_graph(gr_index, 1))
    assert prof[(3, 3)] == 1 and prof[(1, 1)] == 3


def test_range_error(gr_index):
    with pytest.raises(RangeError):
        build_graph(gr_index, gr_index.max_valid_L)


def test_dot_export(tmp_path, gr_index):
    g = build_graph(gr_index, 1)
    p1, p2 = tmp_path / "a.dot", tmp_path / "b.dot"
    export_dot(g, str(p1))
    export_dot(g, str(p2))
    body = p1.read_text()
    assert body == p2.read_text()
    assert sum(1 for line in body.splitlines() if "[label=" in line and "->" not in line) == 4
    assert sum(1 for line in body.splitlines() if "->" in line) == 6
    assert body == graph_to_dot(g)


def test_empty_graph_not_written(tmp_path):
    from toeplitz_words.debruijn import DeBruijnGraph

    target = tmp_path / "g.dot"
    with pytest.raises(VerificationError):
        export_dot(DeBruijnGraph(3, (), ()), str(target))
    assert not target.exists()
    assert os.listdir(tmp_path) == []


def test_json_roundtrip(tmp_path, gr_index):
    g = build_graph(gr_index, 3)
    back = graph_from_json(graph_to_json(g), g.alphabet)
    assert back.vertices == g.vertices and back.edges == g.edges
    path = tmp_path / "g.json"
    export_json(g, str(path))
    assert path.read_text().endswith("\n")
