import itertools

import pytest

import oracles as O
from graphisg.errors import DomainError, ParseError, ResourceLimitError
from graphisg.graphs import (
    ANY,
    INDUCED,
    PATH,
    ROOTED,
    Graph,
    SubgraphRef,
    canonical_form,
    canonical_form_rooted,
    complement,
    enumerate_induced_subgraphs,
    enumerate_rooted_connected_induced,
    enumerate_rooted_path_pairs,
    enumerate_subgraphs,
    find_isomorphism,
    induced_subgraph,
    parse_graph,
    path_pair_key,
    subgraph_count,
    subgraph_intersection,
)

K2 = "v a\nv b\ne e1 a b\n"
P3 = "v a\nv b\nv c\ne e1 a b\ne e2 b c\n"
K3 = "v a\nv b\nv c\ne e1 a b\ne e2 b c\ne e3 a c\n"
DOUBLE = "v a\nv b\ne e1 a b\ne e2 a b\n"
LOOP = "v a\ne e1 a a\n"


def g_of(text):
    return parse_graph(text)


def raw(g):
    return list(g.vertices), [tuple(e) for e in g.edges]


def test_parse_roundtrip():
    g = g_of(P3)
    assert g.vertices == ("a", "b", "c")
    assert g.edges == (("e1", "a", "b"), ("e2", "b", "c"))
    assert parse_graph(g.to_text()) == g


def test_parse_ignores_comments_and_blanks():
    g = parse_graph("# hello\n\nv a\n  \n# more\nv b\ne e1 a b\n")
    assert g.n == 2 and g.m == 1


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("v a\nv a\n", 2),
        ("v a\ne e1 a b\n", 2),
        ("v a\nv b\ne e1 a b\ne e1 b a\n", 4),
        ("x a\n", 1),
        ("v a b\n", 1),
        ("v a\ne e1 a\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as err:
        parse_graph(text)
    assert err.value.lineno == lineno


def test_empty_graph():
    g = parse_graph("")
    assert g.n == 0 and g.m == 0
    assert subgraph_count(g) == 1
    assert len(enumerate_induced_subgraphs(g)) == 1


def test_degree_counts_loops_twice():
    g = g_of(LOOP)
    assert g.degree(0) == 2
    assert g.mult(0, 0) == 1


@pytest.mark.parametrize("text", [K2, P3, K3, DOUBLE, LOOP])
def test_subgraph_enumeration_matches_oracle(text):
    g = g_of(text)
    subs = enumerate_subgraphs(g)
    assert len(subs) == subgraph_count(g) == O.count_subgraphs(*raw(g))
    assert len(set((s.vmask, s.emask) for s in subs)) == len(subs)
    for s in subs:
        s.validate()


def test_subgraph_counts_frozen():
    # oracle-confirmed values, pinned
    assert subgraph_count(g_of(K2)) == 5
    assert subgraph_count(g_of(P3)) == 13
    assert subgraph_count(g_of(DOUBLE)) == 7
    assert subgraph_count(g_of(LOOP)) == 3


def test_subgraph_cap_is_loud():
    with pytest.raises(ResourceLimitError):
        enumerate_subgraphs(g_of(K3), cap=10)


def test_rooted_connected_induced_matches_oracle():
    for text, root in [(P3, "b"), (P3, "a"), (K3, "a"), (DOUBLE, "a"), (LOOP, "a")]:
        g = g_of(text)
        subs = enumerate_rooted_connected_induced(g, root)
        expected = O.rooted_connected_induced_subsets(*raw(g), root)
        assert len(subs) == len(expected)
        got = {frozenset(s.vertex_ids()) for s in subs}
        assert got == set(expected)
        for s in subs:
            s.validate()


def test_rooted_path_pairs_match_oracle():
    for text, root in [(P3, "a"), (P3, "b"), (K3, "a"), (DOUBLE, "a"), (LOOP, "a")]:
        g = g_of(text)
        pairs = enumerate_rooted_path_pairs(g, root)
        expected = O.rooted_paths(*raw(g), root)
        got = {tuple(g.vertices[i] for i in p.path) for p in pairs}
        assert got == set(expected)
        for p in pairs:
            p.validate()


def test_induced_subgraph_includes_all_inner_edges():
    g = g_of(K3)
    s = induced_subgraph(g, ["a", "b"])
    assert s.edge_ids() == ("e1",)
    assert s.flavor == INDUCED
    t = induced_subgraph(g, ["a", "b", "c"])
    assert set(t.edge_ids()) == {"e1", "e2", "e3"}


def test_subgraph_ref_validation():
    g = g_of(P3)
    with pytest.raises(DomainError):
        SubgraphRef(g, 0b001, 0b01, ANY).validate()  # edge without its endpoints
    with pytest.raises(DomainError):
        SubgraphRef(g, 0b011, 0b00, INDUCED).validate()  # missing induced edge
    with pytest.raises(DomainError):
        SubgraphRef(g, 0b101, g.edges_within(0b101), ROOTED, root=0).validate()  # a,c not connected
    with pytest.raises(DomainError):
        SubgraphRef(g, 0b011, 0b01, PATH, root=0, path=(0,)).validate()  # path misses a vertex


def test_intersection_flavors():
    g = g_of(K3)
    x = induced_subgraph(g, ["a", "b"])
    y = induced_subgraph(g, ["b", "c"])
    z = subgraph_intersection(x, y)
    assert z.flavor == INDUCED and z.vertex_ids() == ("b",)
    s = enumerate_subgraphs(g)[3]
    assert subgraph_intersection(s, y).flavor == ANY
    h = g_of(K3)  # equal host works, different host fails
    other = g_of(P3)
    with pytest.raises(DomainError):
        subgraph_intersection(x, induced_subgraph(other, ["a"]))
    assert subgraph_intersection(x, induced_subgraph(h, ["a", "c"])).nv == 1


def test_complement_involution():
    g = g_of(P3)
    gc = complement(g)
    assert gc.m == 1 and {gc.edges[0][1], gc.edges[0][2]} == {"a", "c"}
    gcc = complement(gc)
    assert gcc.vertices == g.vertices
    assert {frozenset(e[1:]) for e in gcc.edges} == {frozenset(e[1:]) for e in g.edges}


def test_complement_rejects_non_simple():
    with pytest.raises(DomainError):
        complement(g_of(LOOP))
    with pytest.raises(DomainError):
        complement(g_of(DOUBLE))


def shuffle_ids(g, perm_v, perm_e):
    vnames = {v: f"x{perm_v[i]}" for i, v in enumerate(g.vertices)}
    enames = {e[0]: f"f{perm_e[j]}" for j, e in enumerate(g.edges)}
    edges = [(enames[eid], vnames[u], vnames[w]) for eid, u, w in g.edges]
    verts = [vnames[v] for v in g.vertices]
    return Graph(sorted(verts), sorted(edges))


@pytest.mark.parametrize("text", [K2, P3, K3, DOUBLE, LOOP])
def test_canonical_form_is_relabel_invariant(text):
    g = g_of(text)
    base = canonical_form(g)
    for perm_v in itertools.permutations(range(g.n)):
        h = shuffle_ids(g, perm_v, list(range(g.m)))
        assert canonical_form(h) == base


def test_canonical_form_separates_non_isomorphic():
    pairs = [
        (P3, K3),
        (DOUBLE, LOOP),
        (K2, DOUBLE),
        ("v a\nv b\n", K2),
    ]
    for t1, t2 in pairs:
        assert canonical_form(g_of(t1)) != canonical_form(g_of(t2))


def test_canonical_form_agrees_with_oracle_on_all_pairs():
    texts = [K2, P3, K3, DOUBLE, LOOP, "v a\nv b\n", "v a\nv b\nv c\ne e1 a b\n"]
    gs = [g_of(t) for t in texts]
    for g, h in itertools.product(gs, gs):
        assert (canonical_form(g) == canonical_form(h)) == O.isomorphic(raw(g), raw(h))


def test_canonical_form_cap():
    g = Graph([f"v{i}" for i in range(12)], [])
    with pytest.raises(ResourceLimitError):
        canonical_form(g)


def test_rooted_canonical_form_distinguishes_roots():
    g = g_of(P3)
    assert canonical_form_rooted(g, "a") == canonical_form_rooted(g, "c")
    assert canonical_form_rooted(g, "a") != canonical_form_rooted(g, "b")


def test_find_isomorphism_positive_and_negative():
    g = g_of(K3)
    h = shuffle_ids(g, (2, 0, 1), (1, 2, 0))
    iso = find_isomorphism(g, h)
    assert iso is not None
    iso.validate()
    assert find_isomorphism(g_of(P3), g_of(K3)) is None
    assert find_isomorphism(g_of(DOUBLE), g_of(LOOP)) is None


def test_find_isomorphism_needs_backtracking():
    # C6 versus two triangles: same order, size, and degree sequence
    c6 = Graph(list("abcdef"), [(f"e{i}", "abcdef"[i], "abcdef"[(i + 1) % 6]) for i in range(6)])
    two_k3 = Graph(
        list("abcdef"),
        [("e0", "a", "b"), ("e1", "b", "c"), ("e2", "a", "c"),
         ("e3", "d", "e"), ("e4", "e", "f"), ("e5", "d", "f")],
    )
    assert find_isomorphism(c6, two_k3) is None
    assert find_isomorphism(c6, shuffle_ids(c6, (3, 1, 4, 0, 5, 2), tuple(range(6)))) is not None


def test_path_pair_key_separates_chorded_paths():
    g = g_of(K3)
    p3 = g_of(P3)
    kg = {p.path: path_pair_key(p) for p in enumerate_rooted_path_pairs(g, "a")}
    kp = {p.path: path_pair_key(p) for p in enumerate_rooted_path_pairs(p3, "a")}
    # 3-vertex path in K3 has a chord between positions 0 and 2; in P3 it does not
    long_k = [k for path, k in kg.items() if len(path) == 3][0]
    long_p = [k for path, k in kp.items() if len(path) == 3][0]
    assert long_k != long_p
    assert kg[(0,)] == kp[(0,)]


def test_dot_export_mentions_every_edge():
    g = g_of(DOUBLE)
    dot = g.to_dot()
    assert dot.count('"a" -- "b"') == 2 and dot.startswith("graph")
