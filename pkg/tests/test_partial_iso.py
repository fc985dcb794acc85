import itertools

import pytest

import oracles as O
from graphisg.errors import DomainError
from graphisg.graphs import (
    ANY,
    PATH,
    SubgraphRef,
    enumerate_rooted_connected_induced,
    enumerate_rooted_path_pairs,
    enumerate_subgraphs,
    induced_subgraph,
    mask_of,
    parse_graph,
)
from graphisg.partial_iso import (
    PartialIso,
    compose_fisg,
    compose_pisg,
    compose_tisg,
    identity_on,
    invert,
    is_idempotent,
    natural_leq,
    partial_iso_from_json,
)

K2 = parse_graph("v a\nv b\ne e1 a b\n")
AVB = parse_graph("v a\nv v\nv b\ne e1 a v\ne e2 v b\n")
K3 = parse_graph("v a\nv b\nv c\ne e1 a b\ne e2 b c\ne e3 a c\n")
DOUBLE = parse_graph("v a\nv b\ne e1 a b\ne e2 a b\n")


def iso_by_ids(g, dom_v, dom_e, vpairs, epairs, flavor=ANY, root=None, path_dom=None, path_cod=None):
    vmap = [-1] * g.n
    for a, b in vpairs.items():
        vmap[g.vindex[a]] = g.vindex[b]
    emap = [-1] * g.m
    for a, b in epairs.items():
        emap[g.eindex[a]] = g.eindex[b]
    dv = mask_of(g.vindex[v] for v in dom_v)
    de = mask_of(g.eindex[e] for e in dom_e)
    cv = mask_of(g.vindex[vpairs[v]] for v in dom_v)
    ce = mask_of(g.eindex[epairs[e]] for e in dom_e)
    r = None if root is None else g.vindex[root]
    pd = None if path_dom is None else tuple(g.vindex[v] for v in path_dom)
    pc = None if path_cod is None else tuple(g.vindex[v] for v in path_cod)
    dom = SubgraphRef(g, dv, de, flavor, root=r, path=pd)
    cod = SubgraphRef(g, cv, ce, flavor, root=r, path=pc)
    f = PartialIso(g, dom, cod, tuple(vmap), tuple(emap))
    f.validate()
    return f


def all_fisg_elements(g):
    """Every partial isomorphism between arbitrary subgraphs, via backtracking-free brute force."""
    subs = enumerate_subgraphs(g)
    out = []
    for s in subs:
        for t in subs:
            sv, se = list(s.vertex_ids()), [g.edges[j] for j in _bits(s.emask)]
            tv, te = list(t.vertex_ids()), [g.edges[j] for j in _bits(t.emask)]
            for vmap, emap in O.isomorphisms((sv, se), (tv, te)):
                out.append(iso_by_ids(g, sv, [e[0] for e in se], vmap, emap))
    return out


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def as_dicts(f):
    g = f.host
    vmap = {g.vertices[a]: g.vertices[f.vmap[a]] for a in _bits(f.dom.vmask)}
    emap = {g.edges[j][0]: g.edges[f.emap[j]][0] for j in _bits(f.dom.emask)}
    return vmap, emap


def test_identity_invert_roundtrip():
    s = induced_subgraph(K3, ["a", "b"])
    e = identity_on(s)
    assert is_idempotent(e, compose_fisg)
    assert invert(e) == e
    f = iso_by_ids(K3, ["a", "b"], ["e1"], {"a": "b", "b": "c"}, {"e1": "e2"})
    assert invert(invert(f)) == f
    assert compose_fisg(f, invert(f)) == identity_on(f.cod)
    assert compose_fisg(invert(f), f) == identity_on(f.dom)


def test_compose_fisg_matches_dict_oracle_everywhere():
    els = all_fisg_elements(K2)
    assert len(els) == 9  # oracle-confirmed fixture
    for f, g in itertools.product(els, els):
        got = compose_fisg(f, g)
        got.validate()
        assert as_dicts(got) == O.compose_dict_maps(as_dicts(f), as_dicts(g))


def test_compose_fisg_empty_is_zero():
    els = all_fisg_elements(K2)
    mu0 = identity_on(SubgraphRef(K2, 0, 0, ANY))
    for f in els:
        assert compose_fisg(f, mu0) == mu0
        assert compose_fisg(mu0, f) == mu0


def test_compose_fisg_rejects_host_mismatch():
    other = parse_graph("v a\nv b\ne e1 a b\n")
    other2 = parse_graph("v a\nv z\ne e1 a z\n")
    f = identity_on(induced_subgraph(other, ["a"]))
    g = identity_on(induced_subgraph(other2, ["a"]))
    with pytest.raises(DomainError):
        compose_fisg(f, g)


def test_induced_flavor_survives_composition():
    x = identity_on(induced_subgraph(K3, ["a", "b"]))
    y = identity_on(induced_subgraph(K3, ["b", "c"]))
    z = compose_fisg(x, y)
    assert z.dom.flavor == "induced"
    assert z.dom.vertex_ids() == ("b",)


def test_compose_tisg_trims_to_root_component():
    # swap of the whole path composed with the identity on {v,a}:
    # overlap {v,a}, preimage through the swap is {v,b}
    swap = iso_by_ids(
        AVB, ["a", "v", "b"], ["e1", "e2"],
        {"a": "b", "v": "v", "b": "a"}, {"e1": "e2", "e2": "e1"},
        flavor="rooted", root="v",
    )
    idva = identity_on(
        SubgraphRef(AVB, mask_of([AVB.vindex["v"], AVB.vindex["a"]]),
                    AVB.edges_within(mask_of([AVB.vindex["v"], AVB.vindex["a"]])),
                    "rooted", root=AVB.vindex["v"])
    )
    out = compose_tisg(idva, swap)
    out.validate()
    assert set(out.dom.vertex_ids()) == {"v", "b"}
    assert set(out.cod.vertex_ids()) == {"v", "a"}
    assert out.vertex_image("b") == "a"
    assert not out.is_empty


def test_compose_tisg_never_empty():
    for root in ["a", "v", "b"]:
        subs = enumerate_rooted_connected_induced(AVB, root)
        ids = [identity_on(s) for s in subs]
        for f, g in itertools.product(ids, ids):
            out = compose_tisg(f, g)
            out.validate()
            assert not out.is_empty
            assert AVB.vertices[out.dom.root] == root


def test_compose_pisg_common_prefix():
    pairs = {p.path: p for p in enumerate_rooted_path_pairs(K3, "a")}
    a, b, c = (K3.vindex[x] for x in "abc")
    id_abc = identity_on(pairs[(a, b, c)])
    id_acb = identity_on(pairs[(a, c, b)])
    out = compose_pisg(id_abc, id_acb)
    out.validate()
    # codomain path of the first map is (a,c,b); domain path of the second is (a,b,c): common prefix (a)
    assert out.dom.path == (a,)
    assert out.dom.vertex_ids() == ("a",)
    longer = compose_pisg(id_abc, id_abc)
    assert longer == id_abc


def test_compose_pisg_keeps_parallel_edge_choice():
    pairs = {p.path: p for p in enumerate_rooted_path_pairs(DOUBLE, "a")}
    ab = pairs[(0, 1)]
    swap = iso_by_ids(
        DOUBLE, ["a", "b"], ["e1", "e2"],
        {"a": "a", "b": "b"}, {"e1": "e2", "e2": "e1"},
        flavor=PATH, root="a", path_dom=["a", "b"], path_cod=["a", "b"],
    )
    assert not is_idempotent(swap, compose_pisg)
    assert compose_pisg(swap, swap) == identity_on(ab)


def test_natural_order_on_identities_is_subgraph_inclusion():
    subs = enumerate_subgraphs(K3)
    for s, t in itertools.product(subs, subs):
        e, f = identity_on(s), identity_on(t)
        included = (s.vmask & t.vmask == s.vmask) and (s.emask & t.emask == s.emask)
        assert natural_leq(e, f, compose_fisg) == included


def test_json_roundtrip_plain_and_path():
    f = iso_by_ids(K3, ["a", "b"], ["e1"], {"a": "b", "b": "c"}, {"e1": "e2"})
    back = partial_iso_from_json(K3, f.to_json(), ANY)
    assert back == f
    pairs = {p.path: p for p in enumerate_rooted_path_pairs(K3, "a")}
    a, b, c = (K3.vindex[x] for x in "abc")
    g = identity_on(pairs[(a, b, c)])
    data = g.to_json()
    assert data["path_dom"] == ["a", "b", "c"]
    back = partial_iso_from_json(K3, data, PATH, root=a)
    assert back == g


def test_validate_rejects_broken_maps():
    with pytest.raises(DomainError):
        iso_by_ids(K3, ["a", "b"], ["e1"], {"a": "a", "b": "c"}, {"e1": "e1"})
    with pytest.raises(DomainError):
        iso_by_ids(DOUBLE, ["a", "b"], ["e1", "e2"], {"a": "a", "b": "b"}, {"e1": "e1", "e2": "e1"})
