import itertools

import pytest

import oracles as O
from graphisg.errors import DomainError, ResourceLimitError
from graphisg.graphs import parse_graph
from graphisg.partial_iso import identity_on, invert
from graphisg.semigroup import (
    Caps,
    InverseSemigroup,
    automorphism_subgroup,
    build,
    flavor_subgraphs,
    idempotents,
    semigroup_from_json,
    verify_inverse_semigroup,
)

K2 = parse_graph("v a\nv b\ne e1 a b\n")
P3 = parse_graph("v a\nv b\nv c\ne e1 a b\ne e2 b c\n")
K3 = parse_graph("v a\nv b\nv c\ne e1 a b\ne e2 b c\ne e3 a c\n")
AVB = parse_graph("v a\nv v\nv b\ne e1 a v\ne e2 v b\n")
DOUBLE = parse_graph("v a\nv b\ne e1 a b\ne e2 a b\n")
LOOP = parse_graph("v a\ne e1 a a\n")
EMPTY = parse_graph("")


def raw(g):
    return list(g.vertices), [tuple(e) for e in g.edges]


ORACLE_COUNTS = {
    "fisg": O.count_fisg_elements,
    "iisg": O.count_iisg_elements,
}


@pytest.mark.parametrize("g", [K2, P3, K3, AVB, DOUBLE, LOOP, EMPTY], ids=lambda g: f"{g.n}v{g.m}e")
@pytest.mark.parametrize("kind", ["fisg", "iisg"])
def test_unrooted_counts_match_oracle(g, kind):
    s = build(kind, g)
    assert len(s) == ORACLE_COUNTS[kind](*raw(g))


@pytest.mark.parametrize(
    "g,root",
    [(AVB, "v"), (AVB, "a"), (P3, "a"), (P3, "b"), (K3, "a"), (DOUBLE, "a"), (LOOP, "a")],
)
def test_rooted_counts_match_oracle(g, root):
    st = build("tisg", g, root=root)
    assert len(st) == O.count_tisg_elements(*raw(g), root)
    sp = build("pisg", g, root=root)
    assert len(sp) == O.count_pisg_elements(*raw(g), root)


def test_frozen_fixture_counts():
    # oracle-confirmed, pinned
    assert len(build("fisg", K2)) == 9
    assert len(build("iisg", K2)) == 7
    assert len(build("fisg", P3)) == 52
    assert len(build("fisg", K3)) == 94
    assert len(build("iisg", P3)) == 22
    assert len(build("fisg", DOUBLE)) == 19
    assert len(build("tisg", AVB, root="v")) == 7


def all_small_semigroups():
    out = []
    for g in [K2, P3, K3, DOUBLE, LOOP, EMPTY]:
        out.append(build("fisg", g))
        out.append(build("iisg", g))
    for g, root in [(AVB, "v"), (K3, "a"), (DOUBLE, "a"), (LOOP, "a")]:
        out.append(build("tisg", g, root=root))
        out.append(build("pisg", g, root=root))
    return out


@pytest.mark.parametrize("s", all_small_semigroups(), ids=lambda s: f"{s.kind}-{s.host.n}v{s.host.m}e")
def test_axioms_hold(s):
    rep = verify_inverse_semigroup(s)
    assert rep.ok, rep.lines()
    assert not rep.sampled


@pytest.mark.parametrize("s", all_small_semigroups(), ids=lambda s: f"{s.kind}-{s.host.n}v{s.host.m}e")
def test_idempotents_are_exactly_identity_maps(s):
    idem = {f.key() for f in idempotents(s)}
    ids = {identity_on(sub).key() for sub in flavor_subgraphs(s.kind, s.host, s.root, s.caps)}
    assert idem == ids


def test_table_matches_object_composition():
    for s in [build("fisg", K2), build("pisg", DOUBLE, root="a"), build("tisg", K3, root="a")]:
        t = s.table()
        for i, j in itertools.product(range(len(s)), repeat=2):
            expected = s.element_index(s.compose(s.elements[i], s.elements[j]))
            assert t[i, j] == expected


def test_inversion_is_an_involution_inside_the_semigroup():
    s = build("fisg", P3)
    for i in range(len(s)):
        k = s.invert_index(i)
        assert s.invert_index(k) == i
        assert invert(s.elements[i]) == s.elements[k]


def test_build_is_deterministic():
    a = build("fisg", K3)
    b = build("fisg", K3)
    assert [f.key() for f in a.elements] == [f.key() for f in b.elements]


def test_automorphism_subgroup_sizes():
    assert len(automorphism_subgroup(build("fisg", K3))) == 6
    assert len(automorphism_subgroup(build("fisg", DOUBLE))) == 4
    assert len(automorphism_subgroup(build("iisg", P3))) == 2
    with pytest.raises(DomainError):
        automorphism_subgroup(build("tisg", K3, root="a"))


def test_root_argument_policing():
    with pytest.raises(DomainError):
        build("fisg", K2, root="a")
    with pytest.raises(DomainError):
        build("tisg", K2)
    with pytest.raises(DomainError):
        build("tisg", K2, root="zz")
    with pytest.raises(DomainError):
        build("nope", K2)


def test_caps_fail_loudly():
    with pytest.raises(ResourceLimitError):
        build("fisg", K3, caps=Caps(max_elements=10))
    s = build("fisg", K3, caps=Caps(max_table=10))
    with pytest.raises(ResourceLimitError):
        s.table()


def test_sampled_verify_above_table_cap():
    s = build("fisg", K3, caps=Caps(max_table=10))
    rep = verify_inverse_semigroup(s, seed=7)
    assert rep.sampled
    assert rep.ok, rep.lines()


def test_json_roundtrip_preserves_everything():
    for s in [build("fisg", DOUBLE), build("pisg", K3, root="a")]:
        data = s.to_json()
        back = semigroup_from_json(data)
        assert back.kind == s.kind
        assert back.host == s.host
        assert back.root == s.root
        assert [f.key() for f in back.elements] == [f.key() for f in s.elements]
        assert verify_inverse_semigroup(back).ok


def test_duplicate_elements_rejected():
    s = build("fisg", K2)
    with pytest.raises(DomainError):
        InverseSemigroup("fisg", K2, None, s.elements + [s.elements[0]])
