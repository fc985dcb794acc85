"""Recovering a host graph from a bare composition table.

The all-subgraphs semigroup remembers its host. Its idempotents, ordered by
e = ef, form the subgraph-inclusion lattice; the atoms of that lattice are
the single-vertex subgraphs and the join-irreducible non-atoms are the
single-edge subgraphs, with loops telling themselves apart by having one
atom below instead of two. Everything here consumes an AbstractSemigroup,
a table with no graph data attached, so build -> forget -> recover is a
genuine reconstruction and not a lookup.

The vertex-induced variant does not determine the host: a lone vertex and a
vertex carrying a loop produce identical two-element tables, and more
generally the semigroup only sees a simple graph up to complementation.
Both phenomena are checkable below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernel
from .errors import DomainError, ResourceLimitError, StructureError
from .graphs import INDUCED, Graph, GraphIso, SubgraphRef, bits, complement, find_isomorphism
from .lattice import FinitePoset
from .partial_iso import PartialIso
from .semigroup import DEFAULT_CAPS, FISG, IISG, Caps, InverseSemigroup, build


@dataclass(frozen=True)
class AbstractSemigroup:
    """A composition table and nothing else."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int32)
        object.__setattr__(self, "table", t)
        n = len(t)
        if t.shape != (n, n):
            raise DomainError("composition table must be square")
        if n and (t.min() < 0 or t.max() >= n):
            raise DomainError("table entries must index elements")

    @property
    def n(self) -> int:
        return len(self.table)

    def validate(self) -> None:
        witness = kernel.associativity_witness(self.table)
        if witness is not None:
            raise StructureError(f"table is not associative at {witness}")

    def to_json(self) -> dict:
        return {"elements": self.n, "table": self.table.tolist()}


def abstract_from_json(data: dict) -> AbstractSemigroup:
    return AbstractSemigroup(np.asarray(data["table"], dtype=np.int32))


def forget(s: InverseSemigroup, seed: int = 0) -> AbstractSemigroup:
    """Erase everything but the table, shuffling element identity under seed."""
    t = s.table()
    perm = np.random.default_rng(seed).permutation(len(t))
    out = np.empty_like(t)
    out[np.ix_(perm, perm)] = perm[t]  # new_table[p(i), p(j)] = p(old[i, j])
    return AbstractSemigroup(out)


def _idempotent_lattice(a: AbstractSemigroup) -> FinitePoset:
    t = a.table
    idem = [i for i in range(a.n) if t[i, i] == i]
    if not idem:
        raise StructureError("no idempotents; not an all-subgraphs table")
    prod = t[np.ix_(idem, idem)]
    leq = prod == np.asarray(idem, dtype=t.dtype)[:, None]  # e <= f iff ef = e
    poset = FinitePoset(leq, labels=idem)
    try:
        poset.validate()
    except DomainError as exc:
        raise StructureError(f"idempotent order is not a partial order: {exc}") from exc
    return poset


def recover_graph(a: AbstractSemigroup) -> Graph:
    """Rebuild the host multigraph of an all-subgraphs table.

    Vertices come back named v0, v1, ... and edges e0, e1, ... in idempotent
    order, so only the isomorphism type is meaningful. Tables that are not
    the image of some all-subgraphs semigroup raise StructureError when the
    expected lattice shape breaks down (behavior on tables that merely
    imitate the shape is undefined).
    """
    poset = _idempotent_lattice(a)
    bottom = poset.bottom
    if bottom is None:
        raise StructureError("idempotents have no least element; not an all-subgraphs table")
    covers = poset.covers
    lower_counts = covers.sum(axis=0)
    atoms = [j for j in range(poset.n) if covers[bottom, j]]
    vertex_of = {j: f"v{pos}" for pos, j in enumerate(atoms)}
    edges = []
    for j in range(poset.n):
        # join-irreducible = unique lower cover; atoms are the ones over bottom
        if j == bottom or j in vertex_of or lower_counts[j] != 1:
            continue
        below = [x for x in atoms if poset.leq[x, j]]
        if len(below) == 1:
            u = w = vertex_of[below[0]]
        elif len(below) == 2:
            u, w = vertex_of[below[0]], vertex_of[below[1]]
        else:
            raise StructureError(
                f"join-irreducible idempotent with {len(below)} atoms below; "
                "not an all-subgraphs table"
            )
        edges.append((f"e{len(edges)}", u, w))
    return Graph([vertex_of[j] for j in atoms], edges)


@dataclass(frozen=True)
class SemigroupIsomorphism:
    """An element bijection source -> target that preserves composition."""

    source: InverseSemigroup
    target: InverseSemigroup
    mapping: tuple[int, ...]

    def verify(self) -> None:
        n = len(self.source.elements)
        if len(self.target.elements) != n or sorted(self.mapping) != list(range(n)):
            raise StructureError("mapping is not a bijection")
        p = np.asarray(self.mapping, dtype=np.int64)
        lhs = p[self.source.table()]
        rhs = self.target.table()[np.ix_(p, p)]
        if not np.array_equal(lhs, rhs):
            i, j = np.argwhere(lhs != rhs)[0]
            raise StructureError(f"composition not preserved at pair ({int(i)}, {int(j)})")

    def to_json(self) -> dict:
        return {"elements": len(self.mapping), "mapping": list(self.mapping)}


def _transport_ref(phi: GraphIso, ref: SubgraphRef) -> SubgraphRef:
    vmask = 0
    for x in bits(ref.vmask):
        vmask |= 1 << phi.vmap[x]
    emask = 0
    for e in bits(ref.emask):
        emask |= 1 << phi.emap[e]
    root = None if ref.root is None else phi.vmap[ref.root]
    path = None if ref.path is None else tuple(phi.vmap[x] for x in ref.path)
    return SubgraphRef(phi.dst, vmask, emask, ref.flavor, root=root, path=path)


def _transport_element(phi: GraphIso, f: PartialIso) -> PartialIso:
    h = phi.dst
    vmap = [-1] * h.n
    emap = [-1] * h.m
    for x in bits(f.dom.vmask):
        vmap[phi.vmap[x]] = phi.vmap[f.vmap[x]]
    for e in bits(f.dom.emask):
        emap[phi.emap[e]] = phi.emap[f.emap[e]]
    return PartialIso(h, _transport_ref(phi, f.dom), _transport_ref(phi, f.cod),
                      tuple(vmap), tuple(emap))


def transport_isomorphism(phi: GraphIso, kind: str, root: str | None = None,
                          caps: Caps = DEFAULT_CAPS) -> SemigroupIsomorphism:
    """Lift a host isomorphism phi: g -> h to the element bijection
    f -> phi f phi^-1 between build(kind, g) and build(kind, h).

    The result is checked to preserve composition on the full tables.
    For rooted kinds pass the root of g; the target root is its phi-image.
    """
    phi.validate()
    s1 = build(kind, phi.src, root=root, caps=caps)
    troot = None if s1.root is None else phi.dst.vertices[phi.vmap[s1.root]]
    s2 = build(kind, phi.dst, root=troot, caps=caps)
    mapping = tuple(s2.element_index(_transport_element(phi, f)) for f in s1.elements)
    iso = SemigroupIsomorphism(s1, s2, mapping)
    iso.verify()
    return iso


def find_table_isomorphism(t1: np.ndarray, t2: np.ndarray,
                           max_elements: int = 16) -> tuple[int, ...] | None:
    """Brute-force table isomorphism between tiny semigroups, or None.

    Candidates are bucketed by cheap per-element invariants before the
    backtracking; that is plenty for the handful-of-elements uses here,
    and larger inputs are refused rather than left to run forever.
    """
    t1 = np.asarray(t1)
    t2 = np.asarray(t2)
    n = len(t1)
    if len(t2) != n:
        return None
    if n > max_elements:
        raise ResourceLimitError(f"table isomorphism search capped at {max_elements} elements")
    if n == 0:
        return ()

    def sig(t, i):
        row, col = t[i, :], t[:, i]
        return (
            bool(t[i, i] == i),
            int((row == i).sum()),
            int((col == i).sum()),
            tuple(sorted(np.bincount(row, minlength=n))),
            tuple(sorted(np.bincount(col, minlength=n))),
        )

    sig1 = [sig(t1, i) for i in range(n)]
    sig2 = [sig(t2, i) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None

    order = sorted(range(n), key=lambda i: sig1[i])
    assign = [-1] * n
    used = [False] * n

    def consistent(pos):
        i = assign  # alias for brevity
        a = order[pos]
        for b in order[: pos + 1]:
            x, y = i[t1[a, b]], i[t1[b, a]]
            if x >= 0 and t2[i[a], i[b]] != x:
                return False
            if y >= 0 and t2[i[b], i[a]] != y:
                return False
        return True

    def extend(pos):
        if pos == n:
            p = np.asarray(assign)
            return np.array_equal(p[t1], t2[np.ix_(p, p)])
        a = order[pos]
        for cand in range(n):
            if used[cand] or sig2[cand] != sig1[a]:
                continue
            assign[a] = cand
            used[cand] = True
            if consistent(pos) and extend(pos + 1):
                return True
            assign[a] = -1
            used[cand] = False
        return False

    return tuple(assign) if extend(0) else None


@dataclass(frozen=True)
class CharacterizationVerdict:
    """Do host isomorphism and table-only recovery agree on a pair?"""

    graphs_isomorphic: bool
    recovered_isomorphic: bool
    roundtrip_ok: bool

    @property
    def agree(self) -> bool:
        return self.graphs_isomorphic == self.recovered_isomorphic

    @property
    def ok(self) -> bool:
        return self.agree and self.roundtrip_ok

    def lines(self) -> list[str]:
        word = {True: "yes", False: "no"}
        return [
            f"hosts isomorphic:            {word[self.graphs_isomorphic]}",
            f"recovered graphs isomorphic: {word[self.recovered_isomorphic]}",
            f"round trip recovers hosts:   {word[self.roundtrip_ok]}",
            "verdict: " + ("pass" if self.ok else "FAIL"),
        ]


def verify_characterization(g: Graph, h: Graph, seed: int = 0,
                            caps: Caps = DEFAULT_CAPS) -> CharacterizationVerdict:
    """Check on (g, h) that the all-subgraphs table decides host isomorphism."""
    direct = find_isomorphism(g, h) is not None
    rg = recover_graph(forget(build(FISG, g, caps=caps), seed))
    rh = recover_graph(forget(build(FISG, h, caps=caps), seed + 1))
    recovered = find_isomorphism(rg, rh) is not None
    roundtrip = (find_isomorphism(rg, g) is not None
                 and find_isomorphism(rh, h) is not None)
    return CharacterizationVerdict(direct, recovered, roundtrip)


def iisg_complement_functor(g: Graph, caps: Caps = DEFAULT_CAPS) -> SemigroupIsomorphism:
    """The table isomorphism Iisg(g) -> Iisg(complement of g).

    An isomorphism of vertex-induced subgraphs of a simple graph preserves
    non-adjacency too, so the same vertex map works over the complement;
    edge images are forced by their endpoints. Non-simple hosts are refused.
    """
    gc = complement(g)  # rejects loops and parallel edges
    s1 = build(IISG, g, caps=caps)
    s2 = build(IISG, gc, caps=caps)
    mapping = []
    for f in s1.elements:
        dom = SubgraphRef(gc, f.dom.vmask, gc.edges_within(f.dom.vmask), INDUCED)
        cod = SubgraphRef(gc, f.cod.vmask, gc.edges_within(f.cod.vmask), INDUCED)
        emap = [-1] * gc.m
        for e in bits(dom.emask):
            a, b = gc.ends[e]
            ia, ib = f.vmap[a], f.vmap[b]
            emap[e] = gc.bundles[(ia, ib) if ia <= ib else (ib, ia)][0]
        mapping.append(s2.element_index(PartialIso(gc, dom, cod, f.vmap, tuple(emap))))
    iso = SemigroupIsomorphism(s1, s2, tuple(mapping))
    iso.verify()
    return iso


@dataclass(frozen=True)
class CounterexampleVerdict:
    """The lone vertex versus the looped vertex, seen by Iisg and by Fisg."""

    iisg_mapping: tuple[int, ...] | None
    graphs_isomorphic: bool
    fisg_tables_isomorphic: bool
    recovered_distinct: bool

    @property
    def ok(self) -> bool:
        return (
            self.iisg_mapping is not None
            and not self.graphs_isomorphic
            and not self.fisg_tables_isomorphic
            and self.recovered_distinct
        )

    def lines(self) -> list[str]:
        word = {True: "yes", False: "no"}
        return [
            f"Iisg tables isomorphic:      {word[self.iisg_mapping is not None]}"
            + (f"  mapping={list(self.iisg_mapping)}" if self.iisg_mapping else ""),
            f"hosts isomorphic:            {word[self.graphs_isomorphic]}",
            f"Fisg tables isomorphic:      {word[self.fisg_tables_isomorphic]}",
            f"Fisg recovery distinguishes: {word[self.recovered_distinct]}",
            "verdict: " + ("pass" if self.ok else "FAIL"),
        ]


def iisg_counterexample_check(caps: Caps = DEFAULT_CAPS) -> CounterexampleVerdict:
    """Iisg cannot tell a lone vertex from a vertex with a loop; Fisg can."""
    bare = Graph(("v",))
    looped = Graph(("v",), (("l", "v", "v"),))
    i1 = build(IISG, bare, caps=caps)
    i2 = build(IISG, looped, caps=caps)
    mapping = find_table_isomorphism(i1.table(), i2.table())
    f1 = build(FISG, bare, caps=caps)
    f2 = build(FISG, looped, caps=caps)
    fisg_iso = (
        len(f1.elements) == len(f2.elements)
        and find_table_isomorphism(f1.table(), f2.table()) is not None
    )
    r1 = recover_graph(forget(f1, seed=1))
    r2 = recover_graph(forget(f2, seed=2))
    return CounterexampleVerdict(
        mapping,
        find_isomorphism(bare, looped) is not None,
        fisg_iso,
        find_isomorphism(r1, r2) is None,
    )
