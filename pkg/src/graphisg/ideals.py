"""Two-sided ideals of the partial-isomorphism semigroups.

Membership of an element is controlled entirely by its domain: x lies in the
ideal generated by a iff dom(x) embeds into dom(a) in the kind-appropriate
sense (arbitrary sub-multigraph for ``fisg``, induced subgraph for ``iisg``,
root-preserving induced for ``tisg``, path-prefix for ``pisg``). Ideals are
therefore downward-closed unions of domain isomorphism classes, and every
ideal is represented by the antichain of its maximal classes (its basis).

Two independent basis extractors are kept side by side on purpose:
``extract_basis`` buckets classes and keeps the embeddability-maximal ones,
``greedy_basis`` starts from all classes present and discards one redundant
generator at a time. They must land on the same antichain.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernel
from .errors import DomainError, ResourceLimitError, StructureError
from .graphs import (
    Graph,
    SubgraphRef,
    canonical_form,
    canonical_form_rooted,
    path_pair_key,
)
from .lattice import FinitePoset, LatticeReport, analyze
from .semigroup import (
    FISG,
    IISG,
    PISG,
    TISG,
    InverseSemigroup,
    automorphism_subgroup,
    flavor_subgraphs,
)


def _embeds_graph(L: Graph, H: Graph, induced: bool,
                  root_l: int | None = None, root_h: int | None = None) -> bool:
    """Injective vertex map L -> H respecting multiplicities: equality when
    `induced`, at-least otherwise. Roots pinned when given."""
    if L.n > H.n or L.m > H.m:
        return False
    order = list(range(L.n))
    if root_l is not None:
        order = [root_l] + [a for a in order if a != root_l]
    assign: dict[int, int] = {}
    used = [False] * H.n

    def ok_pair(a: int, x: int) -> bool:
        la, ha = L.mult(a, a), H.mult(x, x)
        if (la != ha) if induced else (la > ha):
            return False
        if L.degree(a) > H.degree(x):
            return False
        for b, y in assign.items():
            lm, hm = L.mult(a, b), H.mult(x, y)
            if (lm != hm) if induced else (lm > hm):
                return False
        return True

    def place(pos: int) -> bool:
        if pos == len(order):
            return True
        a = order[pos]
        cands = [root_h] if (root_l is not None and pos == 0) else range(H.n)
        for x in cands:
            if used[x] or not ok_pair(a, x):
                continue
            assign[a] = x
            used[x] = True
            if place(pos + 1):
                return True
            del assign[a]
            used[x] = False
        return False

    return place(0)


def _path_key_embeds(kl: tuple, kh: tuple) -> bool:
    ll, ml = kl
    lh, mh = kh
    if ll > lh:
        return False
    return ml == tuple((i, j, m) for (i, j, m) in mh if i < ll and j < ll)


class DomainClasses:
    """Isomorphism classes of the possible domains of one semigroup, with the
    embeddability relation between class representatives."""

    def __init__(self, s: InverseSemigroup):
        self.semigroup = s
        kind, g = s.kind, s.host
        refs = flavor_subgraphs(kind, g, s.root, s.caps)
        by_key: dict = {}
        for ref in sorted(refs, key=lambda r: (r.nv, r.ne, r.vmask, r.emask, r.path or ())):
            key = self._key_of_ref(ref)
            by_key.setdefault(key, ref)
        if len(by_key) > s.caps.max_classes:
            raise ResourceLimitError(
                f"{len(by_key)} domain classes exceeds caps.max_classes={s.caps.max_classes}"
            )
        items = sorted(by_key.items(), key=lambda kv: (kv[1].nv, kv[1].ne, repr(kv[0])))
        self.keys = [k for k, _ in items]
        self.reps = [r for _, r in items]
        self.key_to_class = {k: i for i, (k, _) in enumerate(items)}
        self._element_class_memo: dict[tuple, int] = {}

    def _key_of_ref(self, ref: SubgraphRef):
        kind = self.semigroup.kind
        if kind == PISG:
            return path_pair_key(ref)
        sub = ref.to_graph()
        if kind == TISG:
            return canonical_form_rooted(sub, self.semigroup.host.vertices[ref.root])
        return canonical_form(sub)

    def __len__(self):
        return len(self.reps)

    @cached_property
    def embeds(self) -> np.ndarray:
        """embeds[i, j]: class-i domains occur inside class-j domains."""
        k = len(self.reps)
        out = np.zeros((k, k), dtype=bool)
        for i in range(k):
            for j in range(k):
                out[i, j] = self._class_embeds(i, j)
        return out

    def _class_embeds(self, i: int, j: int) -> bool:
        kind = self.semigroup.kind
        if i == j:
            return True
        if kind == PISG:
            return _path_key_embeds(self.keys[i], self.keys[j])
        li, lj = self.reps[i].to_graph(), self.reps[j].to_graph()
        if kind == FISG:
            return _embeds_graph(li, lj, induced=False)
        if kind == IISG:
            return _embeds_graph(li, lj, induced=True)
        host = self.semigroup.host
        root_id = host.vertices[self.reps[i].root]
        return _embeds_graph(
            li, lj, induced=True,
            root_l=li.vindex[root_id], root_h=lj.vindex[host.vertices[self.reps[j].root]],
        )

    def class_of_element(self, idx: int) -> int:
        f = self.semigroup.elements[idx]
        memo_key = (f.dom.vmask, f.dom.emask, f.dom.path or ())
        got = self._element_class_memo.get(memo_key)
        if got is None:
            got = self.key_to_class[self._key_of_ref(f.dom)]
            self._element_class_memo[memo_key] = got
        return got

    @cached_property
    def element_classes(self) -> np.ndarray:
        return np.array(
            [self.class_of_element(i) for i in range(len(self.semigroup.elements))],
            dtype=np.int32,
        )


def ideal_space(s: InverseSemigroup) -> DomainClasses:
    """Cached domain-class system for a semigroup."""
    space = getattr(s, "_ideal_space", None)
    if space is None:
        space = DomainClasses(s)
        s._ideal_space = space
    return space


@dataclass(frozen=True)
class Ideal:
    parent: InverseSemigroup
    members: frozenset[int]
    basis: tuple[int, ...]  # class indices, an antichain of the embeddability order

    def __len__(self):
        return len(self.members)

    def __contains__(self, idx: int) -> bool:
        return idx in self.members

    def basis_refs(self) -> list[SubgraphRef]:
        space = ideal_space(self.parent)
        return [space.reps[c] for c in self.basis]

    def member_list(self) -> list[int]:
        return sorted(self.members)


def _ideal_from_members(s: InverseSemigroup, members: frozenset[int]) -> Ideal:
    return Ideal(s, members, extract_basis(s, members))


def members_of_classes(s: InverseSemigroup, classes: tuple[int, ...]) -> frozenset[int]:
    space = ideal_space(s)
    cls = space.element_classes
    emb = space.embeds
    keep = np.zeros(len(space), dtype=bool)
    for c in classes:
        keep |= emb[:, c]
    return frozenset(int(i) for i in np.where(keep[cls])[0])


def principal_ideal(s: InverseSemigroup, a: int) -> Ideal:
    """Smallest ideal containing element a: everything whose domain embeds into dom(a)."""
    space = ideal_space(s)
    ca = space.class_of_element(a)
    return Ideal(s, members_of_classes(s, (ca,)), (ca,))


def sandwich_ideal(s: InverseSemigroup, a: int) -> Ideal:
    """The set S a S = {x a y}, computed literally from the composition table."""
    t = s.table()
    u = t[:, a]           # u[x] = x composed after a ... x*a in table order
    prods = np.unique(t[u, :])
    members = frozenset(int(i) for i in prods)
    return _ideal_from_members(s, members)


def is_ideal(s: InverseSemigroup, members) -> tuple[bool, tuple | None]:
    """Closure of the member set under products with arbitrary elements,
    checked on both sides against the full table."""
    mem = np.zeros(len(s.elements), dtype=bool)
    idxs = sorted(int(i) for i in members)
    mem[idxs] = True
    t = s.table()
    for x in idxs:
        bad = np.where(~mem[t[x, :]])[0]
        if len(bad):
            return False, (x, int(bad[0]), "right")
        bad = np.where(~mem[t[:, x]])[0]
        if len(bad):
            return False, (int(bad[0]), x, "left")
    return True, None


def extract_basis(s: InverseSemigroup, members) -> tuple[int, ...]:
    """Basis by canonical bucketing: the embeddability-maximal domain classes
    present among the members."""
    space = ideal_space(s)
    present = sorted({space.class_of_element(i) for i in members})
    emb = space.embeds
    maximal = [
        c for c in present
        if not any(d != c and emb[c, d] for d in present)
    ]
    return tuple(maximal)


def greedy_basis(s: InverseSemigroup, members) -> tuple[int, ...]:
    """Basis by greedy removal: drop one redundant generator at a time until
    every remaining one is essential."""
    space = ideal_space(s)
    present = sorted({space.class_of_element(i) for i in members})
    emb = space.embeds
    gens = list(present)
    changed = True
    while changed:
        changed = False
        for c in list(gens):
            rest = [d for d in gens if d != c]
            if all(any(emb[p, d] for d in rest) for p in present):
                gens = rest
                changed = True
                break
    return tuple(sorted(gens))


def ideal_union(x: Ideal, y: Ideal) -> Ideal:
    _check_same_parent(x, y)
    return _ideal_from_members(x.parent, x.members | y.members)


def ideal_intersection(x: Ideal, y: Ideal) -> Ideal:
    _check_same_parent(x, y)
    return _ideal_from_members(x.parent, x.members & y.members)


def _check_same_parent(x: Ideal, y: Ideal) -> None:
    if x.parent is not y.parent:
        raise DomainError("ideals of different semigroups")


def enumerate_ideals(s: InverseSemigroup, include_empty: bool = True) -> list[Ideal]:
    """All ideals, one per antichain of the domain-class embeddability order.

    The empty ideal corresponds to the empty antichain; pass
    include_empty=False to leave it out.
    """
    space = ideal_space(s)
    emb = space.embeds
    k = len(space)
    antichains: list[tuple[int, ...]] = []

    def grow(chosen: tuple[int, ...], start: int) -> None:
        antichains.append(chosen)
        for c in range(start, k):
            if all(not emb[c, d] and not emb[d, c] for d in chosen):
                grow(chosen + (c,), c + 1)

    grow((), 0)
    ideals = []
    for chain in antichains:
        if not chain and not include_empty:
            continue
        ideals.append(Ideal(s, members_of_classes(s, chain), tuple(sorted(chain))))
    ideals.sort(key=lambda i: (len(i.members), i.basis))
    return ideals


def ideal_lattice_report(
    s: InverseSemigroup, include_empty: bool = True
) -> tuple[LatticeReport, list[Ideal]]:
    """Analyze the poset of all ideals under inclusion."""
    ideals = enumerate_ideals(s, include_empty=include_empty)
    n = len(ideals)
    leq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            leq[i, j] = ideals[i].members <= ideals[j].members
    poset = FinitePoset(leq, labels=[i.basis for i in ideals])
    poset.validate()
    return analyze(poset), ideals


@dataclass
class ReesQuotient:
    """Quotient by an ideal: the ideal collapses to a zero class (index 0),
    every other element keeps a singleton class. Construction re-verifies
    well-definedness and associativity and refuses to return a broken table."""

    parent: InverseSemigroup
    ideal: Ideal
    table: np.ndarray        # class-level composition
    class_of: np.ndarray     # element index -> class index
    well_defined: bool
    associative: bool


def rees_quotient(s: InverseSemigroup, ideal: Ideal) -> ReesQuotient:
    if ideal.parent is not s:
        raise DomainError("ideal belongs to a different semigroup")
    if not ideal.members:
        raise DomainError("quotient by the empty ideal is not defined")
    n = len(s.elements)
    t = s.table()
    class_of = np.zeros(n, dtype=np.int32)
    rest = [i for i in range(n) if i not in ideal.members]
    for c, i in enumerate(rest, start=1):
        class_of[i] = c
    m = len(rest) + 1
    reps = [min(ideal.members)] + rest
    qtable = np.empty((m, m), dtype=np.int32)
    for a in range(m):
        for b in range(m):
            qtable[a, b] = class_of[t[reps[a], reps[b]]]
    # well-definedness: the class of a product depends only on the classes
    projected = class_of[t]
    expected = qtable[class_of[:, None], class_of[None, :]]
    diff = np.argwhere(projected != expected)
    well_defined = len(diff) == 0
    if not well_defined:
        x, y = (int(v) for v in diff[0])
        raise StructureError(
            f"quotient table is not well defined: elements ({x}, {y}) disagree with their classes"
        )
    witness = kernel.associativity_witness(qtable)
    if witness is not None:
        raise StructureError(f"quotient table is not associative: witness {witness}")
    return ReesQuotient(
        parent=s, ideal=ideal, table=qtable, class_of=class_of,
        well_defined=True, associative=True,
    )


def aut_complement_ideal(s: InverseSemigroup) -> Ideal:
    """Everything except the full-host isomorphisms (an ideal for the unrooted kinds)."""
    auto = set(automorphism_subgroup(s))
    members = frozenset(i for i in range(len(s.elements)) if i not in auto)
    return _ideal_from_members(s, members)
