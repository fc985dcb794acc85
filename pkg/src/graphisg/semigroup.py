"""Construction and axiom checks for the four partial-isomorphism semigroups.

Kinds:

* ``fisg`` -- isomorphisms between arbitrary subgraphs
* ``iisg`` -- isomorphisms between vertex-induced subgraphs
* ``tisg`` -- root-fixing isomorphisms between connected induced subgraphs containing a chosen root
* ``pisg`` -- root-fixing isomorphisms between induced subgraphs carried by
  root-anchored simple paths, mapping the paths pointwise in order

``build`` enumerates every element once, sorted by structural key, so element
indices are deterministic for a given host/kind/root. The composition table
and the all-triples associativity scan go through :mod:`graphisg.kernel`,
which picks the compiled extension when it is importable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import kernel
from .errors import DomainError, ParseError, ResourceLimitError
from .graphs import (
    ANY,
    INDUCED,
    PATH,
    ROOTED,
    Graph,
    SubgraphRef,
    bits,
    enumerate_induced_subgraphs,
    enumerate_rooted_connected_induced,
    enumerate_rooted_path_pairs,
    enumerate_subgraphs,
    subgraph_count,
)
from .partial_iso import (
    PartialIso,
    compose_fisg,
    compose_pisg,
    compose_tisg,
    identity_on,
    invert,
    partial_iso_from_json,
)

FISG, IISG, TISG, PISG = "fisg", "iisg", "tisg", "pisg"
KINDS = (FISG, IISG, TISG, PISG)
ROOTED_KINDS = (TISG, PISG)

_FLAVOR = {FISG: ANY, IISG: INDUCED, TISG: ROOTED, PISG: PATH}


@dataclass(frozen=True)
class Caps:
    """Resource ceilings. Every breach raises ResourceLimitError, loudly."""

    max_elements: int = 200_000
    max_table: int = 3_000        # full n x n table only below this
    max_classes: int = 64         # domain classes during ideal work
    sample_triples: int = 50_000  # associativity samples above the table cap


DEFAULT_CAPS = Caps()


def compose_for_kind(kind: str):
    if kind in (FISG, IISG):
        return compose_fisg
    if kind == TISG:
        return compose_tisg
    if kind == PISG:
        return compose_pisg
    raise DomainError(f"unknown kind {kind!r}")


def flavor_subgraphs(kind: str, g: Graph, root: int | None, caps: Caps) -> list[SubgraphRef]:
    """The subgraphs serving as domains/codomains for the given kind."""
    if kind in ROOTED_KINDS:
        if root is None:
            raise DomainError(f"kind {kind!r} needs a root vertex")
        if kind == TISG:
            return enumerate_rooted_connected_induced(g, root)
        return enumerate_rooted_path_pairs(g, root)
    if root is not None:
        raise DomainError(f"kind {kind!r} does not take a root")
    if kind == FISG:
        return enumerate_subgraphs(g, cap=caps.max_elements)
    if kind == IISG:
        return enumerate_induced_subgraphs(g)
    raise DomainError(f"unknown kind {kind!r}")


def _sub_mult(ref: SubgraphRef) -> dict[tuple[int, int], list[int]]:
    """Edge bundles of the subgraph itself (host indices, sorted endpoint pairs)."""
    out: dict[tuple[int, int], list[int]] = {}
    for j in bits(ref.emask):
        out.setdefault(ref.host.ends[j], []).append(j)
    return out


def _sub_signature(ref: SubgraphRef, kind: str) -> tuple:
    """Cheap isomorphism invariant used to bucket candidate subgraph pairs."""
    bundles = _sub_mult(ref)
    deg: dict[int, int] = {a: 0 for a in bits(ref.vmask)}
    loops: dict[int, int] = {a: 0 for a in bits(ref.vmask)}
    for (a, b), es in bundles.items():
        if a == b:
            deg[a] += 2 * len(es)
            loops[a] += len(es)
        else:
            deg[a] += len(es)
            deg[b] += len(es)
    profile = tuple(sorted((deg[a], loops[a]) for a in deg))
    if kind == TISG:
        r = ref.root
        return (ref.nv, ref.ne, profile, (deg[r], loops[r]))
    return (ref.nv, ref.ne, profile)


def _edge_bijections(s: SubgraphRef, t: SubgraphRef, vmap: dict[int, int]):
    """All edge maps compatible with a fixed vertex bijection, one per choice of
    pairing inside each parallel-edge bundle. Yields full emap tuples."""
    g = s.host
    sb = _sub_mult(s)
    tb = _sub_mult(t)
    per_bundle = []
    for (a, b), es in sorted(sb.items()):
        xa, xb = vmap[a], vmap[b]
        key = (xa, xb) if xa <= xb else (xb, xa)
        ts = tb.get(key, [])
        if len(ts) != len(es):
            return
        per_bundle.append((sorted(es), list(itertools.permutations(sorted(ts)))))
    for combo in itertools.product(*(perms for _, perms in per_bundle)):
        emap = [-1] * g.m
        for (es, _), perm in zip(per_bundle, combo):
            for j, k in zip(es, perm):
                emap[j] = k
        yield tuple(emap)


def _isos_between(s: SubgraphRef, t: SubgraphRef, kind: str):
    """All kind-appropriate isomorphisms s -> t as (vmap, emap) full tuples."""
    g = s.host
    if s.nv != t.nv or s.ne != t.ne:
        return
    if kind == PISG:
        if len(s.path) != len(t.path):
            return
        vm = dict(zip(s.path, t.path))
        if any(
            _mult_in(s, s.path[i], s.path[j]) != _mult_in(t, t.path[i], t.path[j])
            for i in range(len(s.path))
            for j in range(i, len(s.path))
        ):
            return
        vmap_full = [-1] * g.n
        for a, b in vm.items():
            vmap_full[a] = b
        for emap in _edge_bijections(s, t, vm):
            yield tuple(vmap_full), emap
        return

    svs = list(bits(s.vmask))
    tvs = list(bits(t.vmask))
    if kind == TISG:
        # root goes first and is pinned to the root
        svs = [s.root] + [a for a in svs if a != s.root]
    assign: dict[int, int] = {}
    used: set[int] = set()

    def candidates(pos: int):
        if kind == TISG and pos == 0:
            return [t.root]
        return tvs

    def place(pos: int):
        if pos == len(svs):
            vmap_full = [-1] * g.n
            for a, b in assign.items():
                vmap_full[a] = b
            for emap in _edge_bijections(s, t, assign):
                yield tuple(vmap_full), emap
            return
        a = svs[pos]
        for x in candidates(pos):
            if x in used:
                continue
            if _mult_in(s, a, a) != _mult_in(t, x, x):
                continue
            if any(
                _mult_in(s, a, b) != _mult_in(t, x, y)
                for b, y in assign.items()
            ):
                continue
            assign[a] = x
            used.add(x)
            yield from place(pos + 1)
            del assign[a]
            used.discard(x)

    yield from place(0)


def _mult_in(ref: SubgraphRef, a: int, b: int) -> int:
    key = (a, b) if a <= b else (b, a)
    return sum(1 for j in ref.host.bundles.get(key, ()) if ref.emask >> j & 1)


class InverseSemigroup:
    """A fully enumerated semigroup of partial isomorphisms of one host graph."""

    def __init__(self, kind: str, host: Graph, root: int | None,
                 elements: list[PartialIso], caps: Caps = DEFAULT_CAPS):
        if kind not in KINDS:
            raise DomainError(f"unknown kind {kind!r}")
        self.kind = kind
        self.host = host
        self.root = root
        self.caps = caps
        self.elements = sorted(elements, key=lambda f: f.key())
        self.index: dict[tuple, int] = {}
        for i, f in enumerate(self.elements):
            if f.key() in self.index:
                raise DomainError("duplicate element")
            self.index[f.key()] = i
        self.compose = compose_for_kind(kind)
        self._table: np.ndarray | None = None
        self._table_missing: list[tuple[int, int]] | None = None
        self._idempotents: list[int] | None = None

    def __len__(self):
        return len(self.elements)

    @property
    def root_id(self) -> str | None:
        return None if self.root is None else self.host.vertices[self.root]

    def element_index(self, f: PartialIso) -> int:
        try:
            return self.index[f.key()]
        except KeyError:
            raise DomainError("element does not belong to this semigroup") from None

    def compose_index(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        return self.element_index(self.compose(self.elements[i], self.elements[j]))

    def table(self) -> np.ndarray:
        """n x n composition table (entry -1 where the composite is missing,
        which a genuine build never produces)."""
        if self._table is None:
            n = len(self.elements)
            if n > self.caps.max_table:
                raise ResourceLimitError(
                    f"composition table for {n} elements exceeds caps.max_table={self.caps.max_table}"
                )
            self._table, self._table_missing = kernel.build_table(
                self.kind, self.host, self.elements, self.index, self.compose
            )
        return self._table

    def idempotent_indices(self) -> list[int]:
        if self._idempotents is None:
            if self._table is not None or len(self.elements) <= self.caps.max_table:
                t = self.table()
                diag = t[np.arange(len(t)), np.arange(len(t))]
                self._idempotents = [i for i in range(len(t)) if diag[i] == i]
            else:
                self._idempotents = [
                    i for i, f in enumerate(self.elements)
                    if self.compose(f, f) == f
                ]
        return self._idempotents

    def invert_index(self, i: int) -> int:
        return self.element_index(invert(self.elements[i]))

    def to_json(self) -> dict:
        g = self.host
        return {
            "kind": self.kind,
            "host": {
                "vertices": list(g.vertices),
                "edges": [list(e) for e in g.edges],
            },
            "root": self.root_id,
            "elements": [f.to_json() for f in self.elements],
            "stats": {
                "elements": len(self.elements),
                "idempotents": len(self.idempotent_indices())
                if len(self.elements) <= self.caps.max_table
                else None,
            },
        }


def build(kind: str, g: Graph, root: str | int | None = None,
          caps: Caps = DEFAULT_CAPS) -> InverseSemigroup:
    """Enumerate every element of the chosen semigroup of the host graph."""
    r: int | None
    if root is None:
        r = None
    elif isinstance(root, str):
        if root not in g.vindex:
            raise DomainError(f"unknown root vertex {root!r}")
        r = g.vindex[root]
    else:
        r = root
    subs = flavor_subgraphs(kind, g, r, caps)
    buckets: dict[tuple, list[SubgraphRef]] = {}
    if kind == PISG:
        from .graphs import path_pair_key

        for s in subs:
            buckets.setdefault(path_pair_key(s), []).append(s)
    else:
        for s in subs:
            buckets.setdefault(_sub_signature(s, kind), []).append(s)
    elements: list[PartialIso] = []
    for group in buckets.values():
        for s, t in itertools.product(group, group):
            for vmap, emap in _isos_between(s, t, kind):
                elements.append(PartialIso(g, s, t, vmap, emap))
                if len(elements) > caps.max_elements:
                    raise ResourceLimitError(
                        f"more than caps.max_elements={caps.max_elements} elements; "
                        "raise the cap to build this semigroup"
                    )
    return InverseSemigroup(kind, g, r, elements, caps)


def idempotents(s: InverseSemigroup) -> list[PartialIso]:
    return [s.elements[i] for i in s.idempotent_indices()]


def automorphism_subgroup(s: InverseSemigroup) -> list[int]:
    """Indices of the elements defined on the whole host (a group inside s)."""
    if s.kind in ROOTED_KINDS:
        raise DomainError("automorphism subgroup is only exposed for the unrooted kinds")
    g = s.host
    return [
        i
        for i, f in enumerate(s.elements)
        if f.dom.vmask == g.full_vmask and f.dom.emask == g.full_emask
        and f.cod.vmask == g.full_vmask and f.cod.emask == g.full_emask
    ]


@dataclass
class VerifyReport:
    """Outcome of the five-part inverse-semigroup check. None = not evaluated
    (a later check was skipped because an earlier one failed or sampling was on)."""

    kind: str
    n: int
    closed: bool | None = None
    associative: bool | None = None
    regular: bool | None = None
    idempotents_commute: bool | None = None
    unique_inverses: bool | None = None
    sampled: bool = False
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(
            v is True
            for v in (
                self.closed,
                self.associative,
                self.regular,
                self.idempotents_commute,
                self.unique_inverses,
            )
        )

    def lines(self) -> list[str]:
        tag = " (sampled)" if self.sampled else ""
        out = [f"elements: {self.n}{tag}"]
        for name in ("closed", "associative", "regular", "idempotents_commute", "unique_inverses"):
            v = getattr(self, name)
            status = "pass" if v is True else ("FAIL" if v is False else "skipped")
            line = f"{name}: {status}"
            if v is False and name in self.witnesses:
                line += f"  witness={self.witnesses[name]}"
            out.append(line)
        return out


def verify_inverse_semigroup(s: InverseSemigroup, seed: int = 0) -> VerifyReport:
    """Check closure, associativity, regularity, commuting idempotents and
    uniqueness of inverses. Exhaustive when the table fits under the cap;
    otherwise a seeded sample, flagged as such."""
    n = len(s.elements)
    rep = VerifyReport(kind=s.kind, n=n)
    if n <= s.caps.max_table:
        t = s.table()
        missing = s._table_missing or []
        rep.closed = not missing
        if missing:
            i, j = missing[0]
            rep.witnesses["closed"] = (i, j)
            return rep
        w = kernel.associativity_witness(t)
        rep.associative = w is None
        if w is not None:
            rep.witnesses["associative"] = w
        # regularity through the explicit inverse map
        rep.regular = True
        for i in range(n):
            try:
                k = s.invert_index(i)
            except DomainError:
                rep.regular = False
                rep.witnesses["regular"] = (i,)
                break
            if t[t[i, k], i] != i or t[t[k, i], k] != k:
                rep.regular = False
                rep.witnesses["regular"] = (i, k)
                break
        idem = s.idempotent_indices()
        rep.idempotents_commute = True
        for e, f in itertools.combinations(idem, 2):
            if t[e, f] != t[f, e]:
                rep.idempotents_commute = False
                rep.witnesses["idempotents_commute"] = (e, f)
                break
        rep.unique_inverses = True
        ar = np.arange(n)
        for i in range(n):
            left = t[t[i, :], i] == i
            right = t[t[:, i], ar] == ar
            count = int(np.count_nonzero(left & right))
            if count != 1:
                rep.unique_inverses = False
                rep.witnesses["unique_inverses"] = (i, count)
                break
        return rep

    rep.sampled = True
    rng = random.Random(seed)
    compose = s.compose
    els = s.elements

    def pick() -> int:
        return rng.randrange(n)

    rep.closed = True
    for _ in range(min(s.caps.sample_triples, 4 * n)):
        i, j = pick(), pick()
        if compose(els[i], els[j]).key() not in s.index:
            rep.closed = False
            rep.witnesses["closed"] = (i, j)
            return rep
    rep.associative = True
    for _ in range(s.caps.sample_triples):
        i, j, k = pick(), pick(), pick()
        if compose(compose(els[i], els[j]), els[k]) != compose(els[i], compose(els[j], els[k])):
            rep.associative = False
            rep.witnesses["associative"] = (i, j, k)
            break
    rep.regular = True
    for i in range(n):
        f = els[i]
        fi = invert(f)
        if compose(compose(f, fi), f) != f or compose(compose(fi, f), fi) != fi:
            rep.regular = False
            rep.witnesses["regular"] = (i,)
            break
    idem = [i for i in rng.sample(range(n), min(n, 200)) if compose(els[i], els[i]) == els[i]]
    rep.idempotents_commute = True
    for e, f in itertools.combinations(idem, 2):
        if compose(els[e], els[f]) != compose(els[f], els[e]):
            rep.idempotents_commute = False
            rep.witnesses["idempotents_commute"] = (e, f)
            break
    rep.unique_inverses = True
    for i in rng.sample(range(n), min(n, 32)):
        f = els[i]
        count = 0
        for j in range(n):
            h = els[j]
            if compose(compose(f, h), f) == f and compose(compose(h, f), h) == h:
                count += 1
        if count != 1:
            rep.unique_inverses = False
            rep.witnesses["unique_inverses"] = (i, count)
            break
    return rep


def semigroup_to_json(s: InverseSemigroup) -> dict:
    return s.to_json()


def semigroup_from_json(data: dict, caps: Caps = DEFAULT_CAPS) -> InverseSemigroup:
    """Rebuild a semigroup from its JSON form, validating every element."""
    try:
        kind = data["kind"]
        hv = data["host"]["vertices"]
        he = [tuple(e) for e in data["host"]["edges"]]
        root_id = data.get("root")
        raw_elements = data["elements"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"semigroup JSON missing field: {exc}") from exc
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    g = Graph(hv, he)
    root = None
    if kind in ROOTED_KINDS:
        if root_id is None:
            raise ParseError(f"kind {kind!r} needs a root")
        if root_id not in g.vindex:
            raise ParseError(f"unknown root vertex {root_id!r}")
        root = g.vindex[root_id]
    flavor = _FLAVOR[kind]
    elements = [partial_iso_from_json(g, e, flavor, root=root) for e in raw_elements]
    return InverseSemigroup(kind, g, root, elements, caps)
