"""Partial isomorphisms of a multigraph and their kind-specific composition.

A partial isomorphism is an isomorphism between two subgraphs of one host:
explicit vertex AND edge bijections (parallel edges make the edge bijection
carry real information). Maps are stored as full-length tuples indexed by the
host, with -1 outside the domain.

Composition is written ``compose(psi, phi)`` for "phi first, then psi".
The three rules differ in how the middle overlap is trimmed:

* arbitrary / induced subgraphs: restrict to Im(phi) & Dom(psi);
* rooted connected induced: intersect vertex sets, then keep only the root's
  connected component;
* rooted path pairs: keep the longest common prefix of phi's codomain path
  and psi's domain path, and everything induced on it.

The last two never produce an empty map (the root survives); the first two
bottom out at the empty map, which is the zero of those semigroups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, ParseError
from .graphs import ANY, INDUCED, PATH, ROOTED, Graph, SubgraphRef, bits, mask_of


@dataclass(frozen=True)
class PartialIso:
    host: Graph
    dom: SubgraphRef
    cod: SubgraphRef
    vmap: tuple[int, ...]  # length host.n, -1 off the domain
    emap: tuple[int, ...]  # length host.m, -1 off the domain

    def key(self) -> tuple:
        """Structural identity: the maps plus the distinguished paths."""
        return (
            self.vmap,
            self.emap,
            self.dom.path or (),
            self.cod.path or (),
        )

    def __eq__(self, other):
        return (
            isinstance(other, PartialIso)
            and self.host == other.host
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash(self.key())

    def validate(self) -> None:
        g = self.host
        self.dom.validate()
        self.cod.validate()
        if len(self.vmap) != g.n or len(self.emap) != g.m:
            raise DomainError("map tuples must cover the whole host")
        vs = [self.vmap[a] for a in bits(self.dom.vmask)]
        es = [self.emap[j] for j in bits(self.dom.emask)]
        if mask_of(vs) != self.cod.vmask or len(set(vs)) != len(vs):
            raise DomainError("vertex map is not a bijection dom -> cod")
        if mask_of(es) != self.cod.emask or len(set(es)) != len(es):
            raise DomainError("edge map is not a bijection dom -> cod")
        for a in range(g.n):
            if (self.vmap[a] == -1) != (not self.dom.vmask >> a & 1):
                raise DomainError("vertex map support differs from the domain")
        for j in range(g.m):
            if (self.emap[j] == -1) != (not self.dom.emask >> j & 1):
                raise DomainError("edge map support differs from the domain")
        for j in bits(self.dom.emask):
            a, b = g.ends[j]
            ta, tb = g.ends[self.emap[j]]
            if {self.vmap[a], self.vmap[b]} != {ta, tb}:
                raise DomainError(f"edge {g.edges[j][0]!r} is not mapped compatibly with its endpoints")
        if self.dom.flavor in (ROOTED, PATH):
            if self.vmap[self.dom.root] != self.cod.root:
                raise DomainError("map must send root to root")
        if self.dom.flavor == PATH:
            if tuple(self.vmap[a] for a in self.dom.path) != self.cod.path:
                raise DomainError("map must send the distinguished path to the codomain path pointwise")

    @property
    def is_empty(self) -> bool:
        return self.dom.vmask == 0

    def vertex_image(self, v: str) -> str:
        a = self.host.vindex[v]
        if self.vmap[a] == -1:
            raise DomainError(f"vertex {v!r} is outside the domain")
        return self.host.vertices[self.vmap[a]]

    def __repr__(self):
        return f"PartialIso({self.dom.label()} -> {self.cod.label()})"

    def to_json(self) -> dict:
        g = self.host
        out = {
            "dom": {"v": list(self.dom.vertex_ids()), "e": list(self.dom.edge_ids())},
            "cod": {"v": list(self.cod.vertex_ids()), "e": list(self.cod.edge_ids())},
            "vmap": {
                g.vertices[a]: g.vertices[self.vmap[a]] for a in bits(self.dom.vmask)
            },
            "emap": {
                g.edges[j][0]: g.edges[self.emap[j]][0] for j in bits(self.dom.emask)
            },
        }
        if self.dom.flavor == PATH:
            out["path_dom"] = [g.vertices[a] for a in self.dom.path]
            out["path_cod"] = [g.vertices[a] for a in self.cod.path]
        return out


def partial_iso_from_json(g: Graph, data: dict, flavor: str, root: int | None = None) -> PartialIso:
    """Rebuild an element from its JSON form and validate it."""
    try:
        dv = mask_of(g.vindex[v] for v in data["dom"]["v"])
        de = mask_of(g.eindex[e] for e in data["dom"]["e"])
        cv = mask_of(g.vindex[v] for v in data["cod"]["v"])
        ce = mask_of(g.eindex[e] for e in data["cod"]["e"])
        vmap = [-1] * g.n
        for a, b in data["vmap"].items():
            vmap[g.vindex[a]] = g.vindex[b]
        emap = [-1] * g.m
        for a, b in data["emap"].items():
            emap[g.eindex[a]] = g.eindex[b]
        pd = tuple(g.vindex[v] for v in data["path_dom"]) if flavor == PATH else None
        pc = tuple(g.vindex[v] for v in data["path_cod"]) if flavor == PATH else None
    except KeyError as exc:
        raise ParseError(f"element references unknown id {exc}") from exc
    dom = SubgraphRef(g, dv, de, flavor, root=root if flavor in (ROOTED, PATH) else None, path=pd)
    crt = root if flavor in (ROOTED, PATH) else None
    cod = SubgraphRef(g, cv, ce, flavor, root=crt, path=pc)
    f = PartialIso(g, dom, cod, tuple(vmap), tuple(emap))
    f.validate()
    return f


def identity_on(s: SubgraphRef) -> PartialIso:
    g = s.host
    vmap = [-1] * g.n
    for a in bits(s.vmask):
        vmap[a] = a
    emap = [-1] * g.m
    for j in bits(s.emask):
        emap[j] = j
    return PartialIso(g, s, s, tuple(vmap), tuple(emap))


def invert(f: PartialIso) -> PartialIso:
    g = f.host
    vmap = [-1] * g.n
    for a in bits(f.dom.vmask):
        vmap[f.vmap[a]] = a
    emap = [-1] * g.m
    for j in bits(f.dom.emask):
        emap[f.emap[j]] = j
    return PartialIso(g, f.cod, f.dom, tuple(vmap), tuple(emap))


def _restrict(psi: PartialIso, phi: PartialIso, wv: int, we: int, flavor: str,
              root: int | None = None,
              dom_path: tuple[int, ...] | None = None,
              cod_path: tuple[int, ...] | None = None) -> PartialIso:
    """The composite psi . phi restricted to phi's preimage of (wv, we)."""
    g = phi.host
    vmap = [-1] * g.n
    emap = [-1] * g.m
    dv = de = cv = ce = 0
    for a in bits(phi.dom.vmask):
        mid = phi.vmap[a]
        if wv >> mid & 1:
            b = psi.vmap[mid]
            vmap[a] = b
            dv |= 1 << a
            cv |= 1 << b
    for j in bits(phi.dom.emask):
        mid = phi.emap[j]
        if we >> mid & 1:
            k = psi.emap[mid]
            emap[j] = k
            de |= 1 << j
            ce |= 1 << k
    dom = SubgraphRef(g, dv, de, flavor, root=root, path=dom_path)
    # rooted maps fix the root, so the codomain root equals the domain root
    cod = SubgraphRef(g, cv, ce, flavor, root=root, path=cod_path)
    return PartialIso(g, dom, cod, tuple(vmap), tuple(emap))


def _check_same_host(psi: PartialIso, phi: PartialIso) -> None:
    if psi.host != phi.host:
        raise DomainError("cannot compose maps over different hosts")


def compose_fisg(psi: PartialIso, phi: PartialIso) -> PartialIso:
    """phi first, then psi; domain trimmed to phi's preimage of Im(phi) & Dom(psi).

    Both maps of kind ANY or both INDUCED; the result keeps the stronger tag
    only when both inputs carry it.
    """
    _check_same_host(psi, phi)
    wv = phi.cod.vmask & psi.dom.vmask
    we = phi.cod.emask & psi.dom.emask
    induced = phi.dom.flavor == INDUCED and psi.dom.flavor == INDUCED
    return _restrict(psi, phi, wv, we, INDUCED if induced else ANY)


def compose_tisg(psi: PartialIso, phi: PartialIso) -> PartialIso:
    """Rooted composition: trim the overlap to the root's connected component."""
    _check_same_host(psi, phi)
    root = phi.dom.root
    if root is None or psi.dom.root != root:
        raise DomainError("rooted composition needs two maps rooted at the same vertex")
    g = phi.host
    wv = phi.cod.vmask & psi.dom.vmask
    comp = g.component_mask(root, wv)
    ce = g.edges_within(comp)
    return _restrict(psi, phi, comp, ce, ROOTED, root=root)


def compose_pisg(psi: PartialIso, phi: PartialIso) -> PartialIso:
    """Path-pair composition: keep the longest common prefix of phi's codomain
    path and psi's domain path, then restrict to the subgraph induced on it."""
    _check_same_host(psi, phi)
    root = phi.dom.root
    if root is None or psi.dom.root != root:
        raise DomainError("path composition needs two maps rooted at the same vertex")
    g = phi.host
    p, q = phi.cod.path, psi.dom.path
    k = 0
    while k < len(p) and k < len(q) and p[k] == q[k]:
        k += 1
    prefix = p[:k]  # k >= 1: both paths start at the root
    wv = mask_of(prefix)
    we = g.edges_within(wv)
    inv_phi = {phi.vmap[a]: a for a in bits(phi.dom.vmask)}
    dom_path = tuple(inv_phi[a] for a in prefix)
    cod_path = tuple(psi.vmap[a] for a in prefix)
    return _restrict(psi, phi, wv, we, PATH, root=root, dom_path=dom_path, cod_path=cod_path)


def is_idempotent(f: PartialIso, compose) -> bool:
    return compose(f, f) == f


def natural_leq(e: PartialIso, f: PartialIso, compose) -> bool:
    """Natural partial order on idempotents: e <= f iff e*f == e."""
    return compose(e, f) == e
