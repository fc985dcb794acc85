"""Finite undirected multigraphs and their distinguished subgraphs.

A graph is a fixed list of vertex ids, a fixed list of edge records
``(eid, u, w)`` (loops allowed, parallel edges allowed), and nothing else.
Vertex and edge ids are arbitrary non-empty strings; internally everything
runs on integer indices and bitmasks (bit i of a vertex mask = vertex index i).

Text format, one item per line::

    # comment
    v a
    v b
    e e1 a b

Subgraphs are never copied out of the host by default: a :class:`SubgraphRef`
is a pair of bitmasks plus a flavor tag saying which extra invariants hold
(arbitrary; vertex-induced; rooted connected induced; rooted path pair).
``to_graph`` extracts a standalone copy when an abstract multigraph is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError, ParseError, ResourceLimitError

# SubgraphRef flavors, ordered from weakest to strongest invariant.
ANY = "any"                # arbitrary subgraph
INDUCED = "induced"        # eset = every host edge inside vset
ROOTED = "rooted"          # induced, connected, contains the root
PATH = "path"              # induced on the vertices of a distinguished root-anchored simple path

# Permutation search in canonical_form is a product over degree classes; this
# caps the largest graph it will accept (10! would already be minutes).
CANON_MAX_VERTICES = 9


def bits(mask: int):
    """Yield set bit positions of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class Graph:
    """Immutable-by-convention multigraph with string ids and indexed internals."""

    def __init__(self, vertices=(), edges=()):
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        self.edges: tuple[tuple[str, str, str], ...] = tuple(
            (str(eid), str(u), str(w)) for eid, u, w in edges
        )
        self.vindex: dict[str, int] = {}
        for i, v in enumerate(self.vertices):
            if not v:
                raise ParseError("empty vertex id")
            if v in self.vindex:
                raise ParseError(f"duplicate vertex id {v!r}")
            self.vindex[v] = i
        self.eindex: dict[str, int] = {}
        ends = []
        for j, (eid, u, w) in enumerate(self.edges):
            if not eid:
                raise ParseError("empty edge id")
            if eid in self.eindex:
                raise ParseError(f"duplicate edge id {eid!r}")
            if u not in self.vindex or w not in self.vindex:
                raise ParseError(f"edge {eid!r} uses undeclared vertex")
            self.eindex[eid] = j
            a, b = self.vindex[u], self.vindex[w]
            ends.append((a, b) if a <= b else (b, a))
        self.ends: tuple[tuple[int, int], ...] = tuple(ends)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_vmask(self) -> int:
        return (1 << self.n) - 1

    @property
    def full_emask(self) -> int:
        return (1 << self.m) - 1

    @cached_property
    def bundles(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Parallel-edge bundles: sorted endpoint index pair -> edge indices."""
        out: dict[tuple[int, int], list[int]] = {}
        for j, e in enumerate(self.ends):
            out.setdefault(e, []).append(j)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _incident(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in range(self.n)]
        for j, (a, b) in enumerate(self.ends):
            inc[a].append(j)
            if b != a:
                inc[b].append(j)
        return tuple(tuple(x) for x in inc)

    def mult(self, a: int, b: int) -> int:
        """Number of edges between vertex indices a and b (loop count if a == b)."""
        key = (a, b) if a <= b else (b, a)
        return len(self.bundles.get(key, ()))

    def degree(self, a: int) -> int:
        """Degree of vertex index a, loops counted twice."""
        d = 0
        for j in self._incident[a]:
            u, w = self.ends[j]
            d += 2 if u == w else 1
        return d

    def edges_within(self, vmask: int) -> int:
        em = 0
        for j, (a, b) in enumerate(self.ends):
            if vmask >> a & 1 and vmask >> b & 1:
                em |= 1 << j
        return em

    def component_mask(self, start: int, vmask: int) -> int:
        """Vertices reachable from `start` inside the subgraph induced on vmask."""
        if not vmask >> start & 1:
            return 0
        seen = 1 << start
        stack = [start]
        while stack:
            a = stack.pop()
            for j in self._incident[a]:
                u, w = self.ends[j]
                b = w if u == a else u
                if vmask >> b & 1 and not seen >> b & 1:
                    seen |= 1 << b
                    stack.append(b)
        return seen

    def is_connected_mask(self, vmask: int) -> bool:
        if vmask == 0:
            return True
        start = (vmask & -vmask).bit_length() - 1
        return self.component_mask(start, vmask) == vmask

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph({self.n} vertices, {self.m} edges)"

    def to_text(self) -> str:
        lines = [f"v {v}" for v in self.vertices]
        lines += [f"e {eid} {u} {w}" for eid, u, w in self.edges]
        return "\n".join(lines) + ("\n" if lines else "")

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for eid, u, w in self.edges:
            lines.append(f'  "{u}" -- "{w}" [label="{eid}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented text format; raise ParseError with a line number."""
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    vseen: set[str] = set()
    eseen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if tok[0] == "v":
            if len(tok) != 2:
                raise ParseError(f"expected 'v <id>', got {raw!r}", lineno)
            if tok[1] in vseen:
                raise ParseError(f"duplicate vertex id {tok[1]!r}", lineno)
            vseen.add(tok[1])
            vertices.append(tok[1])
        elif tok[0] == "e":
            if len(tok) != 4:
                raise ParseError(f"expected 'e <eid> <u> <w>', got {raw!r}", lineno)
            eid, u, w = tok[1], tok[2], tok[3]
            if eid in eseen:
                raise ParseError(f"duplicate edge id {eid!r}", lineno)
            if u not in vseen or w not in vseen:
                raise ParseError(f"edge {eid!r} uses undeclared vertex", lineno)
            eseen.add(eid)
            edges.append((eid, u, w))
        else:
            raise ParseError(f"unknown directive {tok[0]!r}", lineno)
    return Graph(vertices, edges)


def complement(g: Graph) -> Graph:
    """Simple-graph complement; same vertex ids, fresh edge ids c0, c1, ...

    Only defined for simple graphs (no loops, no parallel edges).
    """
    for (a, b), es in g.bundles.items():
        if a == b:
            raise DomainError("complement of a graph with loops is not defined")
        if len(es) > 1:
            raise DomainError("complement of a graph with parallel edges is not defined")
    edges = []
    k = 0
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if g.mult(a, b) == 0:
                edges.append((f"c{k}", g.vertices[a], g.vertices[b]))
                k += 1
    return Graph(g.vertices, edges)


@dataclass(frozen=True)
class SubgraphRef:
    """A subgraph of `host` given by bitmasks, tagged with the invariant it satisfies.

    root is a vertex index (ROOTED and PATH flavors); path is the tuple of
    vertex indices of the distinguished root-anchored simple path (PATH flavor).
    """

    host: Graph
    vmask: int
    emask: int
    flavor: str = ANY
    root: int | None = None
    path: tuple[int, ...] | None = None

    def validate(self) -> None:
        g = self.host
        if self.vmask & ~g.full_vmask or self.emask & ~g.full_emask:
            raise DomainError("subgraph mask out of range")
        for j in bits(self.emask):
            a, b = g.ends[j]
            if not (self.vmask >> a & 1 and self.vmask >> b & 1):
                raise DomainError(f"edge {g.edges[j][0]!r} has an endpoint outside the vertex set")
        if self.flavor in (INDUCED, ROOTED, PATH):
            if self.emask != g.edges_within(self.vmask):
                raise DomainError("subgraph is not vertex-induced")
        if self.flavor in (ROOTED, PATH):
            if self.root is None or not self.vmask >> self.root & 1:
                raise DomainError("rooted subgraph must contain its root")
            if g.component_mask(self.root, self.vmask) != self.vmask:
                raise DomainError("rooted subgraph must be connected")
        if self.flavor == PATH:
            p = self.path
            if not p or p[0] != self.root or len(set(p)) != len(p):
                raise DomainError("distinguished path must be a simple path starting at the root")
            if mask_of(p) != self.vmask:
                raise DomainError("vertex set must equal the path's vertices")
            for a, b in zip(p, p[1:]):
                if self.host.mult(a, b) == 0:
                    raise DomainError("consecutive path vertices must be adjacent")

    @property
    def nv(self) -> int:
        return self.vmask.bit_count()

    @property
    def ne(self) -> int:
        return self.emask.bit_count()

    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(self.host.vertices[i] for i in bits(self.vmask))

    def edge_ids(self) -> tuple[str, ...]:
        return tuple(self.host.edges[j][0] for j in bits(self.emask))

    def to_graph(self) -> Graph:
        """Standalone copy (host ids preserved) of the subgraph."""
        g = self.host
        return Graph(
            self.vertex_ids(),
            tuple(g.edges[j] for j in bits(self.emask)),
        )

    def label(self) -> str:
        vs = ",".join(self.vertex_ids())
        es = ",".join(self.edge_ids())
        return "{" + vs + ("|" + es if es else "") + "}"


def induced_subgraph(g: Graph, x) -> SubgraphRef:
    """Vertex-induced subgraph on x (an iterable of vertex ids, or a vertex mask)."""
    if isinstance(x, int):
        vmask = x
        if vmask & ~g.full_vmask:
            raise DomainError("vertex mask out of range")
    else:
        ids = list(x)
        for v in ids:
            if v not in g.vindex:
                raise DomainError(f"unknown vertex id {v!r}")
        vmask = mask_of(g.vindex[v] for v in ids)
    return SubgraphRef(g, vmask, g.edges_within(vmask), INDUCED)


def subgraph_count(g: Graph) -> int:
    total = 0
    for vmask in range(1 << g.n):
        total += 1 << g.edges_within(vmask).bit_count()
    return total


def enumerate_subgraphs(g: Graph, cap: int | None = None) -> list[SubgraphRef]:
    """All subgraphs (every vertex subset, every edge subset inside it), ascending mask order."""
    if cap is not None:
        total = subgraph_count(g)
        if total > cap:
            raise ResourceLimitError(
                f"{total} subgraphs exceeds the cap of {cap}; raise caps.max_elements to proceed"
            )
    out = []
    for vmask in range(1 << g.n):
        supp = g.edges_within(vmask)
        # ascending enumeration of submasks of supp
        emask = 0
        while True:
            out.append(SubgraphRef(g, vmask, emask, ANY))
            if emask == supp:
                break
            emask = (emask - supp) & supp
    return out


def enumerate_induced_subgraphs(g: Graph) -> list[SubgraphRef]:
    return [induced_subgraph(g, vmask) for vmask in range(1 << g.n)]


def enumerate_rooted_connected_induced(g: Graph, root) -> list[SubgraphRef]:
    """Connected vertex-induced subgraphs containing the root, as ROOTED refs."""
    r = g.vindex[root] if isinstance(root, str) else root
    if not 0 <= r < g.n:
        raise DomainError(f"unknown root {root!r}")
    rest = g.full_vmask & ~(1 << r)
    out = []
    # iterate over subsets of the remaining vertices, ascending
    sub = 0
    while True:
        vmask = sub | 1 << r
        if g.component_mask(r, vmask) == vmask:
            out.append(SubgraphRef(g, vmask, g.edges_within(vmask), ROOTED, root=r))
        if sub == rest:
            break
        sub = (sub - rest) & rest
    return out


def enumerate_rooted_path_pairs(g: Graph, root) -> list[SubgraphRef]:
    """Pairs (induced subgraph on a path's vertices, the path), for every simple
    path starting at the root. Depth-first, neighbors in index order."""
    r = g.vindex[root] if isinstance(root, str) else root
    if not 0 <= r < g.n:
        raise DomainError(f"unknown root {root!r}")
    out = []

    def extend(path: tuple[int, ...], vmask: int) -> None:
        out.append(
            SubgraphRef(g, vmask, g.edges_within(vmask), PATH, root=r, path=path)
        )
        last = path[-1]
        # neighbor set of `last`, excluding vertices already on the path
        nbrs = set()
        for j in g._incident[last]:
            a, b = g.ends[j]
            nbrs.add(b if a == last else a)
        for b in sorted(nbrs):
            if not vmask >> b & 1:
                extend(path + (b,), vmask | 1 << b)

    extend((r,), 1 << r)
    return out


def subgraph_intersection(x: SubgraphRef, y: SubgraphRef) -> SubgraphRef:
    """Mask intersection; vertex-induced whenever both inputs are."""
    if x.host != y.host:
        raise DomainError("subgraphs of different hosts")
    induced = x.flavor in (INDUCED, ROOTED, PATH) and y.flavor in (INDUCED, ROOTED, PATH)
    return SubgraphRef(
        x.host, x.vmask & y.vmask, x.emask & y.emask, INDUCED if induced else ANY
    )


@dataclass(frozen=True)
class GraphIso:
    """An isomorphism src -> dst: vmap/emap are full index tuples."""

    src: Graph
    dst: Graph
    vmap: tuple[int, ...]
    emap: tuple[int, ...]

    def validate(self) -> None:
        if sorted(self.vmap) != list(range(self.dst.n)) or len(self.vmap) != self.src.n:
            raise DomainError("vertex map is not a bijection")
        if sorted(self.emap) != list(range(self.dst.m)) or len(self.emap) != self.src.m:
            raise DomainError("edge map is not a bijection")
        for j, (a, b) in enumerate(self.src.ends):
            ta, tb = self.dst.ends[self.emap[j]]
            if {self.vmap[a], self.vmap[b]} != {ta, tb}:
                raise DomainError("edge map does not respect endpoints")

    def vertex(self, v: str) -> str:
        return self.dst.vertices[self.vmap[self.src.vindex[v]]]


def _degkey(g: Graph, a: int) -> tuple[int, int]:
    # degree with loops counted twice, then loop count: cheap invariant pair
    return (g.degree(a), g.mult(a, a))


def find_isomorphism(g: Graph, h: Graph) -> GraphIso | None:
    """Multigraph isomorphism by backtracking, or None.

    Vertices are tried in (degree, id) order; the edge bijection is fixed
    bundle-by-bundle in id order once the vertex map is complete.
    """
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(_degkey(g, a) for a in range(g.n)) != sorted(_degkey(h, a) for a in range(h.n)):
        return None
    order = sorted(range(g.n), key=lambda a: (_degkey(g, a), g.vertices[a]))
    hverts = sorted(range(h.n), key=lambda x: (_degkey(h, x), h.vertices[x]))
    vmap = [-1] * g.n
    used = [False] * h.n

    def place(k: int) -> bool:
        if k == g.n:
            return True
        a = order[k]
        ka = _degkey(g, a)
        for x in hverts:
            if used[x] or _degkey(h, x) != ka:
                continue
            ok = True
            for b in order[:k]:
                if g.mult(a, b) != h.mult(x, vmap[b]):
                    ok = False
                    break
            if ok:
                vmap[a] = x
                used[x] = True
                if place(k + 1):
                    return True
                vmap[a] = -1
                used[x] = False
        return False

    if not place(0):
        return None
    emap = [-1] * g.m
    for (a, b), ges in g.bundles.items():
        xa, xb = vmap[a], vmap[b]
        key = (xa, xb) if xa <= xb else (xb, xa)
        hes = h.bundles.get(key, ())
        if len(hes) != len(ges):
            return None
        for j, je in zip(sorted(ges, key=lambda j: g.edges[j][0]),
                         sorted(hes, key=lambda j: h.edges[j][0])):
            emap[j] = je
    iso = GraphIso(g, h, tuple(vmap), tuple(emap))
    iso.validate()
    return iso


def _canon_encoding(g: Graph, rank: list[int]) -> tuple:
    enc = []
    for a, b in g.ends:
        ra, rb = rank[a], rank[b]
        enc.append((ra, rb) if ra <= rb else (rb, ra))
    enc.sort()
    return tuple(enc)


def _canon_search(g: Graph, classes: list[list[int]]) -> tuple:
    best = None
    perms_per_class = [list(itertools.permutations(c)) for c in classes]
    offsets = []
    off = 0
    for c in classes:
        offsets.append(off)
        off += len(c)
    rank = [0] * g.n
    for combo in itertools.product(*perms_per_class):
        for ci, perm in enumerate(combo):
            base = offsets[ci]
            for pos, a in enumerate(perm):
                rank[a] = base + pos
        enc = _canon_encoding(g, rank)
        if best is None or enc < best:
            best = enc
    return best if best is not None else ()


def canonical_form(g: Graph, max_vertices: int = CANON_MAX_VERTICES) -> bytes:
    """Isomorphism-invariant byte string: equal iff the multigraphs are isomorphic.

    Vertices are grouped into degree classes (loops counted twice, loop count as
    tie-break); the encoding is minimized over class-respecting permutations.
    """
    if g.n > max_vertices:
        raise ResourceLimitError(
            f"canonical form capped at {max_vertices} vertices (got {g.n}); pass a larger max_vertices"
        )
    keys = sorted({_degkey(g, a) for a in range(g.n)})
    classes = [
        sorted((a for a in range(g.n) if _degkey(g, a) == k), key=lambda a: g.vertices[a])
        for k in keys
    ]
    shape = tuple((k, len(c)) for k, c in zip(keys, classes))
    return repr((g.n, shape, _canon_search(g, classes))).encode("ascii")


def canonical_form_rooted(
    g: Graph, root, max_vertices: int = CANON_MAX_VERTICES
) -> bytes:
    """Like canonical_form but the root is pinned to rank 0: equal iff there is
    a root-preserving isomorphism."""
    r = g.vindex[root] if isinstance(root, str) else root
    if g.n > max_vertices:
        raise ResourceLimitError(
            f"canonical form capped at {max_vertices} vertices (got {g.n}); pass a larger max_vertices"
        )
    others = [a for a in range(g.n) if a != r]
    keys = sorted({_degkey(g, a) for a in others})
    classes = [[r]] + [
        sorted((a for a in others if _degkey(g, a) == k), key=lambda a: g.vertices[a])
        for k in keys
    ]
    shape = tuple((k, len(c)) for k, c in zip([_degkey(g, r)] + keys, classes))
    return b"rooted" + repr((g.n, shape, _canon_search(g, classes))).encode("ascii")


def path_pair_key(ref: SubgraphRef) -> tuple:
    """Equivalence key for PATH refs: two pairs admit a pointwise root-anchored
    isomorphism iff their keys agree. Positions along the path are canonical
    labels, so no search is needed."""
    if ref.flavor != PATH:
        raise DomainError("path_pair_key needs a PATH-flavored subgraph")
    p = ref.path
    mults = []
    for i in range(len(p)):
        for j in range(i, len(p)):
            m = ref.host.mult(p[i], p[j])
            if m:
                mults.append((i, j, m))
    return (len(p), tuple(mults))
