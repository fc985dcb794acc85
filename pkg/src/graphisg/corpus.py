"""Small-graph corpora for exhaustive desk-scale checking.

The generators return one representative per isomorphism class with
deterministic labels (v0, v1, ... and e0, e1, ...), the empty graph
included, so downstream sweeps quantify over "every multigraph with ..."
without double counting.
"""

from __future__ import annotations

import itertools

from .graphs import Graph, canonical_form, canonical_form_rooted


def _assemble(nv: int, slots) -> Graph:
    vertices = [f"v{i}" for i in range(nv)]
    edges = [(f"e{k}", f"v{a}", f"v{b}") for k, (a, b) in enumerate(slots)]
    return Graph(vertices, edges)


def all_multigraphs(max_vertices: int, max_edges: int) -> list[Graph]:
    """Every multigraph up to isomorphism, loops and parallel edges included."""
    seen: dict[tuple, Graph] = {}
    for nv in range(max_vertices + 1):
        slots = [(a, b) for a in range(nv) for b in range(a, nv)]
        for ne in range(max_edges + 1):
            for choice in itertools.combinations_with_replacement(slots, ne):
                g = _assemble(nv, choice)
                key = (nv, ne, canonical_form(g))
                if key not in seen:
                    seen[key] = g
    return [seen[k] for k in sorted(seen)]


def all_simple_graphs(max_vertices: int) -> list[Graph]:
    """Every simple graph up to isomorphism."""
    seen: dict[tuple, Graph] = {}
    for nv in range(max_vertices + 1):
        slots = list(itertools.combinations(range(nv), 2))
        for ne in range(len(slots) + 1):
            for choice in itertools.combinations(slots, ne):
                g = _assemble(nv, choice)
                key = (nv, ne, canonical_form(g))
                if key not in seen:
                    seen[key] = g
    return [seen[k] for k in sorted(seen)]


def rooted_connected_simple(max_vertices: int) -> list[tuple[Graph, str]]:
    """(graph, root id) pairs: connected simple hosts, one per rooted class.

    Roots in the same automorphism orbit collapse to a single entry.
    """
    seen: dict[tuple, tuple[Graph, str]] = {}
    for g in all_simple_graphs(max_vertices):
        if g.n == 0 or not g.is_connected_mask(g.full_vmask):
            continue
        for v in g.vertices:
            key = (g.n, g.m, canonical_form_rooted(g, v))
            if key not in seen:
                seen[key] = (g, v)
    return [seen[k] for k in sorted(seen)]


def complete(n: int) -> Graph:
    slots = itertools.combinations(range(n), 2)
    return _assemble(n, slots)


def path(n: int) -> Graph:
    return _assemble(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return _assemble(n, ((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    return _assemble(leaves + 1, ((0, i + 1) for i in range(leaves)))


def petersen() -> Graph:
    """Outer 5-cycle o0..o4, inner pentagram i0..i4 (ik adjacent to ik+-2),
    spokes ok-ik. Edge ids: a* outer, s* spokes, b* inner."""
    vertices = [f"o{k}" for k in range(5)] + [f"i{k}" for k in range(5)]
    edges = []
    for k in range(5):
        edges.append((f"a{k}", f"o{k}", f"o{(k + 1) % 5}"))
    for k in range(5):
        edges.append((f"s{k}", f"o{k}", f"i{k}"))
    for k in range(5):
        edges.append((f"b{k}", f"i{k}", f"i{(k + 2) % 5}"))
    return Graph(vertices, edges)
