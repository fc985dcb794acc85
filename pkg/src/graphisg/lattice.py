"""Finite poset and lattice analytics, driven entirely by brute force.

The posets here are small (idempotents of a desk-scale semigroup, or its
ideals), so every verdict is decided by exhaustive search over the order
matrix and recorded with a witness when it fails. Verdicts that only make
sense on a lattice come back as None ("not applicable") when meets or joins
are missing, never as a crash.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError
from .graphs import ROOTED, Graph, SubgraphRef
from .semigroup import InverseSemigroup


class FinitePoset:
    """Order matrix wrapper: leq[i, j] == True iff element i <= element j."""

    def __init__(self, leq: np.ndarray, labels: list | None = None):
        self.leq = np.asarray(leq, dtype=bool)
        n = self.leq.shape[0]
        if self.leq.shape != (n, n):
            raise DomainError("order matrix must be square")
        self.labels = list(labels) if labels is not None else list(range(n))
        if len(self.labels) != n:
            raise DomainError("one label per element")

    @property
    def n(self) -> int:
        return self.leq.shape[0]

    def validate(self) -> None:
        le = self.leq
        n = self.n
        if not np.all(np.diag(le)):
            raise DomainError("order is not reflexive")
        if np.any(le & le.T & ~np.eye(n, dtype=bool)):
            raise DomainError("order is not antisymmetric")
        closure = le @ le
        if np.any(closure & ~le):
            raise DomainError("order is not transitive")

    @cached_property
    def covers(self) -> np.ndarray:
        """covers[i, j] iff j covers i (i < j with nothing strictly between)."""
        strict = self.leq & ~np.eye(self.n, dtype=bool)
        return strict & ~(strict @ strict)

    @cached_property
    def bottom(self) -> int | None:
        hits = np.where(self.leq.all(axis=1))[0]
        return int(hits[0]) if len(hits) else None

    @cached_property
    def top(self) -> int | None:
        hits = np.where(self.leq.all(axis=0))[0]
        return int(hits[0]) if len(hits) else None

    def _bound_table(self, direction: str) -> np.ndarray:
        """Pairwise meet (direction 'lower') or join ('upper'), -1 where missing."""
        le = self.leq
        n = self.n
        table = np.full((n, n), -1, dtype=np.int32)
        for i in range(n):
            for j in range(i, n):
                if direction == "lower":
                    common = np.where(le[:, i] & le[:, j])[0]
                else:
                    common = np.where(le[i, :] & le[j, :])[0]
                if len(common) == 0:
                    continue
                sub = le[np.ix_(common, common)]
                if direction == "lower":
                    best = np.where(sub.all(axis=0))[0]  # a common lower bound above all others
                else:
                    best = np.where(sub.all(axis=1))[0]  # a common upper bound below all others
                if len(best) == 1:
                    table[i, j] = table[j, i] = int(common[best[0]])
        return table

    @cached_property
    def meet_table(self) -> np.ndarray:
        return self._bound_table("lower")

    @cached_property
    def join_table(self) -> np.ndarray:
        return self._bound_table("upper")

    def chain_length_sets(self) -> list[set[int]]:
        """For each element, the set of lengths of saturated chains up to a maximal element."""
        up = [np.where(self.covers[i])[0] for i in range(self.n)]
        out: list[set[int] | None] = [None] * self.n
        # an element's upper covers have strictly fewer elements above them,
        # so ascending |up-set| order processes covers before the element
        order = sorted(range(self.n), key=lambda i: int(self.leq[i].sum()))
        for i in order:
            if len(up[i]) == 0:
                out[i] = {0}
            else:
                acc: set[int] = set()
                for j in up[i]:
                    acc |= {1 + l for l in out[j]}
                out[i] = acc
        return out


@dataclass
class LatticeReport:
    """Structural verdicts for one finite poset. None means not applicable
    (the poset is not a lattice, so the property has no meaning here)."""

    n: int
    is_meet_semilattice: bool
    is_lattice: bool
    bounded: bool
    graded: bool
    ranks: list[int] | None
    distributive: bool | None
    complemented: bool | None
    boolean: bool | None
    semimodular: bool | None
    atomic: bool | None
    bi_heyting: bool | None
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "elements": self.n,
            "is_meet_semilattice": self.is_meet_semilattice,
            "is_lattice": self.is_lattice,
            "bounded": self.bounded,
            "graded": self.graded,
            "ranks": self.ranks,
            "distributive": self.distributive,
            "complemented": self.complemented,
            "boolean": self.boolean,
            "semimodular": self.semimodular,
            "atomic": self.atomic,
            "bi_heyting": self.bi_heyting,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }
        return out

    def lines(self) -> list[str]:
        def show(v):
            return "n/a" if v is None else ("yes" if v else "no")

        names = [
            "is_meet_semilattice", "is_lattice", "bounded", "graded", "distributive",
            "complemented", "boolean", "semimodular", "atomic", "bi_heyting",
        ]
        out = [f"elements: {self.n}"]
        for name in names:
            line = f"{name}: {show(getattr(self, name))}"
            if getattr(self, name) is False and name in self.witnesses:
                line += f"  witness={self.witnesses[name]}"
            out.append(line)
        return out


def idempotent_poset(s: InverseSemigroup) -> FinitePoset:
    """Idempotents of s under the natural order e <= f iff e*f == e.
    Labels are element indices into s.elements."""
    idem = s.idempotent_indices()
    t = s.table()
    k = len(idem)
    leq = np.zeros((k, k), dtype=bool)
    for a in range(k):
        for b in range(k):
            leq[a, b] = t[idem[a], idem[b]] == idem[a]
    p = FinitePoset(leq, labels=list(idem))
    p.validate()
    return p


def analyze(p: FinitePoset) -> LatticeReport:
    """Every structural verdict, by exhaustive check with witnesses."""
    n = p.n
    if n == 0:
        raise DomainError("empty poset")
    le = p.leq
    meets = p.meet_table
    joins = p.join_table
    wit: dict = {}

    missing_meet = np.argwhere(meets < 0)
    is_meet = len(missing_meet) == 0
    if not is_meet:
        wit["is_meet_semilattice"] = tuple(int(x) for x in missing_meet[0])
    missing_join = np.argwhere(joins < 0)
    is_lattice = is_meet and len(missing_join) == 0
    if is_meet and not is_lattice:
        wit["is_lattice"] = tuple(int(x) for x in missing_join[0])

    bounded = p.bottom is not None and p.top is not None

    lengths = p.chain_length_sets()
    minimal = [i for i in range(n) if not (le[:, i] & ~np.eye(n, dtype=bool)[:, i]).any()]
    all_lengths: set[int] = set()
    for i in minimal:
        all_lengths |= lengths[i]
    graded = len(all_lengths) == 1
    ranks: list[int] | None = None
    if graded:
        total = next(iter(all_lengths))
        ranks = [total - max(lengths[i]) for i in range(n)]
        for i in range(n):
            for j in np.where(p.covers[i])[0]:
                if ranks[j] != ranks[i] + 1:
                    ranks = None
                    break
            if ranks is None:
                break
    if not graded:
        wit["graded"] = tuple(sorted(all_lengths))

    distributive = complemented = boolean = semimodular = atomic = bi_heyting = None
    if is_lattice:
        # distributive law on all triples
        left = meets[:, joins]                      # left[a, b, c] = a ^ (b v c)
        mab = meets
        right = joins[mab[:, :, None], mab[:, None, :]]  # (a ^ b) v (a ^ c)
        diff = np.argwhere(left != right)
        distributive = len(diff) == 0
        if not distributive:
            wit["distributive"] = tuple(int(x) for x in diff[0])

        if bounded:
            bot, top = p.bottom, p.top
            complemented = True
            for a in range(n):
                if not np.any((meets[a] == bot) & (joins[a] == top)):
                    complemented = False
                    wit["complemented"] = (a,)
                    break
            boolean = bool(distributive and complemented)

            semimodular = True
            for a in range(n):
                for b in range(n):
                    if p.covers[meets[a, b], a] and not p.covers[b, joins[a, b]]:
                        semimodular = False
                        wit["semimodular"] = (a, b)
                        break
                if not semimodular:
                    break

            atoms = np.where(p.covers[bot])[0]
            atomic = True
            for x in range(n):
                below = [int(a) for a in atoms if le[a, x]]
                acc = bot
                for a in below:
                    acc = int(joins[acc, a])
                if acc != x:
                    atomic = False
                    wit["atomic"] = (x,)
                    break

            bi_heyting = True
            for a in range(n):
                for b in range(n):
                    cand = np.where(le[meets[a], b])[0]
                    sub = le[np.ix_(cand, cand)]
                    if len(np.where(sub.all(axis=0))[0]) != 1:
                        bi_heyting = False
                        wit["bi_heyting"] = (a, b, "relative pseudo-complement")
                        break
                    cand = np.where(le[b, joins[a]])[0]
                    sub = le[np.ix_(cand, cand)]
                    if len(np.where(sub.all(axis=1))[0]) != 1:
                        bi_heyting = False
                        wit["bi_heyting"] = (a, b, "dual relative pseudo-complement")
                        break
                if not bi_heyting:
                    break

    return LatticeReport(
        n=n,
        is_meet_semilattice=bool(is_meet),
        is_lattice=bool(is_lattice),
        bounded=bool(bounded),
        graded=bool(graded),
        ranks=ranks,
        distributive=distributive,
        complemented=complemented,
        boolean=boolean,
        semimodular=semimodular,
        atomic=atomic,
        bi_heyting=bi_heyting,
        witnesses=wit,
    )


def tisg_meet(x: SubgraphRef, y: SubgraphRef) -> SubgraphRef:
    """Meet of two rooted connected induced subgraphs: the root's component of
    the induced subgraph on the intersection of their vertex sets."""
    _check_rooted_pair(x, y)
    g = x.host
    comp = g.component_mask(x.root, x.vmask & y.vmask)
    return SubgraphRef(g, comp, g.edges_within(comp), ROOTED, root=x.root)


def tisg_join(x: SubgraphRef, y: SubgraphRef) -> SubgraphRef:
    """Join: the induced subgraph on the union of the vertex sets (connected,
    since both sides contain the root)."""
    _check_rooted_pair(x, y)
    g = x.host
    vm = x.vmask | y.vmask
    return SubgraphRef(g, vm, g.edges_within(vm), ROOTED, root=x.root)


def _check_rooted_pair(x: SubgraphRef, y: SubgraphRef) -> None:
    if x.host != y.host:
        raise DomainError("subgraphs of different hosts")
    if x.flavor != ROOTED or y.flavor != ROOTED or x.root != y.root:
        raise DomainError("both arguments must be rooted at the same vertex")


def pisg_lattice_criterion(g: Graph, root) -> bool:
    """Whether g is a simple path with the root as an endpoint, covering all of
    V(g): exactly the hosts whose rooted path-pair idempotents form a lattice
    (a chain) among connected simple hosts."""
    r = g.vindex[root] if isinstance(root, str) else root
    if not 0 <= r < g.n:
        raise DomainError(f"unknown root {root!r}")
    if g.m != g.n - 1 or not g.is_connected_mask(g.full_vmask):
        return False
    for a in range(g.n):
        if g.mult(a, a):
            return False
        if g.degree(a) > 2:
            return False
    for es in g.bundles.values():
        if len(es) > 1:
            return False
    return g.degree(r) <= 1


def hasse_dot(p: FinitePoset, label_fn=None, name: str = "H") -> str:
    """Hasse diagram as DOT, edges pointing from lower to upper covers."""
    if label_fn is None:
        label_fn = lambda i: str(p.labels[i])
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i in range(p.n):
        lines.append(f'  n{i} [label="{label_fn(i)}"];')
    for i in range(p.n):
        for j in np.where(p.covers[i])[0]:
            lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
