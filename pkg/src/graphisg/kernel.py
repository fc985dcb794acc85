"""Backend selection for the two hot loops (table fill, associativity scan).

The compiled extension is used when it imported cleanly, the host is small
enough to pack into 64-bit masks, and GRAPHISG_PURE is not set to 1; the
pure-Python kernel is the fallback and the reference. Both produce identical
tables and witnesses.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernel
from .errors import DomainError

if os.environ.get("GRAPHISG_PURE") == "1":
    _ckernel = None
else:
    try:
        from . import _ckernel  # type: ignore[attr-defined]
    except ImportError:
        _ckernel = None

_PACK_LIMIT = 62  # host vertices/edges must fit in one mask word


def backend() -> str:
    return "compiled" if _ckernel is not None else "pure"


def _pack(kind: str, host, elements):
    n = len(elements)
    nv, ne = host.n, host.m
    dv = np.zeros(n, dtype=np.uint64)
    de = np.zeros(n, dtype=np.uint64)
    cv = np.zeros(n, dtype=np.uint64)
    ce = np.zeros(n, dtype=np.uint64)
    vmaps = np.full((n, nv), -1, dtype=np.int8)
    emaps = np.full((n, ne), -1, dtype=np.int8)
    is_path = kind == "pisg"
    pd = np.full((n, nv if is_path else 0), -1, dtype=np.int8)
    pc = np.full((n, nv if is_path else 0), -1, dtype=np.int8)
    plen = np.zeros(n, dtype=np.int32)
    for i, f in enumerate(elements):
        dv[i] = f.dom.vmask
        de[i] = f.dom.emask
        cv[i] = f.cod.vmask
        ce[i] = f.cod.emask
        vmaps[i, : nv] = f.vmap
        emaps[i, : ne] = f.emap
        if is_path:
            p, q = f.dom.path, f.cod.path
            plen[i] = len(p)
            pd[i, : len(p)] = p
            pc[i, : len(q)] = q
    keys = {}
    for i in range(n):
        key = vmaps[i].tobytes() + emaps[i].tobytes()
        if is_path:
            key += pd[i].tobytes() + pc[i].tobytes()
        keys[key] = i
    eu = np.array([a for a, _ in host.ends], dtype=np.int8).reshape(-1)
    ew = np.array([b for _, b in host.ends], dtype=np.int8).reshape(-1)
    return dv, de, cv, ce, vmaps, emaps, pd, pc, plen, keys, eu, ew


def build_table(kind: str, host, elements, index, compose):
    """Return (table, missing-pairs). Composite of elements[i] after elements[j]
    lands in table[i, j]; a pair whose composite is not an element gets -1."""
    n = len(elements)
    if n and _ckernel is not None and host.n <= _PACK_LIMIT and host.m <= _PACK_LIMIT:
        dv, de, cv, ce, vmaps, emaps, pd, pc, plen, keys, eu, ew = _pack(kind, host, elements)
        table = np.full((n, n), -1, dtype=np.int32)
        code = {"fisg": 0, "iisg": 0, "tisg": 1, "pisg": 2}[kind]
        root = elements[0].dom.root if kind in ("tisg", "pisg") else 0
        missing = _ckernel.build_table_packed(
            code, host.n, host.m, eu, ew, root,
            dv, de, cv, ce, vmaps, emaps, pd, pc, plen, keys, table,
        )
        return table, missing
    return _pykernel.build_table(elements, index, compose)


def associativity_witness(table) -> tuple[int, int, int] | None:
    t = np.ascontiguousarray(table, dtype=np.int32)
    if t.size and t.min() < 0:
        raise DomainError("table has missing entries; check closure first")
    if _ckernel is not None:
        return _ckernel.assoc_witness(t)
    return _pykernel.associativity_witness(t)
