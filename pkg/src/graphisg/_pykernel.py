"""Pure-Python kernel: the reference implementation of the two hot loops.

Table construction composes actual PartialIso objects pair by pair; the
associativity scan works row-wise with numpy gathers. The compiled kernel in
``_ckernel`` must agree with this module bit for bit.
"""

from __future__ import annotations

import numpy as np


def build_table(elements, index, compose):
    n = len(elements)
    table = np.full((n, n), -1, dtype=np.int32)
    missing: list[tuple[int, int]] = []
    for i, f in enumerate(elements):
        row = table[i]
        for j, g in enumerate(elements):
            k = index.get(compose(f, g).key(), -1)
            row[j] = k
            if k < 0:
                missing.append((i, j))
    return table, missing


def associativity_witness(table):
    t = np.asarray(table)
    n = len(t)
    for i in range(n):
        left = t[t[i, :], :]  # left[j, k] = t[t[i, j], k]
        right = t[i, t]       # right[j, k] = t[i, t[j, k]]
        if not np.array_equal(left, right):
            j, k = np.argwhere(left != right)[0]
            return (int(i), int(j), int(k))
    return None
