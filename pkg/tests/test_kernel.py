import os
import subprocess
import sys

import numpy as np
import pytest

from graphisg import _pykernel, kernel
from graphisg.errors import DomainError
from graphisg.graphs import parse_graph
from graphisg.semigroup import build

K3 = parse_graph("v a\nv b\nv c\ne e1 a b\ne e2 b c\ne e3 a c\n")
P3 = parse_graph("v a\nv b\nv c\ne e1 a b\ne e2 b c\n")
DOUBLE = parse_graph("v a\nv b\ne e1 a b\ne e2 a b\n")
LOOP = parse_graph("v a\ne e1 a a\n")
EMPTY = parse_graph("")

compiled = pytest.mark.skipif(
    kernel.backend() != "compiled", reason="compiled kernel not built"
)


def semigroups():
    return [
        build("fisg", K3),
        build("fisg", LOOP),
        build("fisg", EMPTY),
        build("iisg", P3),
        build("tisg", K3, root="a"),
        build("pisg", K3, root="a"),
        build("pisg", DOUBLE, root="a"),
    ]


@compiled
@pytest.mark.parametrize("s", semigroups(), ids=lambda s: f"{s.kind}-{s.host.n}v{s.host.m}e")
def test_backends_build_identical_tables(s):
    fast, missing_fast = kernel.build_table(s.kind, s.host, s.elements, s.index, s.compose)
    slow, missing_slow = _pykernel.build_table(s.elements, s.index, s.compose)
    assert np.array_equal(fast, slow)
    assert missing_fast == missing_slow == []


@compiled
def test_backends_agree_on_associativity_verdict_and_witness():
    s = build("fisg", K3)
    t = s.table()
    from graphisg import _ckernel

    assert _ckernel.assoc_witness(t) is None
    assert _pykernel.associativity_witness(t) is None
    broken = t.copy()
    broken[3, 5] = (int(broken[3, 5]) + 1) % len(t)
    wc = _ckernel.assoc_witness(broken)
    wp = _pykernel.associativity_witness(broken)
    assert wc == wp is not None


def test_associativity_guard_rejects_missing_entries():
    t = np.full((3, 3), -1, dtype=np.int32)
    with pytest.raises(DomainError):
        kernel.associativity_witness(t)


def test_pure_env_override_forces_fallback():
    env = dict(os.environ, GRAPHISG_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from graphisg import kernel; print(kernel.backend())"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "pure"


def test_pure_table_path_used_for_oversized_hosts(monkeypatch):
    # hosts beyond the packing limit silently take the pure path
    monkeypatch.setattr(kernel, "_PACK_LIMIT", 0)
    s = build("fisg", LOOP)
    t, missing = kernel.build_table(s.kind, s.host, s.elements, s.index, s.compose)
    assert missing == []
    assert t.shape == (3, 3)
