"""Compare the compiled and pure kernels on the two hot loops.

Builds each host's element list once, then times table construction and the
all-triples associativity scan under both backends and checks the outputs
agree bit for bit.  Run from the repository root:

    python3 benchmarks/bench_kernel.py
    python3 benchmarks/bench_kernel.py --full --repeat 5
"""

import argparse
import time

import numpy as np

from graphisg import build, kernel
from graphisg.corpus import complete, cycle
from graphisg.graphs import Graph
from graphisg.semigroup import Caps


def hosts(full: bool):
    yield "fisg", complete(3), "fisg(K3)"
    yield "iisg", cycle(5), "iisg(C5)"
    # four parallel edges plus an isolated vertex: many edge bijections
    quad = Graph(("a", "b", "c"),
                 tuple((f"e{i}", "a", "b") for i in range(4)))
    yield "fisg", quad, "fisg(4-fold edge + K1)"
    if full:
        yield "fisg", complete(4), "fisg(K4)"


def timed(fn, repeat: int):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def run(kind: str, g: Graph, label: str, repeat: int) -> None:
    s = build(kind, g, caps=Caps(max_elements=500_000, max_table=10_000))
    n = len(s.elements)
    saved = kernel._ckernel
    try:
        results = {}
        for name, backend in (("compiled", saved), ("pure", None)):
            if name == "compiled" and saved is None:
                continue
            kernel._ckernel = backend
            (table, missing), t_table = timed(
                lambda: kernel.build_table(s.kind, s.host, s.elements, s.index, s.compose),
                repeat)
            assert not missing, f"{label}: table has holes under {name} backend"
            witness, t_assoc = timed(lambda: kernel.associativity_witness(table), repeat)
            assert witness is None, f"{label}: associativity broke under {name} backend"
            results[name] = (table, t_table, t_assoc)
    finally:
        kernel._ckernel = saved

    if "compiled" in results and "pure" in results:
        assert np.array_equal(results["compiled"][0], results["pure"][0]), \
            f"{label}: backends disagree on the table"
        _, ct, ca = results["compiled"]
        _, pt, pa = results["pure"]
        print(f"{label:>24}  n={n:<5d} table {ct*1e3:9.2f} ms vs {pt*1e3:9.2f} ms "
              f"({pt/ct:5.1f}x)   assoc {ca*1e3:9.2f} ms vs {pa*1e3:9.2f} ms "
              f"({pa/ca:5.1f}x)")
    else:
        _, pt, pa = results["pure"]
        print(f"{label:>24}  n={n:<5d} table {pt*1e3:9.2f} ms   assoc {pa*1e3:9.2f} ms "
              f"(pure only; compiled kernel unavailable)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best-of timing repeats")
    ap.add_argument("--full", action="store_true",
                    help="include fisg(K4), slow under the pure backend")
    args = ap.parse_args()
    print(f"active backend at import: {kernel.backend()}")
    print(f"{'host':>24}  {'':6s} {'compiled':>18s}    {'pure':>12s}")
    for kind, g, label in hosts(args.full):
        run(kind, g, label, args.repeat)


if __name__ == "__main__":
    main()
