"""Command line front end: build, verify, inspect, recover, demo.

Exit codes: 0 on success, 1 when a verification or theorem check fails,
2 on bad input (parse errors, unknown roots, resource caps).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import DomainError, ParseError, ResourceLimitError, StructureError
from .graphs import Graph, parse_graph
from .ideals import enumerate_ideals, ideal_lattice_report, rees_quotient
from .lattice import analyze, hasse_dot, idempotent_poset
from .reconstruction import (
    abstract_from_json,
    forget,
    iisg_complement_functor,
    recover_graph,
    verify_characterization,
)
from .semigroup import (
    DEFAULT_CAPS,
    KINDS,
    ROOTED_KINDS,
    Caps,
    build,
    semigroup_from_json,
    semigroup_to_json,
    verify_inverse_semigroup,
)
from .theorems import petersen_demo, rows_for_graph_file, run_bundled_corpus, TheoremMatrix


@dataclass
class RunConfig:
    """One invocation: what to run, on what, under which limits."""

    command: str
    kind: str | None = None
    root: str | None = None
    caps: Caps = DEFAULT_CAPS
    seed: int = 0
    json_path: str | None = None
    dot_path: str | None = None

    def validate(self) -> None:
        if self.kind in ROOTED_KINDS and self.root is None:
            raise DomainError(f"kind {self.kind!r} needs --root")
        if self.caps.max_elements <= 0 or self.caps.max_table <= 0 or self.caps.max_classes <= 0:
            raise DomainError("caps must be positive")


def _config(args) -> RunConfig:
    caps = Caps(
        max_elements=args.caps_elements,
        max_table=args.caps_table,
        max_classes=args.caps_classes,
    )
    cfg = RunConfig(
        command=args.command,
        kind=getattr(args, "kind", None),
        root=getattr(args, "root", None),
        caps=caps,
        seed=args.seed,
        json_path=args.json,
        dot_path=args.dot,
    )
    cfg.validate()
    return cfg


def _read_graph(path: str) -> Graph:
    return parse_graph(Path(path).read_text())


def _emit_json(cfg: RunConfig, payload: dict) -> None:
    if cfg.json_path:
        Path(cfg.json_path).write_text(json.dumps(payload, indent=2) + "\n")


def _emit_dot(cfg: RunConfig, text: str) -> None:
    if cfg.dot_path:
        Path(cfg.dot_path).write_text(text)


def cmd_build(args) -> int:
    cfg = _config(args)
    g = _read_graph(args.graph)
    s = build(cfg.kind, g, root=cfg.root, caps=cfg.caps)
    idem = len(s.idempotent_indices())
    print(f"{cfg.kind}({args.graph}{'@' + cfg.root if cfg.root else ''}): "
          f"{len(s.elements)} elements, {idem} idempotents")
    _emit_json(cfg, semigroup_to_json(s))
    _emit_dot(cfg, g.to_dot())
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    g = _read_graph(args.graph)
    s = build(cfg.kind, g, root=cfg.root, caps=cfg.caps)
    report = verify_inverse_semigroup(s, seed=cfg.seed)
    for line in report.lines():
        print(line)
    _emit_json(cfg, {
        "kind": report.kind,
        "elements": report.n,
        "sampled": report.sampled,
        "ok": report.ok,
        "checks": {
            name: getattr(report, name)
            for name in ("closed", "associative", "regular",
                         "idempotents_commute", "unique_inverses")
        },
    })
    return 0 if report.ok else 1


def cmd_lattice(args) -> int:
    cfg = _config(args)
    g = _read_graph(args.graph)
    s = build(cfg.kind, g, root=cfg.root, caps=cfg.caps)
    poset = idempotent_poset(s)
    report = analyze(poset)
    for line in report.lines():
        print(line)
    _emit_json(cfg, report.to_json())
    _emit_dot(cfg, hasse_dot(
        poset,
        label_fn=lambda i: ",".join(s.elements[poset.labels[i]].dom.vertex_ids()) or "0"))
    return 0


def cmd_ideals(args) -> int:
    cfg = _config(args)
    g = _read_graph(args.graph)
    s = build(cfg.kind, g, root=cfg.root, caps=cfg.caps)
    include_empty = not args.no_empty
    report, ideals = ideal_lattice_report(s, include_empty=include_empty)
    print(f"{len(ideals)} ideals" + ("" if include_empty else " (empty excluded)"))
    for ideal in ideals:
        shapes = " ".join(f"{r.nv}v{r.ne}e" for r in ideal.basis_refs()) or "-"
        print(f"  {len(ideal.members):>4} members  basis: {shapes}")
    for line in report.lines():
        print(line)
    if args.rees:
        for ideal in ideals:
            if not ideal.members:
                continue
            q = rees_quotient(s, ideal)
            print(f"rees quotient by {len(ideal.members)}-member ideal: "
                  f"{q.table.shape[0]} classes, well defined, associative")
    _emit_json(cfg, {
        "ideals": [
            {"members": len(i.members),
             "basis": [f"{r.nv}v{r.ne}e" for r in i.basis_refs()]}
            for i in ideals
        ],
        "lattice": report.to_json(),
    })
    return 0


def cmd_recover(args) -> int:
    cfg = _config(args)
    data = json.loads(Path(args.semigroup).read_text())
    if "table" in data:
        abstract = abstract_from_json(data)
    else:
        abstract = forget(semigroup_from_json(data), seed=cfg.seed)
    g = recover_graph(abstract)
    text = g.to_text()
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text)
    _emit_json(cfg, {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]})
    _emit_dot(cfg, g.to_dot())
    return 0


def cmd_characterize(args) -> int:
    cfg = _config(args)
    if len(args.graph) != 2:
        raise DomainError("characterize needs exactly two --graph files")
    g, h = (_read_graph(p) for p in args.graph)
    verdict = verify_characterization(g, h, seed=cfg.seed, caps=cfg.caps)
    for line in verdict.lines():
        print(line)
    _emit_json(cfg, {
        "graphs_isomorphic": verdict.graphs_isomorphic,
        "recovered_isomorphic": verdict.recovered_isomorphic,
        "roundtrip_ok": verdict.roundtrip_ok,
        "ok": verdict.ok,
    })
    return 0 if verdict.ok else 1


def cmd_complement_functor(args) -> int:
    cfg = _config(args)
    g = _read_graph(args.graph)
    iso = iisg_complement_functor(g, caps=cfg.caps)
    print(f"Iisg(G) = Iisg(complement) verified on {len(iso.mapping)} elements")
    _emit_json(cfg, iso.to_json())
    return 0


def cmd_verify_theorems(args) -> int:
    cfg = _config(args)
    if args.corpus:
        matrix = TheoremMatrix()
        files = sorted(p for p in Path(args.corpus).iterdir() if p.is_file())
        for p in files:
            matrix.rows.extend(
                rows_for_graph_file(p.name, p.read_text(), caps=cfg.caps, seed=cfg.seed))
    else:
        matrix = run_bundled_corpus(caps=cfg.caps, seed=cfg.seed, jobs=args.jobs)
    for line in matrix.lines():
        print(line)
    _emit_json(cfg, matrix.to_json())
    return 0 if matrix.ok else 1


def cmd_demo(args) -> int:
    cfg = _config(args)
    report = petersen_demo()
    for line in report.lines():
        print(line)
    _emit_json(cfg, {
        "root": report.root,
        "path1": list(report.path1),
        "path2": list(report.path2),
        "shared_edges": list(report.shared_edges),
        "intersection_vertices": list(report.intersection_vertices),
        "intersection_is_tree": report.intersection_is_tree,
        "intersection_is_rooted_path": report.intersection_is_rooted_path,
        "ok": report.ok,
    })
    if cfg.dot_path:
        base = Path(cfg.dot_path)
        for name, text in report.dot.items():
            target = base.with_name(f"{base.stem}-{name}.dot")
            target.write_text(text)
    return 0 if report.ok else 1


def _add_common(sub, graph_arg: bool = True, kind_arg: bool = True) -> None:
    if graph_arg:
        sub.add_argument("graph", help="graph file (v/e directive format)")
    if kind_arg:
        sub.add_argument("--kind", choices=sorted(KINDS), default="fisg")
        sub.add_argument("--root", help="root vertex id (tisg/pisg)")


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # registered on the main parser with real defaults and on every subparser
    # with SUPPRESS, so the flags are accepted on either side of the command
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--caps-elements", type=int, default=d(DEFAULT_CAPS.max_elements),
                        metavar="N", help="element enumeration cap")
    parser.add_argument("--caps-table", type=int, default=d(DEFAULT_CAPS.max_table),
                        metavar="N", help="full composition table cap")
    parser.add_argument("--caps-classes", type=int, default=d(DEFAULT_CAPS.max_classes),
                        metavar="N", help="domain class cap for ideal work")
    parser.add_argument("--seed", type=int, default=d(0),
                        help="seed for sampling and forgetting")
    parser.add_argument("--json", metavar="PATH", default=d(None),
                        help="write a JSON mirror of the output")
    parser.add_argument("--dot", metavar="PATH", default=d(None),
                        help="write DOT output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isg",
        description="Inverse semigroups of partial isomorphisms of finite multigraphs.",
    )
    _global_flags(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _global_flags(shared, suppress=True)
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("build", parents=[shared], help="build a semigroup and print its size")
    _add_common(p)
    p.set_defaults(fn=cmd_build)

    p = commands.add_parser("verify", parents=[shared], help="check the inverse semigroup axioms")
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = commands.add_parser("lattice", parents=[shared], help="analyze the idempotent poset")
    _add_common(p)
    p.set_defaults(fn=cmd_lattice)

    p = commands.add_parser("ideals", parents=[shared], help="enumerate ideals and their lattice")
    _add_common(p)
    p.add_argument("--no-empty", action="store_true", help="drop the empty ideal")
    p.add_argument("--rees", action="store_true", help="also verify every Rees quotient")
    p.set_defaults(fn=cmd_ideals)

    p = commands.add_parser("recover", parents=[shared], help="rebuild the host graph from a semigroup JSON")
    p.add_argument("semigroup", help="JSON from `isg build --json` or an abstract table")
    p.add_argument("--out", metavar="PATH", help="write the recovered graph file")
    p.set_defaults(fn=cmd_recover)

    p = commands.add_parser("characterize", parents=[shared], help="isomorphism versus table recovery on two graphs")
    p.add_argument("--graph", action="append", required=True, help="graph file (give twice)")
    p.set_defaults(fn=cmd_characterize)

    p = commands.add_parser("complement-functor", parents=[shared],
                            help="verify Iisg(G) = Iisg(complement) for a simple graph")
    p.add_argument("--graph", required=True, help="graph file")
    p.set_defaults(fn=cmd_complement_functor)

    p = commands.add_parser("verify-theorems", parents=[shared], help="run the theorem matrix")
    p.add_argument("corpus", nargs="?", help="directory of graph files (default: bundled corpus)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for the bundled corpus")
    p.set_defaults(fn=cmd_verify_theorems)

    p = commands.add_parser("demo", parents=[shared], help="worked constructions at the terminal")
    p.add_argument("what", choices=["petersen"])
    p.set_defaults(fn=cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, DomainError, ResourceLimitError, StructureError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
