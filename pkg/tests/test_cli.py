"""End-to-end CLI tests: exit codes, flag placement, emitted artifacts.

Everything runs in process through graphisg.cli.main so exit codes are
asserted directly instead of through a shell.
"""

import json

import pytest

from graphisg.cli import main

K2 = "v a\nv b\ne e a b\n"
P3 = "v a\nv b\nv c\ne e1 a b\ne e2 b c\n"
LOOP = "v v\ne l v v\n"
BROKEN = "v a\ne e a zzz\n"


@pytest.fixture
def k2(tmp_path):
    p = tmp_path / "k2.txt"
    p.write_text(K2)
    return str(p)


@pytest.fixture
def p3(tmp_path):
    p = tmp_path / "p3.txt"
    p.write_text(P3)
    return str(p)


def test_build_prints_counts(k2, capsys):
    assert main(["build", k2]) == 0
    out = capsys.readouterr().out
    assert "9 elements" in out and "5 idempotents" in out


def test_build_iisg(k2, capsys):
    assert main(["build", k2, "--kind", "iisg"]) == 0
    assert "7 elements" in capsys.readouterr().out


def test_build_rooted_needs_root(k2, capsys):
    assert main(["build", k2, "--kind", "tisg"]) == 2
    assert "needs --root" in capsys.readouterr().err


def test_build_unknown_root(k2):
    assert main(["build", k2, "--kind", "tisg", "--root", "zzz"]) == 2


def test_build_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text(BROKEN)
    assert main(["build", str(p)]) == 2
    assert "error:" in capsys.readouterr().err


def test_build_missing_file():
    assert main(["build", "/nonexistent/g.txt"]) == 2


def test_build_caps_exceeded(k2):
    assert main(["build", k2, "--caps-elements", "3"]) == 2


def test_build_caps_must_be_positive(k2):
    assert main(["build", k2, "--caps-elements", "0"]) == 2


def test_global_flags_before_or_after_subcommand(k2, tmp_path):
    before = tmp_path / "before.json"
    after = tmp_path / "after.json"
    assert main(["--json", str(before), "build", k2]) == 0
    assert main(["build", k2, "--json", str(after)]) == 0
    assert json.loads(before.read_text()) == json.loads(after.read_text())


def test_build_json_and_dot(k2, tmp_path):
    j = tmp_path / "s.json"
    d = tmp_path / "g.dot"
    assert main(["build", k2, "--json", str(j), "--dot", str(d)]) == 0
    data = json.loads(j.read_text())
    assert len(data["elements"]) == 9
    assert d.read_text().startswith("graph ")


def test_verify_passes(p3, capsys):
    assert main(["verify", p3, "--kind", "iisg"]) == 0
    out = capsys.readouterr().out
    assert "closed: pass" in out and "unique_inverses: pass" in out


def test_verify_rooted(p3, capsys):
    assert main(["verify", p3, "--kind", "pisg", "--root", "a"]) == 0
    assert "associative: pass" in capsys.readouterr().out


def test_lattice_report_and_dot(k2, tmp_path, capsys):
    d = tmp_path / "h.dot"
    assert main(["lattice", k2, "--dot", str(d)]) == 0
    out = capsys.readouterr().out
    assert "lattice" in out
    text = d.read_text()
    assert text.startswith("digraph ") and "a,b" in text


def test_ideals_with_rees(k2, capsys):
    assert main(["ideals", k2, "--rees"]) == 0
    out = capsys.readouterr().out
    assert "5 ideals" in out and "rees quotient" in out


def test_ideals_no_empty(k2, capsys):
    assert main(["ideals", k2, "--no-empty"]) == 0
    assert "4 ideals" in capsys.readouterr().out


def test_recover_from_build_json(k2, tmp_path, capsys):
    j = tmp_path / "s.json"
    main(["build", k2, "--json", str(j)])
    out_file = tmp_path / "rec.txt"
    assert main(["recover", str(j), "--out", str(out_file)]) == 0
    text = out_file.read_text()
    # two vertices and one ordinary edge, identities renamed
    assert text.count("\nv ") + text.startswith("v ") == 2
    assert text.count("\ne ") == 1


def test_recover_from_abstract_table(k2, tmp_path, capsys):
    from graphisg import build, forget
    from graphisg.graphs import parse_graph

    s = build("fisg", parse_graph(K2))
    abstract = tmp_path / "a.json"
    abstract.write_text(json.dumps(forget(s, seed=3).to_json()))
    assert main(["recover", str(abstract)]) == 0
    out = capsys.readouterr().out
    assert out.count("v ") == 2 and out.count("e ") == 1


def test_recover_rejects_garbage_table(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"table": [[1, 1], [0, 0]]}))
    assert main(["recover", str(p)]) == 2
    assert "error:" in capsys.readouterr().err


def test_recover_rejects_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["recover", str(p)]) == 2


def test_characterize_isomorphic_pair(k2, tmp_path, capsys):
    other = tmp_path / "k2b.txt"
    other.write_text("v x\nv y\ne f y x\n")
    assert main(["characterize", "--graph", k2, "--graph", str(other)]) == 0
    out = capsys.readouterr().out
    assert "verdict: pass" in out


def test_characterize_counterexample_pair_still_agrees(k2, tmp_path):
    loop = tmp_path / "loop.txt"
    loop.write_text(LOOP)
    bare = tmp_path / "bare.txt"
    bare.write_text("v v\n")
    assert main(["characterize", "--graph", str(loop), "--graph", str(bare)]) == 0


def test_characterize_needs_two_graphs(k2):
    assert main(["characterize", "--graph", k2]) == 2


def test_complement_functor(p3, capsys):
    assert main(["complement-functor", "--graph", p3]) == 0
    assert "22 elements" in capsys.readouterr().out


def test_complement_functor_rejects_multigraph(tmp_path):
    p = tmp_path / "loop.txt"
    p.write_text(LOOP)
    assert main(["complement-functor", "--graph", str(p)]) == 2


def test_verify_theorems_directory_pass(tmp_path, capsys):
    (tmp_path / "k2.txt").write_text(K2)
    assert main(["verify-theorems", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "pass" in out and "FAIL" not in out


def test_verify_theorems_parse_error_fails_run(tmp_path, capsys):
    (tmp_path / "k2.txt").write_text(K2)
    (tmp_path / "bad.txt").write_text(BROKEN)
    assert main(["verify-theorems", str(tmp_path)]) == 1
    out = capsys.readouterr().out
    assert "parse-error" in out


def test_verify_theorems_json(tmp_path):
    (tmp_path / "k2.txt").write_text(K2)
    j = tmp_path / "m.json"
    assert main(["verify-theorems", str(tmp_path), "--json", str(j)]) == 0
    data = json.loads(j.read_text())
    assert data["ok"] is True
    assert all(r["status"] == "pass" for r in data["rows"])


def test_demo_petersen(tmp_path, capsys):
    d = tmp_path / "pd.dot"
    j = tmp_path / "pd.json"
    assert main(["demo", "petersen", "--dot", str(d), "--json", str(j)]) == 0
    out = capsys.readouterr().out
    assert "tree" in out
    data = json.loads(j.read_text())
    assert data["ok"] is True
    assert data["intersection_is_rooted_path"] is False
    for name in ("cycle1", "cycle2", "intersection"):
        assert (tmp_path / f"pd-{name}.dot").exists()


def test_seed_changes_forgotten_table(k2, tmp_path):
    j = tmp_path / "s.json"
    main(["build", k2, "--json", str(j)])
    rec0 = tmp_path / "r0.txt"
    rec1 = tmp_path / "r1.txt"
    assert main(["recover", str(j), "--seed", "0", "--out", str(rec0)]) == 0
    assert main(["recover", str(j), "--seed", "7", "--out", str(rec1)]) == 0
    # same graph up to renaming regardless of the forgetting seed
    assert rec0.read_text().count("e ") == rec1.read_text().count("e ")
