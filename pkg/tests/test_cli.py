import json
import random
import subprocess
import sys

from heredity_iso.cli import main
from heredity_iso.cograph import cotree_graph, random_cotree
from heredity_iso.formats import encode_edge_list, encode_graph6
from heredity_iso.graph import complete, cycle, disjoint_union, is_isomorphism, path
from heredity_iso.oracle import canonical_form_small
from heredity_iso.reductions import split_incidence_reduce

from conftest import relabeled


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_g6(tmp_path, name, g):
    p = tmp_path / name
    p.write_bytes(encode_graph6(g) + b"\n")
    return str(p)


def test_classify_examples(capsys):
    code, out, _ = run(capsys, "classify", "P4+K1", "co(P4+K1)")
    assert code == 0 and "Polynomial(rao)" in out and "external-preprint" in out
    code, out, _ = run(capsys, "classify", "P4+K1", "co(P6)")
    assert code == 0 and "GIComplete" in out


def test_classify_is_deterministic(capsys):
    first = run(capsys, "--json", "classify", "P4+K1", "P4+K1")
    second = run(capsys, "classify", "P4+K1", "P4+K1", "--json")
    assert first == second
    rec = json.loads(first[1])
    assert set(rec) == {"command", "inputs", "verdict", "witness", "flags"}
    assert rec["verdict"] == "GIComplete" and rec["flags"]["provenance"] == "main-characterization"


def test_classify_parse_error(capsys):
    code, out, err = run(capsys, "--json", "classify", "P4+", "K1")
    assert code == 2 and "error" in err
    assert json.loads(out)["witness"] == {"position": 3}


def test_iso_large_cograph(tmp_path, capsys):
    rng = random.Random(50)
    g = cotree_graph(random_cotree(50, rng))
    h = relabeled(g, rng)
    a, b = write_g6(tmp_path, "a.g6", g), write_g6(tmp_path, "b.g6", h)
    code, out, _ = run(capsys, "--json", "iso", "P4", "P4", a, b)
    rec = json.loads(out)
    assert code == 0 and rec["verdict"] == "isomorphic" and rec["flags"]["method"] == "cograph"
    assert is_isomorphism(g, h, rec["witness"]["mapping"])


def test_iso_c6_vs_two_triangles(tmp_path, capsys):
    a = write_g6(tmp_path, "a.g6", cycle(6))
    b = write_g6(tmp_path, "b.g6", disjoint_union(complete(3), complete(3)))
    code, out, _ = run(capsys, "--json", "iso", "K7", "K7", a, b)
    rec = json.loads(out)
    assert code == 1 and rec["verdict"] == "non-isomorphic" and rec["flags"]["oracle_answered"]


def test_iso_membership_failure(tmp_path, capsys):
    a = write_g6(tmp_path, "a.g6", path(5))
    code, out, _ = run(capsys, "--json", "iso", "P4", "P4", a, a)
    rec = json.loads(out)
    assert code == 2 and rec["witness"]["forbidden"] == "P4" and len(rec["witness"]["vertices"]) == 4


def test_iso_refusal(tmp_path, capsys):
    a = write_g6(tmp_path, "a.g6", path(12))
    code, out, _ = run(capsys, "iso", "C5", "C5", a, a, "--oracle-limit", "10")
    assert code == 2 and "refused" in out


def test_malformed_graph6(tmp_path, capsys):
    bad = tmp_path / "bad.g6"
    bad.write_bytes(b"Dx!\n")
    good = write_g6(tmp_path, "good.g6", path(5))
    code, out, err = run(capsys, "--json", "iso", "K7", "K7", str(bad), good)
    assert code == 2 and "byte 2" in err
    assert json.loads(out)["witness"] == {"byte_offset": 2}


def test_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "canon", str(tmp_path / "nope"))
    assert code == 2 and "cannot read" in err


def test_edge_list_input_and_override(tmp_path, capsys):
    p = tmp_path / "g.txt"
    p.write_text(encode_edge_list(path(4)))
    code, out, _ = run(capsys, "member", "P4", "P4", str(p))
    assert code == 1 and "vertices [0, 1, 2, 3]" in out
    code, _, _ = run(capsys, "--format", "graph6", "member", "P4", "P4", str(p))
    assert code == 2


def test_member_yes(tmp_path, capsys):
    a = write_g6(tmp_path, "a.g6", cycle(4))
    assert run(capsys, "member", "P4", "P4", a)[0] == 0


def test_canon(tmp_path, capsys):
    code, out, _ = run(capsys, "canon", write_g6(tmp_path, "a.g6", path(4)))
    assert code == 0 and out.strip() == canonical_form_small(path(4)).decode()
    g = cotree_graph(random_cotree(30, random.Random(3)))
    code, out1, _ = run(capsys, "canon", write_g6(tmp_path, "b.g6", g))
    code2, out2, _ = run(capsys, "canon", write_g6(tmp_path, "c.g6", relabeled(g, random.Random(4))))
    assert code == code2 == 0 and out1 == out2 and out1.startswith(("U(", "J("))
    code, _, err = run(capsys, "canon", write_g6(tmp_path, "d.g6", path(12)))
    assert code == 2 and "not a cograph" in err


def test_canon_matches_across_relabelings(tmp_path, capsys):
    g = disjoint_union(cycle(5), path(2))
    outs = {run(capsys, "canon", write_g6(tmp_path, f"{i}.g6", relabeled(g, random.Random(i))))[1] for i in range(4)}
    assert len(outs) == 1


def test_reduce(tmp_path, capsys):
    code, out, _ = run(capsys, "reduce", write_g6(tmp_path, "a.g6", complete(3)))
    assert code == 0 and out.strip() == encode_graph6(split_incidence_reduce(complete(3))).decode()
    code, _, err = run(capsys, "reduce", write_g6(tmp_path, "b.g6", disjoint_union(path(2), complete(1))))
    assert code == 2 and "isolated" in err


def test_catalog(capsys):
    code, out, _ = run(capsys, "--json", "catalog")
    rec = json.loads(out)
    assert code == 0 and len(rec["witness"]["path_union_complements"]) == 30
    assert rec["witness"]["exception_set"] == ["P4+K1", "K2+I2", "P3+I2"]
    _, out, _ = run(capsys, "catalog", "--max-vertices", "4", "--max-paths", "2")
    assert "path-union complements (8)" in out


def test_selftest_quick_is_deterministic(capsys):
    first = run(capsys, "selftest", "quick")
    second = run(capsys, "selftest", "quick")
    assert first == second and first[0] == 0
    assert "1,2,4,11,34" in first[1].replace(" ", "")


def test_table_override_and_env(tmp_path, capsys, monkeypatch):
    t = tmp_path / "t.tsv"
    t.write_text("P4+K1\tco(P4+K1)\tgi-complete\tlocal-note\n")
    code, out, _ = run(capsys, "--table", str(t), "classify", "P4+K1", "co(P4+K1)")
    assert "GIComplete" in out and "local-note" in out
    monkeypatch.setenv("HEREDITY_ISO_TABLE", str(t))
    assert "local-note" in run(capsys, "classify", "P4+K1", "co(P4+K1)")[1]
    bad = tmp_path / "bad.tsv"
    bad.write_text("P4\tP4\n")
    assert run(capsys, "classify", "P4", "P4", "--table", str(bad))[0] == 2


def test_inputs_are_not_modified(tmp_path, capsys):
    a = write_g6(tmp_path, "a.g6", cycle(6))
    b = write_g6(tmp_path, "b.g6", cycle(6))
    before = {p: open(p, "rb").read() for p in (a, b)}
    for argv in (["iso", "K7", "K7", a, b], ["canon", a], ["reduce", a], ["member", "P4", "P4", a]):
        run(capsys, *argv)
    assert {p: open(p, "rb").read() for p in (a, b)} == before


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "selftest", "medium")[0] == 2


def test_module_entry_point(tmp_path):
    a = write_g6(tmp_path, "a.g6", cycle(6))
    b = write_g6(tmp_path, "b.g6", disjoint_union(complete(3), complete(3)))
    proc = subprocess.run([sys.executable, "-m", "heredity_iso", "iso", "K7", "K7", a, b],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "non-isomorphic" in proc.stdout
