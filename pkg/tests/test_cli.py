import json

from src.main import main


def test_homology_pretty(capsys):
    code = main(["homology", "--quandle", "dihedral:3", "--theory", "Q", "--degrees", "1..3"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out == ["H_1^Q(R3) = Z", "H_2^Q(R3) = 0", "H_3^Q(R3) = Z_3"]


def test_homology_json(capsys):
    code = main(["homology", "--quandle", "fixture:s4", "--degrees", "2", "--format", "json"])
    [report] = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["group"] == "Z ⊕ Z_2"
    assert report["free_rank"] == 1
    assert report["torsion"] == [2]


def test_homology_writes_out_file(capsys, tmp_path):
    target = tmp_path / "r3.csv"
    code = main(
        ["homology", "--quandle", "dihedral:3", "--theory", "Q", "--degrees", "3"]
        + ["--format", "csv", "--out", str(target)]
    )
    assert code == 0
    assert capsys.readouterr().out == ""
    lines = target.read_text().splitlines()
    assert lines[0].startswith("quandle,xset,theory,degree")
    assert lines[1].endswith(",Z_3")


def test_verify_exit_codes(capsys):
    assert main(["verify", "burnside"]) == 0
    assert "1 passed, 0 failed" in capsys.readouterr().out
    assert main(["verify", "no-such-check"]) == 2
    assert "unknown check" in capsys.readouterr().err


def test_verify_accepts_alias(capsys):
    assert main(["verify", "lemma22"]) == 0
    out = capsys.readouterr().out
    assert "derivative-identities" in out
    assert "1 passed, 0 failed" in out


def test_verify_list(capsys):
    assert main(["verify", "--list"]) == 0
    out = capsys.readouterr().out
    assert "derivative-identities:" in out
    assert "s4-h6q (deep):" in out


def test_chain_boundary(capsys):
    code = main(["chain", "boundary", "--quandle", "dihedral:3", "--in", "c01.json"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "(0) - (2)"


def test_chain_extreme_modes(capsys):
    args = ["chain", "extreme", "--quandle", "fixture:s4", "--in", "s4_extreme.json"]
    assert main(args + ["--mode", "quandle"]) == 0
    assert "extreme: true" in capsys.readouterr().out
    assert main(args) == 1
    assert "extreme: false" in capsys.readouterr().out


def test_chain_apply_op(capsys):
    code = main(
        ["chain", "apply-op", "--quandle", "dihedral:3", "--in", "c01.json"]
        + ["--op", '{"op": "h_a", "a": 2}', "--format", "json"]
    )
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert data["degree"] == 3
    assert data["terms"] == [{"coeff": "1", "tuple": [0, 1, 2]}]


def test_chain_apply_op_check_fails_for_h_a(capsys):
    code = main(
        ["chain", "apply-op", "--quandle", "dihedral:3", "--in", "c01.json"]
        + ["--op", '{"op": "h_a", "a": 0}', "--check"]
    )
    assert code == 2
    assert "not a chain map" in capsys.readouterr().err


def test_chain_apply_op_from_file_passes_check(capsys):
    code = main(
        ["chain", "apply-op", "--quandle", "dihedral:3", "--in", "c01.json"]
        + ["--op", "h_prime_a.json", "--check"]
    )
    assert code == 0
    assert capsys.readouterr().out.strip() == "(0,1,0) + (0,2,0)"


def test_apply_op_needs_op(capsys):
    code = main(["chain", "apply-op", "--quandle", "dihedral:3", "--in", "c01.json"])
    assert code == 2
    assert "--op" in capsys.readouterr().err


def test_quandle_info(capsys):
    assert main(["quandle", "--quandle", "dihedral:4"]) == 0
    out = capsys.readouterr().out
    assert "orbits: [[0, 2], [1, 3]]" in out
    assert "connected: false" in out


def test_quandle_dot_export(capsys):
    assert main(["quandle", "--quandle", "dihedral:3", "--export", "dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith('digraph "R3" {')
    assert '  0 -> 2 [label="1"];' in out


def test_explore_lists_experiments(capsys):
    assert main(["explore"]) == 0
    assert "s4-torsion-growth:" in capsys.readouterr().out


def test_unknown_quandle(capsys):
    assert main(["homology", "--quandle", "nonsense"]) == 2
    assert "error:" in capsys.readouterr().err
