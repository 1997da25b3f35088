import json

import pytest

from braidhom.cli import builtin_group, class_selector, main


def run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, out


def test_builtin_groups():
    assert builtin_group("S4").order == 24
    assert builtin_group("A4").order == 12
    assert builtin_group("A5").order == 60
    assert builtin_group("Z/6").order == 6
    assert builtin_group("D4").order == 8
    with pytest.raises(Exception):
        builtin_group("S9")


def test_class_selectors():
    G = builtin_group("S4")
    assert len(class_selector(G, "transpositions")) == 6
    assert len(class_selector(G, "3-cycles")) == 8
    assert len(class_selector(G, "2+2")) == 3
    assert len(class_selector(G, "all")) == 23


def test_betti_rank1(capsys):
    rc, out = run(capsys, ["betti", "--rank1", "--nmax", "4", "--field", "Q"])
    assert rc == 0
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[0] == "n,j,rank"
    rows = {tuple(map(int, ln.split(",")[:2])): int(ln.split(",")[2]) for ln in lines[1:]}
    for n in (2, 3, 4):
        assert rows[(n, 0)] == 1 and rows[(n, 1)] == 1
        assert all(rows[(n, j)] == 0 for j in range(2, n + 1))


def test_meta_echoes_defaults(capsys):
    rc, out = run(capsys, ["betti", "--rank1", "--nmax", "2"])
    assert rc == 0
    assert "# field_resolved=F_2" in out  # rank-one space: smallest prime is 2
    assert "# nmax_resolved=2" in out


def test_default_field_avoids_group_order(capsys):
    # |S3| = 6, so the default working prime is 5
    rc, out = run(capsys, ["malle", "--group", "S3", "--classes", "all"])
    assert rc == 0
    rc, out = run(capsys, ["nichols", "--group", "S3", "--classes", "transpositions",
                           "--epsilon", "--nmax", "2"])
    assert rc == 0
    assert "# field_resolved=F_5" in out


def test_verify_pass_and_exit_codes(capsys):
    rc, out = run(capsys, ["verify", "--group", "S3", "--classes", "transpositions",
                           "--nmax", "3", "--field", "2"])
    assert rc == 0
    assert "# result=pass" in out


def test_ext_json(capsys):
    rc, out = run(capsys, ["ext", "--rank1", "--sigma", "-2", "--nmax", "4",
                           "--field", "Q", "--format", "json"])
    assert rc == 0
    obj = json.loads(out)
    assert obj["columns"] == ["s", "n", "rank"]
    assert obj["rows"] == [[0, 0, 1], [1, 1, 1]]
    assert obj["meta"]["schema"] == "ext"


def test_nichols_subcommand(capsys):
    rc, out = run(capsys, ["nichols", "--group", "S3", "--classes", "transpositions",
                           "--epsilon", "--nmax", "5", "--field", "Q"])
    assert rc == 0
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines == ["n,dim", "0,1", "1,3", "2,4", "3,3", "4,1", "5,0"]


def test_orbits_subcommand(capsys):
    rc, out = run(capsys, ["orbits", "--group", "S3", "--classes", "transpositions",
                           "--nmax", "2", "--components"])
    assert rc == 0
    assert "2,5,components,1" in out


def test_koszul_subcommand(capsys):
    rc, out = run(capsys, ["koszul", "--group", "S3", "--classes", "transpositions",
                           "--epsilon", "--module", "R", "--pmax", "4", "--qmax", "5",
                           "--field", "Q"])
    assert rc == 0
    assert "# identities_anticommute=True" in out
    assert "# identities_nullhomotopy=True" in out
    assert "0,0,1" in out


def test_malle_subcommand(capsys):
    rc, out = run(capsys, ["malle", "--group", "S3", "--classes", "all"])
    assert rc == 0
    assert "# a=1" in out and "# center_order=1" in out
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[1].endswith(",1") and lines[2].endswith(",2")


def test_bound_subcommand(capsys):
    rc, out = run(capsys, ["bound", "--betti", "1", "--q", "7", "--n", "3"])
    assert rc == 0
    assert "343,0,343,1,0" in out


def test_group_file_input(tmp_path, capsys):
    path = tmp_path / "grp.txt"
    path.write_text("degree 3\n(1 2)\n(1 2 3)\n")
    rc, out = run(capsys, ["malle", "--group-file", str(path), "--classes", "all"])
    assert rc == 0
    assert "# a=1" in out


def test_usage_errors(capsys):
    rc, _ = run(capsys, ["betti", "--group", "NOPE"])
    assert rc == 2
    rc, _ = run(capsys, ["betti", "--rank1", "--field", "six"])
    assert rc == 2
    rc, _ = run(capsys, ["koszul", "--group", "S3", "--classes", "transpositions"])
    assert rc == 2  # missing --epsilon


@pytest.mark.parametrize("argv", [
    ["betti", "--rank1", "--nmax", "3", "--field", "Q"],
    ["ext", "--group", "S3", "--classes", "transpositions", "--nmax", "3", "--field", "2"],
    ["verify", "--rank1", "--sigma", "-1", "--nmax", "3", "--field", "Q"],
    ["nichols", "--group", "S3", "--classes", "transpositions", "--epsilon",
     "--nmax", "4", "--field", "Q"],
    ["orbits", "--group", "S3", "--classes", "transpositions", "--nmax", "3"],
    ["koszul", "--group", "S3", "--classes", "transpositions", "--epsilon",
     "--pmax", "3", "--qmax", "4", "--field", "2"],
    ["malle", "--group", "D4", "--classes", "all"],
    ["bound", "--betti", "1,1,2", "--q", "4", "--n", "2"],
])
def test_determinism_all_subcommands(argv, capsys, tmp_path):
    rc1, out1 = run(capsys, argv)
    rc2, out2 = run(capsys, argv)
    assert rc1 == rc2 == 0
    assert out1 == out2
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(f1)]) == 0
    assert main(argv + ["--out", str(f2)]) == 0
    assert f1.read_bytes() == f2.read_bytes()
