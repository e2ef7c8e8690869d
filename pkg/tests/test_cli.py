from __future__ import annotations

import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from neumaier.canon import automorphism_group, canonical_graph
from neumaier.cli import parse_duration, run
from neumaier.constructions import gamma25
from neumaier.graph import decode_graph6, encode_graph6
from neumaier.ilp import build_model
from neumaier.ilp.designs import partition_fixing
from neumaier.ilp.export import export_model
from neumaier.params import ParameterSet, check_all, complement_parameters, enumerate_admissible
from neumaier.search import enumerate_by_degree_sequence

from conftest import G25_ID

DESIGNS = Path(__file__).resolve().parent.parent / "data" / "designs"


def call(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_duration():
    assert parse_duration("90") == 90
    assert parse_duration("90s") == 90
    assert parse_duration("30m") == 1800
    assert parse_duration("2h") == 7200
    assert parse_duration("1h30m") == 5400
    with pytest.raises(Exception):
        parse_duration("soon")


def test_params_enumerate_matches_library(capsys):
    code, out, _ = call(capsys, "params", "enumerate", "--vmax", "30")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t") == ["v", "k", "lambda", "e", "s", "status"]
    rows = [tuple(int(x) for x in ln.split("\t")[:5]) for ln in lines[1:]]
    assert rows == [p.astuple() for p in enumerate_admissible(30)]
    assert all(ln.endswith("\tadmissible") for ln in lines[1:])


def test_params_check_report(capsys):
    code, out, _ = call(capsys, "params", "check", "6,4,1,1,3", "--report")
    assert code == 0
    lines = out.splitlines()
    assert lines[1].endswith("rejected")
    ids = [ln.split("\t")[1] for ln in lines[2:]]
    assert ids == check_all(ParameterSet.parse("6,4,1,1,3")).ids()


def test_params_check_needs_tuple(capsys):
    code, _, err = call(capsys, "params", "check")
    assert code == 2 and "tuple" in err


def test_verify_published_identifier(capsys, monkeypatch, tmp_path):
    f = tmp_path / "g.g6"
    f.write_text(f"# comment\n{G25_ID}\n")
    code, out, _ = call(capsys, "verify", str(f))
    assert code == 0
    assert out.strip() == "StrictlyNeumaier 25 12 5 2 5"
    code, out, _ = call(capsys, "verify", stdin=G25_ID + "\n", monkeypatch=monkeypatch)
    assert out.strip() == "StrictlyNeumaier 25 12 5 2 5"


def test_verify_bad_line_reports_number(capsys, tmp_path):
    f = tmp_path / "g.g6"
    f.write_text(f"{G25_ID}\n!!!bad\n")
    code, _, err = call(capsys, "verify", str(f))
    assert code == 2
    assert "line 2" in err


def test_construct_matches_library(capsys, tmp_path):
    code, out, _ = call(capsys, "construct", "gamma25")
    assert code == 0 and out.strip() == encode_graph6(gamma25())
    code, out, _ = call(capsys, "construct", "gamma25", "--edges")
    edges = [tuple(int(x) - 1 for x in ln.split()) for ln in out.splitlines()]
    assert edges == gamma25().edges()
    dest = tmp_path / "ls.g6"
    code, _, _ = call(capsys, "construct", "ls", "--order", "4", "-o", str(dest))
    assert code == 0 and decode_graph6(dest.read_text().strip()).n == 16


def test_construct_ls_needs_source(capsys):
    code, _, err = call(capsys, "construct", "ls")
    assert code == 2 and "--order" in err


def test_canon_matches_library(capsys, tmp_path):
    f = tmp_path / "g.g6"
    f.write_text(G25_ID + "\n")
    code, out, _ = call(capsys, "canon", str(f))
    assert code == 0
    g6, order, orbits = out.splitlines()[1].split("\t")
    g = decode_graph6(G25_ID)
    assert g6 == encode_graph6(canonical_graph(g))
    assert int(order) == automorphism_group(g).order == 18
    assert len(orbits.split(" | ")) == 5


def test_search_degseq(capsys):
    code, out, _ = call(capsys, "search", "degseq", "1,3,3,3,3,5")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "#count\t1"
    assert lines[0] == encode_graph6(enumerate_by_degree_sequence([1, 3, 3, 3, 3, 5])[0])


def test_search_degseq_odd_sum(capsys):
    code, _, _ = call(capsys, "search", "degseq", "1,1,1")
    assert code == 2


def test_search_unique_with_footer(capsys):
    code, out, _ = call(capsys, "search", "unique", "--params", "16,9,4,2,4")
    assert code == 0
    lines = out.splitlines()
    assert decode_graph6(lines[0]).n == 16
    assert lines[1].startswith("#nodes_expanded")
    assert len(lines) == 3


def test_search_unique_budget_is_inconclusive(capsys, tmp_path):
    ck = tmp_path / "ck.json"
    code, out, err = call(capsys, "search", "unique", "--params", "16,9,4,2,4", "--budget", "0",
                          "--checkpoint", str(ck))
    assert code == 1
    assert ck.exists()
    code, out, _ = call(capsys, "search", "unique", "--params", "16,9,4,2,4", "--resume", str(ck))
    assert code == 0 and decode_graph6(out.splitlines()[0]).n == 16


def test_encode_ilp_matches_library(capsys):
    code, out, _ = call(capsys, "encode-ilp", "--params", "25,16,9,3,5", "--partition",
                        "--group-adjacency", "--branch", "1,6", "--sense", "fewer")
    assert code == 0
    cp = complement_parameters(ParameterSet.parse("25,16,9,3,5"))
    from neumaier.ilp import BranchSense
    m = build_model(cp, partition_fixing(cp, True), (0, 5), BranchSense.FewerThanLambda)
    assert out == export_model(m, "lp")


def test_encode_ilp_bad_design(capsys, tmp_path):
    f = tmp_path / "d.txt"
    f.write_text("1 2 3\n1 two 4\n")
    code, _, err = call(capsys, "encode-ilp", "--params", "28,18,11,4,7", "--design", str(f))
    assert code == 2 and "line 2" in err


def test_solve_sixteen_partition(capsys):
    code, out, _ = call(capsys, "solve", "--params", "16,9,4,2,4", "--partition", "--budget", "60")
    assert code == 0
    outcome, g6 = out.splitlines()[1].split("\t")[:2]
    assert outcome == "Feasible"
    from neumaier.graph import classify, complement
    v = classify(complement(decode_graph6(g6)))
    assert v.parameters == (16, 9, 4, 2, 4)


def test_campaign_cli(capsys):
    code, out, _ = call(capsys, "campaign", "--params", "35,22,12,3,5", "--no-times")
    assert code == 0
    last = out.splitlines()[-1].split("\t")
    assert last[:3] == ["verdict", "Nonexistent", "(35,22,12;3,5)"]
    assert "seconds" not in out.splitlines()[0]


def test_campaign_export_only_cli(capsys, tmp_path):
    code, out, _ = call(capsys, "campaign", "--params", "28,18,11,4,7", "--designs",
                        str(DESIGNS / "2-7-3-3"), "--assume-no-srg", "--export-only", str(tmp_path))
    assert code == 0
    assert len(list(tmp_path.glob("*.lp"))) == 10


def test_campaign_missing_designs(capsys):
    code, _, err = call(capsys, "campaign", "--params", "28,18,11,4,7")
    assert code == 2 and "design" in err


@pytest.mark.parametrize("argv", [["params", "enumerate", "--vmx", "10"], ["bogus"],
                                  ["search", "unique", "--params", "1,2"],
                                  ["construct", "gamma25", "--graph6", "--edges"]])
def test_usage_errors_exit_two(capsys, argv):
    assert run(argv) == 2


def test_inadmissible_search_exit_two(capsys):
    code, _, err = call(capsys, "search", "unique", "--params", "10,6,3,1,3")
    assert code == 2 and err


def test_console_script():
    exe = shutil.which("neumaier")
    cmd = [exe] if exe else [sys.executable, "-m", "neumaier.cli"]
    res = subprocess.run(cmd + ["params", "check", "16,9,4,2,4"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[1] == "16\t9\t4\t2\t4\tadmissible"
