import io
import json
import re
import subprocess
import sys

import pytest

from matideals.cli import run
from matideals.gf import field_from_order
from matideals.serialize import mat_from_json, mat_to_json, parse_mat


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_count_text():
    code, out = call("count", "--n", "2", "--q", "2")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:]]
    assert [int(r[1]) for r in rows] == [1, 3, 1]
    assert [int(r[2]) for r in rows] == [1, 2, 1]
    assert [int(r[3]) for r in rows] == [1, 9, 6]


def test_count_json_and_csv():
    code, out = call("count", "--n", "3", "--q", "3", "--format", "json")
    obj = json.loads(out)
    assert obj["ideals"] == [1, 13, 13, 1] and sum(obj["rank_matrices"]) == 3 ** 9
    code, out = call("count", "--n", "2", "--format", "csv")
    assert out.splitlines()[0] == "k,ideals,generators_per_ideal,rank_matrices,canonical_family_size"


def test_generators():
    code, out = call("generators", "--n", "2", "--q", "2", "--mat", "1,0;0,0")
    assert (code, out) == (0, "1,0;0,0\n1,0;1,0\n")


def test_generators_rejects_non_idempotent(capsys):
    code, _ = call("generators", "--mat", "0,1;0,0")
    assert code == 1
    assert "not idempotent" in capsys.readouterr().err


def test_same_ideal_and_pivots():
    code, out = call("same-ideal", "--mat", "1,0;0,0", "--mat", "0,1;0,0")
    assert code == 0 and out.startswith("same_left_ideal false")
    code, out = call("pivots", "--mat", "1,1;0,0")
    assert (code, out) == (0, "[1]\n")
    code, out = call("pivots", "--mat", "1,0;1,0", "--format", "json")
    assert code == 0 and json.loads(out)["violated_condition"] == "ii"


def test_subspaces_and_idempotents():
    code, out = call("subspaces", "--n", "4", "--k", "2")
    assert code == 0 and len(out.splitlines()) == 35
    code, out = call("idempotents", "--n", "4", "--k", "3", "--format", "json")
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 15 and lines[0]["pivotal_positions"] == [1, 2, 3]


def test_verify_exit_codes(monkeypatch):
    code, out = call("verify", "--n", "2", "--q", "3")
    assert code == 0 and all(line.startswith("PASS") for line in out.splitlines())

    import matideals.cli as cli
    from matideals.oracle import Verdict
    monkeypatch.setattr(cli, "cross_check", lambda report: [Verdict("forced", False)])
    code, out = call("verify", "--n", "1")
    assert code == 2 and out.startswith("FAIL forced")


def test_lattice_json():
    code, out = call("lattice", "--n", "2", "--q", "3")
    obj = json.loads(out)
    assert obj["per_rank_ideal_counts"] == [1, 4, 1]
    assert len(obj["containment_edges"]) == 8


@pytest.mark.parametrize("argv", [
    ["count"],
    ["count", "--n", "2", "--q", "6"],
    ["count", "--n", "2", "--format", "dot"],
    ["lattice", "--n", "5", "--q", "2"],
    ["generators", "--mat", "1,x;0,0"],
    ["generators", "--mat", "1,0;0,0", "--mat", "1,0;0,0"],
    ["generators", "--n", "3", "--mat", "1,0;0,0"],
    ["subspaces", "--n", "2", "--k", "5"],
    ["count", "--n", "2", "--q", "4", "--modulus", "1,0,1"],
    ["frobnicate"],
])
def test_usage_errors(argv):
    assert call(*argv)[0] == 1


def test_oracle_bound_flag():
    assert call("verify", "--n", "2", "--q", "3", "--oracle-bound", "80")[0] == 1
    assert call("verify", "--n", "2", "--q", "3", "--oracle-bound", "81")[0] == 0


def test_json_file_input(tmp_path):
    F = field_from_order(3)
    path = tmp_path / "s.json"
    path.write_text(json.dumps(mat_to_json(parse_mat("1,0;0,0", F))))
    code, out = call("generators", "--q", "3", "--in", str(path))
    assert code == 0 and len(out.splitlines()) == 3
    code, _ = call("generators", "--q", "2", "--in", str(path))
    assert code == 1


def test_printed_matrices_reparse():
    F = field_from_order(3)
    outputs = [call("generators", "--q", "3", "--mat", "1,0,0;0,1,0;0,0,0")[1],
               call("idempotents", "--n", "3", "--k", "2", "--q", "3")[1]]
    pattern = re.compile(r"\d+(?:,\d+)*(?:;\d+(?:,\d+)*)+")
    found = [s for out in outputs for s in pattern.findall(out)]
    assert len(found) > 13
    for s in found:
        M = parse_mat(s, F)
        assert str(M) == s
        assert call("pivots", "--q", "3", "--mat", s)[0] == 0
    code, out = call("generators", "--q", "3", "--mat", "1,0;0,0", "--format", "json")
    for line in out.splitlines():
        assert mat_from_json(json.loads(line)) in {parse_mat(x, F) for x in ("1,0;0,0", "1,0;1,0", "1,0;2,0")}


def test_deterministic_subprocess():
    argv = [sys.executable, "-m", "matideals", "lattice", "--n", "2", "--q", "3", "--format", "dot"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"digraph")
