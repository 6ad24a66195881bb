import json
import subprocess
import sys

import pytest

from paretocert import serialize as sz
from paretocert.cli import main
from paretocert.report import render_report
from paretocert.pareto import Certificate, Classification, bargaining_plan, verify_partition_certificate

U2_JSON = {"dim": 2, "vertices": [[0, 0], [1, 0], [1, 1], [0, 2]]}
CONE5_JSON = {"dim": 3, "vertices": [[1, 0, 0], [-1, 0, 0], [0, -1, 0], [0, 1, 0], [0, 1, 1]]}
ECON1_JSON = {"goods": 2, "agents": [
    {"pieces": [{"c": [2, 1], "d": "0"}], "endowment": [1, 0]},
    {"pieces": [{"c": [1, 2], "d": "0"}], "endowment": [0, 1]},
]}
SWAPPED_JSON = {"goods": 2, "agents": [
    {"pieces": [{"c": [2, 1], "d": "0"}], "endowment": [0, 1]},
    {"pieces": [{"c": [1, 2], "d": "0"}], "endowment": [1, 0]},
]}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, data in [("u2", U2_JSON), ("cone5", CONE5_JSON), ("econ1", ECON1_JSON), ("swapped", SWAPPED_JSON)]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(data))
        out[name] = str(p)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    out["bad"] = str(bad)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


class TestVerbs:
    def test_classify(self, files, capsys):
        code, out, _ = run(capsys, "classify", "--set", files["u2"], "--point", "[1,0]")
        d = json.loads(out)
        assert code == 0
        assert (d["pareto"], d["plus"], d["plus_plus"], d["dominator"]) == (False, True, False, ["1", "1"])

    def test_classify_cone5(self, files, capsys):
        code, out, _ = run(capsys, "classify", "--set", files["cone5"], "--point", "[0,1,0]")
        assert json.loads(out)["dominator"] == ["0", "1", "1"]

    def test_certify_flag(self, files, capsys):
        code, out, _ = run(capsys, "certify", "--set", files["u2"], "--point", "[1,1]", "--strategy", "flag")
        d = json.loads(out)
        assert code == 0 and d["T"] == 2 and d["normals"] == [["1", "0"], ["3", "1"]]
        assert d["verified"] is True

    def test_certify_chain(self, files, capsys):
        code, out, _ = run(capsys, "certify", "--set", files["u2"], "--point", "[1,1]",
                           "--strategy", "chain", "--chain", "[[1],[1,2]]")
        assert code == 0 and json.loads(out)["T"] == 2

    def test_certify_not_pareto(self, files, capsys):
        code, out, _ = run(capsys, "certify", "--set", files["u2"], "--point", "[1,0]")
        assert code == 1 and json.loads(out)["error"] == "NotMaximalError"

    def test_certify_partition(self, files, capsys):
        code, out, _ = run(capsys, "certify", "--set", files["u2"], "--point", "[1,1]",
                           "--strategy", "partition", "--bound-t", "2")
        assert code == 0 and json.loads(out)["normals"] == [["1", "0"], ["0", "1"]]

    def test_verify_round_trip(self, files, capsys, tmp_path):
        _, out, _ = run(capsys, "certify", "--set", files["u2"], "--point", "[1,1]", "--strategy", "flag")
        cert = tmp_path / "cert.json"
        cert.write_text(out)
        code, out2, _ = run(capsys, "verify", "--set", files["u2"], "--point", "[1,1]", "--certificate", str(cert))
        assert code == 0 and json.loads(out2)["normals"] == json.loads(out)["normals"]

    def test_verify_rejects(self, files, capsys):
        code, out, _ = run(capsys, "verify", "--set", files["u2"], "--point", "[1,0]",
                           "--certificate", '{"normals": [[1,0],[1,1]]}')
        d = json.loads(out)
        assert code == 1 and d["step"] == 2

    def test_dc(self, files, capsys):
        code, out, _ = run(capsys, "dc", "--set", files["u2"])
        h = sz.hrep_from_json(json.loads(out))
        assert code == 0 and len(h.ineqs) == 3

    def test_dc_economy(self, files, capsys):
        code, out, _ = run(capsys, "dc", "--economy", files["econ1"])
        assert code == 0 and len(json.loads(out)["ineqs"]) == 4

    def test_welfare(self, files, capsys):
        code, out, _ = run(capsys, "welfare", "--set", files["u2"], "--point", "[1,1]",
                           "--eval", "[0,2]", "--eval", "[1,0]")
        d = json.loads(out)
        assert code == 0 and [v["value"] for v in d["values"]] == ["-2", "-1"]

    def test_bargain(self, files, capsys):
        code, out, _ = run(capsys, "bargain", "--set", files["u2"], "--point", "[1,1]")
        assert code == 0 and json.loads(out)["verified"] is True

    def test_swt(self, files, capsys):
        code, out, _ = run(capsys, "swt", "--economy", files["econ1"])
        d = json.loads(out)
        assert code == 0 and d["prices"] == ["1", "1"] and d["verified"] is True

    def test_swt_swapped(self, files, capsys):
        code, out, _ = run(capsys, "swt", "--economy", files["swapped"])
        d = json.loads(out)
        assert code == 1 and d["dominator"] == ["2", "2"]

    def test_faces(self, files, capsys):
        code, out, _ = run(capsys, "faces", "--set", files["cone5"])
        assert code == 0 and json.loads(out)["count"] == 19

    def test_output_file(self, files, capsys, tmp_path):
        target = tmp_path / "o.json"
        code, out, _ = run(capsys, "swt", "--economy", files["econ1"], "--output", str(target))
        assert code == 0 and out == "" and json.loads(target.read_text())["verified"]


class TestMalformed:
    @pytest.mark.parametrize("argv", [
        ["classify", "--set", "BAD", "--point", "[1,1]"],
        ["classify", "--set", "U2", "--point", "[1]"],
        ["classify", "--set", "U2", "--point", "[NaN, 1]"],
        ["classify", "--set", "U2", "--point", '["a", 1]'],
        ["classify", "--set", "/nonexistent/file.json", "--point", "[1,1]"],
        ["swt", "--economy", '{"goods": 2, "agents": []}'],
        ["certify", "--set", "U2", "--point", "[1,1]", "--strategy", "chain"],
        ["dc"],
    ])
    def test_exit_two(self, files, capsys, argv):
        argv = [files["bad"] if a == "BAD" else files["u2"] if a == "U2" else a for a in argv]
        code, out, err = run(capsys, *argv)
        assert code == 2 and out == "" and "error" in json.loads(err)

    def test_decimals_are_exact(self, files, capsys):
        code, out, _ = run(capsys, "classify", "--set", files["u2"], "--point", "[0.5, 1.5]")
        assert code == 0 and json.loads(out)["pareto"] is True


class TestReport:
    def test_certificate_lines(self, files, capsys):
        _, out, _ = run(capsys, "certify", "--set", files["u2"], "--point", "[1,1]", "--strategy", "flag", "--report")
        lines = [l for l in out.splitlines() if l.startswith("step")]
        assert lines[0].startswith("step 1: normal=(1,0)")
        assert lines[1].startswith("step 2: normal=(3,1) lambda=2")

    def test_not_in_set(self):
        assert render_report(Classification(False)) == "point not in set\n"

    def test_plan(self, U2):
        cert = verify_partition_certificate(U2, (1, 1), [(1, 0), (0, 1)])
        text = render_report(bargaining_plan(cert, (1, 1)))
        assert "round 1: agents {1}, power 1" in text

    def test_stable(self, files, capsys):
        a = run(capsys, "faces", "--set", files["u2"], "--report")[1]
        b = run(capsys, "faces", "--set", files["u2"], "--report")[1]
        assert a == b and a


def test_module_entry_point(files):
    p = subprocess.run([sys.executable, "-m", "paretocert", "classify", "--set", files["u2"], "--point", "[1,1]"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["plus_plus"] is True


def test_emitted_economy_reads_back(ECON1):
    assert sz.economy_from_json(json.loads(sz.dumps(sz.economy_to_json(ECON1)))) == ECON1


def test_emitted_certificate_reads_back(U2):
    c = Certificate(((1, 0), (3, 1)), ())
    d = json.loads(sz.dumps(sz.certificate_to_json(c)))
    assert sz.normals_from_json(d) == [(1, 0), (3, 1)]
