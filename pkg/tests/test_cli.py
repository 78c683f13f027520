import json
import subprocess
import sys



RUN = [sys.executable, "-m", "leray.cli"]


def run_cli(tmp_path, command, doc, *extra):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(doc))
    return subprocess.run(RUN + [command, "--input", str(path)] + list(extra),
                          capture_output=True, text=True)


def test_cohomology_torus_constant(tmp_path):
    doc = {"complex": "torus2", "system": {"rank": 1, "constant": True}}
    res = run_cli(tmp_path, "cohomology", doc)
    assert res.returncode == 0
    assert "H^0      Z" in res.stdout
    assert "H^1      Z^2" in res.stdout
    assert "H^2      Z" in res.stdout


def test_cohomology_machine_output(tmp_path):
    doc = {"complex": "torus2",
           "system": {"rank": 2,
                      "monodromy": [[[1, 2], [0, 1]], [[1, 4], [0, 1]]]}}
    res = run_cli(tmp_path, "cohomology", doc, "--emit", "machine")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["command"] == "cohomology"
    assert [g["group"] for g in payload["groups"]] == \
        ["Z", "Z^2 (+) Z/2", "Z (+) Z/2"]


def test_byte_identical_reports(tmp_path):
    doc = {"complex": "genus(2)", "system": {"rank": 1, "constant": True}}
    first = run_cli(tmp_path, "cohomology", doc, "--emit", "machine")
    second = run_cli(tmp_path, "cohomology", doc, "--emit", "machine")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_group_cohomology(tmp_path):
    doc = {"system": {"rank": 2,
                      "monodromy": [[[1, 2], [0, 1]], [[1, 4], [0, 1]]]}}
    res = run_cli(tmp_path, "group-cohomology", doc, "--emit", "machine")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert [g["group"] for g in payload["groups"]] == \
        ["Z", "Z^2 (+) Z/2", "Z (+) Z/2"]


def test_spectral_command(tmp_path):
    doc = {"complex": "torus2",
           "system": {"even": {"rank": 1, "constant": True},
                      "odd": {"rank": 0, "constant": True}}}
    res = run_cli(tmp_path, "spectral", doc, "--emit", "machine")
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["d2"] == "assumed zero"
    assert [p["group"] for p in payload["k0"]["pieces"]] == ["Z", "0", "Z"]
    assert [p["group"] for p in payload["k1"]["pieces"]] == ["0", "Z^2", "0"]
    assert payload["k0"]["extension_ambiguous"] is True


def test_ncp_command_paper_report(tmp_path):
    doc = {"bundle": {"base": "torus2", "windings": [2, 4], "chern": [1, 0]}}
    res = run_cli(tmp_path, "ncp", doc)
    assert res.returncode == 0
    assert "k = gcd(windings) = 2" in res.stdout
    assert "d2[U_1] = 1 (mod 2)" in res.stdout
    assert "d2[U_2] = 0 (mod 2)" in res.stdout
    assert "verdict: not RKK-trivial" in res.stdout


def test_ncp_trivial_verdict(tmp_path):
    doc = {"bundle": {"base": "torus2", "windings": [0, 0], "chern": [0, 0]}}
    res = run_cli(tmp_path, "ncp", doc, "--emit", "machine")
    payload = json.loads(res.stdout)
    assert payload["verdict"]["trivial"] is True


def test_check_command_ok(tmp_path):
    doc = {"complex": "torus2",
           "system": {"rank": 2,
                      "monodromy": [[[1, 2], [0, 1]], [[1, 4], [0, 1]]]}}
    res = run_cli(tmp_path, "check", doc)
    assert res.returncode == 0
    assert "result: ok" in res.stdout


def test_check_command_detects_nonflat(tmp_path):
    # hand-built transports with one perturbed edge: flatness violated
    doc = {"complex": {"vertices": 3, "simplices": [[0, 1, 2]]},
           "system": {"rank": 1,
                      "transports": {"0-1": [[1]], "1-2": [[1]],
                                     "0-2": [[-1]]}}}
    res = run_cli(tmp_path, "check", doc)
    assert res.returncode == 1
    assert "violations" in res.stdout


def test_malformed_matrix_exit_2(tmp_path):
    doc = {"complex": "torus2",
           "system": {"rank": 2, "monodromy": [[[1, 2], [0]], [[1, 0], [0, 1]]]}}
    res = run_cli(tmp_path, "cohomology", doc)
    assert res.returncode == 2
    assert "input error" in res.stderr


def test_unknown_builtin_exit_2(tmp_path):
    doc = {"complex": "klein", "system": {"rank": 1, "constant": True}}
    res = run_cli(tmp_path, "cohomology", doc)
    assert res.returncode == 2


def test_parse_error_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"complex": torus2}')
    res = subprocess.run(RUN + ["cohomology", "--input", str(path)],
                         capture_output=True, text=True)
    assert res.returncode == 2
    assert "line 1" in res.stderr


def test_nonflat_cohomology_exit_1(tmp_path):
    doc = {"complex": {"vertices": 3, "simplices": [[0, 1, 2]]},
           "system": {"rank": 1,
                      "transports": {"0-1": [[1]], "1-2": [[1]],
                                     "0-2": [[-1]]}}}
    res = run_cli(tmp_path, "cohomology", doc)
    assert res.returncode == 1
    assert "computation error" in res.stderr


def test_command_field_mismatch(tmp_path):
    doc = {"command": "ncp", "complex": "torus2",
           "system": {"rank": 1, "constant": True}}
    res = run_cli(tmp_path, "cohomology", doc)
    assert res.returncode == 2


def test_convention_flag(tmp_path):
    doc = {"complex": "circle(4)",
           "system": {"rank": 2, "monodromy": [[[1, 1], [0, 1]]]}}
    out = {}
    for conv in ("classical", "e1"):
        res = run_cli(tmp_path, "cohomology", doc,
                      "--convention", conv, "--emit", "machine")
        assert res.returncode == 0
        out[conv] = [g["group"] for g in json.loads(res.stdout)["groups"]]
    assert out["classical"] == out["e1"]


def test_jobs_flag_accepted(tmp_path):
    doc = {"complex": "torus2", "system": {"rank": 1, "constant": True}}
    res1 = run_cli(tmp_path, "cohomology", doc, "--jobs", "4")
    res2 = run_cli(tmp_path, "cohomology", doc)
    assert res1.returncode == 0
    assert res1.stdout == res2.stdout
    res = run_cli(tmp_path, "cohomology", doc, "--jobs", "0")
    assert res.returncode == 2
