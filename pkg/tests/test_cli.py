import json

import pytest

from defectlab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "--no-timestamp")
    return code, json.loads(out)


def test_scenarios_are_bundled():
    assert cli.scenario_names() == ["examp1", "examp2-cut", "examp3-cut", "examp4", "exampcut"]


@pytest.mark.parametrize("name", ["examp1", "examp2-cut", "examp3-cut", "exampcut"])
def test_example_runs_green(capsys, name):
    code, rep = report(capsys, "example", name)
    assert code == 0 and rep["ok"] and rep["schema"] == "defectlab/1"
    assert "timestamp" not in rep
    assert all(c["ok"] for r in rep["runs"] for c in r["checks"])


def test_example_all_parallel_is_deterministic(capsys):
    code, serial = report(capsys, "example", "--all")
    code2, parallel = report(capsys, "example", "--all", "--jobs", "3")
    assert code == code2 == 0
    assert serial == parallel
    assert [s["scenario"] for s in serial["scenarios"]] == cli.scenario_names()


def test_example_single_prime(capsys):
    code, rep = report(capsys, "example", "examp1", "--p", "3")
    assert code == 0 and [r["p"] for r in rep["runs"]] == [3]


def test_timestamp_present_by_default(capsys):
    code, out, _ = run(capsys, "cut", "(0,-)", "--json")
    assert "timestamp" in json.loads(out)


def test_text_output(capsys):
    code, out, _ = run(capsys, "cut", "(0,-) + (0,+)")
    assert code == 0 and out.strip() == "(0,-)"
    code, out, _ = run(capsys, "example", "--list")
    assert out.split() == cli.scenario_names()


def test_cut_comparison(capsys):
    code, rep = report(capsys, "cut", "([0,0],H1,-) + ([0,0],H1,-) < ([0,0],H1,-)", "--group", "Z,Q")
    assert code == 0 and rep["result"] is True and rep["order"] == "<"


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "cut", "(0,-) +", "--json", "--no-timestamp")
    rep = json.loads(out)
    assert code == 2 and rep["error"]["code"] == "parse"
    assert rep["error"]["column"] == 8
    assert "column 8" in err


def test_classify_toml_and_json(capsys, tmp_path):
    toml = tmp_path / "k.toml"
    toml.write_text('p = 3\na = "1/t"\nbudget = 10\n[field]\nkind = "perfect"\n[expected]\nkind = "DEFECT"\ndistance = "(0,-)"\n')
    code, rep = report(capsys, "classify", str(toml))
    assert code == 0 and rep["classification"]["dependence"] == "INDEPENDENT"
    js = tmp_path / "k.json"
    js.write_text(json.dumps({"p": 2, "a": [{"exp": "-1", "coef": "1"}], "field": {"kind": "rational"},
                              "expected": {"kind": "DEFECT"}}))
    code, rep = report(capsys, "classify", str(js))
    assert code == 1 and rep["classification"]["kind"] == "RAMIFIED"
    assert rep["checks"][0]["ok"] is False


def test_classify_bad_input(capsys, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("p = \n")
    assert run(capsys, "classify", str(bad))[0] == 2
    assert run(capsys, "classify", str(tmp_path / "missing.json"))[0] == 2
    nofield = tmp_path / "x.json"
    nofield.write_text('{"p": 2}')
    assert run(capsys, "classify", str(nofield))[0] == 2


def test_precision_exit_code(capsys, tmp_path):
    f = tmp_path / "k.json"
    f.write_text(json.dumps({"p": 2, "a": {"terms": [], "precision": "-1"}, "field": {"kind": "perfect"}}))
    assert run(capsys, "classify", str(f))[0] == 3


def test_deform_table(capsys):
    code, rep = report(capsys, "deform", "--p", "2", "--vb=-1,0,1,2")
    assert code == 0
    assert [r["condition_holds"] for r in rep["rows"]] == [False, False, True, True]
    assert [r["similarity_verified"] for r in rep["rows"]] == [False, False, True, True]


def test_probe_forms(capsys):
    code, rep = report(capsys, "probe", "1/t - X^p", "--p", "3", "--depth", "4")
    assert code == 0 and rep["outcome"] == "INCREASING_WITNESS"
    assert rep["values"] == ["-1", "-1/3", "-1/9", "-1/27", "-1/81"]
    code, rep = report(capsys, "probe", "X^p - X - t", "--field", "rational", "--budget", "3")
    assert rep["values"] == ["1", "2", "4", "8"]
    code, _, _ = run(capsys, "probe", "X^3 + X", "--p", "2")
    assert code == 2


def test_unknown_scenario(capsys):
    assert run(capsys, "example", "nope")[0] == 2
    assert run(capsys, "example")[0] == 2


def test_classify_trivial_split(capsys, tmp_path):
    f = tmp_path / "t.toml"
    f.write_text('a = "t"\n[expected]\nkind = "SPLIT_HENSELIAN"\n')
    code, out, _ = run(capsys, "classify", str(f))
    assert code == 0 and out.strip() == "SPLIT_HENSELIAN"


def test_reports_are_byte_identical(capsys):
    first = run(capsys, "example", "examp4", "--json", "--no-timestamp")
    second = run(capsys, "example", "examp4", "--json", "--no-timestamp")
    assert first == second


def test_mismatch_prints_diff(capsys, monkeypatch):
    real = cli.load_scenario

    def tampered(name):
        sc = real(name)
        sc["runs"]["2"]["expected"]["distance"] = "(1,-)"
        return sc

    monkeypatch.setattr(cli, "load_scenario", tampered)
    code, out, _ = run(capsys, "example", "examp1", "--p", "2")
    assert code == 1
    assert "FAIL distance" in out and "expected (1,-)" in out and "actual   (0,-)" in out
