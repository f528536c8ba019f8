import json

import pytest
from click.testing import CliRunner

from malcev.pi.cli.main import cli


@pytest.fixture
def run(tmp_path):
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(cli, ["--cache-dir", str(tmp_path), *args], env=env or {})

    return invoke


def test_dim_table(run):
    result = run("dim", "as2", "--multilinear", "1..5")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].split() == ["n", "multidegree", "free", "rank", "dim"]
    assert [int(line.split()[-1]) for line in lines[1:]] == [1, 2, 5, 9, 9]


def test_dim_json(run):
    result = run("dim", "as3", "--multidegree", "1:2,2:1", "--format", "json")
    assert result.exit_code == 0
    record = json.loads(result.output)
    assert record["command"] == "dim"
    assert record["variety"] == "AS3"
    row, = record["result"]
    assert row["free"] == 3
    assert row["dim"] == row["free"] - row["rank"]


def test_dim_needs_one_selector(run):
    assert run("dim", "as2").exit_code == 2
    assert run("dim", "as2", "--multilinear", "3..1").exit_code == 2


def test_degree_limit_exit_code(run):
    result = run("dim", "as2", "--multilinear", "5", env={"MALCEV_MAX_DEGREE": "4"})
    assert result.exit_code == 4
    assert "exceeds the configured limit 4" in result.output


def test_nf(run):
    result = run("nf", "as3", "x2*x1*x3*x4")
    assert result.exit_code == 0
    assert result.output.strip() == "1/8 {{{x1,x2},x3},x4}"


def test_nf_paths_agree(run):
    structural = run("nf", "as2", "a*b*c*d*e + 2*b*c*a*d*e - e*d", "--format", "json")
    oracle = run("nf", "as2", "a*b*c*d*e + 2*b*c*a*d*e - e*d", "--via", "oracle", "--format", "json")
    assert json.loads(structural.output)["result"] == json.loads(oracle.output)["result"]


def test_nf_custom_variety(run):
    result = run("nf", "custom=a*b*c - c*b*a", "c*b*a")
    assert result.exit_code == 0
    assert result.output.strip() == "x1*x2*x3"


def test_check_identity(run):
    result = run("check", "as2", "d*c*a*b - d*c*b*a - c*d*a*b + c*d*b*a - a*d*c*b + a*c*d*b")
    assert result.exit_code == 0
    assert result.output.strip() == "identity"


def test_check_certificate_json(run):
    result = run("check", "as3", "a*b*c + b*a*c - b*c*a - c*b*a", "--certificate", "--format", "json")
    assert result.exit_code == 0
    payload = json.loads(result.output)["result"]
    assert payload["identity"] is True
    assert payload["failing"] == []
    assert list(payload["certificate"]) == ["1:1,2:1,3:1"]


def test_check_non_identity(run):
    result = run("check", "as2", "a*b - b*a", "--certificate")
    assert result.exit_code == 3
    assert result.output.splitlines()[0] == "not an identity"
    assert "1:1,2:1: no combination" in result.output


def test_input_errors(run):
    assert run("check", "as4", "a*b").exit_code == 2
    result = run("nf", "as2", "a +")
    assert result.exit_code == 2
    assert "position 3" in result.output
    for bad in ("foo", "1:0", "1:x"):
        assert run("dim", "as2", "--multidegree", bad).exit_code == 2


def test_sym(run):
    result = run("sym", "5", "--verify-family", "--fixed-dim", "--identity-check")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].startswith("p5 = ")
    assert "invariance: PASS" in lines
    assert "fixed-subspace dimension: 1" in lines
    assert "6*Sum = 4*p5: PASS" in lines


def test_sym_small_arity(run):
    result = run("sym", "3", "--verify-family")
    assert result.exit_code == 0
    assert "invariance: PASS" in result.output
    assert run("sym", "0").exit_code == 2


def test_graph(run):
    result = run("graph", "5")
    assert result.exit_code == 0
    assert result.output.startswith("// strongly connected without the special edge: yes\n")
    assert run("graph", "4").exit_code == 2


def test_cache_commands(run, tmp_path):
    stored = run("cache", "store", "as3", "--generators", "2", "--max-total", "3")
    assert stored.exit_code == 0
    assert stored.output.startswith("stored ")
    assert (tmp_path / "as3.cache").exists()

    loaded = run("cache", "load", "as3")
    assert loaded.output.startswith("loaded ")
    shown = run("cache", "show", "as3")
    assert shown.output.splitlines()[0] == "# malcev-cache v1"
    assert run("cache", "load", "as2").output.startswith("cache miss: ")


def test_corrupt_cache_load(run, tmp_path):
    (tmp_path / "as3.cache").write_text("not a cache\n")
    result = run("cache", "load", "as3")
    assert result.exit_code == 2
    assert "corrupt cache record" in result.output


def test_suite(run):
    result = run("suite", "as2", "--mutations")
    assert result.exit_code == 0
    assert "PASS as2-defining" in result.output
    assert "PASS as2-defining~mutant" in result.output
