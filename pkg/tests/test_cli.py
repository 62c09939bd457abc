import json
import subprocess
import sys

import pytest

from faadibruno.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert out.count("\n") == 1
    return code, json.loads(out), err


def test_partitions_text(capsys):
    code, out, _ = run(capsys, "partitions", "3")
    lines = out.splitlines()
    assert code == 0
    assert lines[:-1] == ["{1,2,3}", "{1,2}{3}", "{1,3}{2}", "{1}{2,3}", "{1}{2}{3}"]
    assert lines[-1] == "count=5 bell=5 OK"


def test_partitions_zero(capsys):
    code, out, _ = run(capsys, "partitions", "0")
    assert code == 0 and out.splitlines() == ["{}", "count=1 bell=1 OK"]


def test_partitions_json(capsys):
    code, rec, _ = run_json(capsys, "partitions", "2")
    assert code == 0
    assert rec["command"] == "partitions"
    assert rec["result"]["partitions"] == [{"n": 2, "blocks": [[1, 2]]}, {"n": 2, "blocks": [[1], [2]]}]
    assert rec["result"]["count"] == rec["result"]["bell"] == 2


def test_partitions_cap(capsys):
    code, out, err = run(capsys, "partitions", "40")
    assert code == 2 and out == "" and "cap" in err


def test_profiles(capsys):
    code, out, _ = run(capsys, "profiles", "3")
    lines = out.splitlines()
    assert code == 0
    assert [line.rsplit("count=", 1)[1] for line in lines[:-1]] == ["1", "3", "1"]
    assert lines[-1].startswith("profiles=3 total=5 bell=5 OK")
    code, rec, _ = run_json(capsys, "profiles", "1")
    assert rec["result"]["profiles"] == [{"k": [1], "parts": [1], "count": 1}]
    code, rec, _ = run_json(capsys, "profiles", "6")
    assert sum(r["count"] for r in rec["result"]["profiles"]) == rec["result"]["bell"] == 203


def test_derive_all_agree(capsys):
    code, out, _ = run(capsys, "derive", "--f", "x^2", "--g", "x+1", "--at", "0", "--n", "2", "--method", "all")
    assert code == 0
    assert out.splitlines() == ["combinatorial: 2", "closed: 2", "oracle: 2", "agree (exact)"]


def test_derive_identity_outer(capsys):
    code, out, _ = run(capsys, "derive", "--f", "x", "--g", "x^3", "--at", "2", "--n", "3")
    assert code == 0 and out.strip() == "6"


def test_derive_rational_output(capsys):
    code, rec, _ = run_json(capsys, "derive", "--f", "1/x", "--g", "x^2+1", "--at", "1/3", "--n", "2", "--method", "all")
    assert code == 0 and rec["result"]["agree"]
    # (1/(x^2+1))'' = (6x^2 - 2)/(x^2 + 1)^3, which is -243/250 at x = 1/3
    assert rec["result"]["value"] == "-243/250"
    assert rec["inputs"]["at"] == "1/3"


def test_derive_float_transcendental(capsys):
    code, rec, _ = run_json(
        capsys, "derive", "--f", "exp(x)", "--g", "sin(x)", "--at", "0", "--n", "4", "--kind", "float", "--method", "all"
    )
    assert code == 0 and rec["result"]["agree"]
    assert rec["result"]["value"] == pytest.approx(-3.0, rel=1e-12)


def test_derive_float_prints_17_digits(capsys):
    code, out, _ = run(capsys, "derive", "--f", "x", "--g", "x/3", "--at", "0", "--n", "1", "--kind", "float")
    assert code == 0 and out.strip() == "0.33333333333333331"


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["--f", "(x+", "--g", "x", "--at", "0", "--n", "1"], "offset 3"),
        (["--f", "exp(x)", "--g", "x", "--at", "0", "--n", "1"], "KindError"),
        (["--f", "1/x", "--g", "x", "--at", "0", "--n", "1"], "DomainError"),
        (["--f", "x", "--g", "x", "--at", "0.5", "--n", "1"], "--at"),
        (["--f", "x", "--g", "x", "--at", "0", "--n", "-1"], "--n"),
    ],
)
def test_derive_input_errors(capsys, argv, needle):
    code, out, err = run(capsys, "derive", *argv)
    assert code == 1 and out == "" and needle in err


def test_derive_caps(capsys, monkeypatch):
    code, _, _ = run(capsys, "derive", "--f", "x", "--g", "x", "--at", "0", "--n", "15", "--method", "combinatorial")
    assert code == 2
    code, _, _ = run(capsys, "derive", "--f", "x", "--g", "x", "--at", "0", "--n", "31")
    assert code == 2
    monkeypatch.setenv("FDB_MAX_ORDER", "3")
    code, _, _ = run(capsys, "derive", "--f", "x", "--g", "x", "--at", "0", "--n", "4")
    assert code == 2
    code, _, _ = run(capsys, "derive", "--f", "x", "--g", "x", "--at", "0", "--n", "4", "--max-order", "5")
    assert code == 0
    monkeypatch.setenv("FDB_MAX_ENUM", "2")
    code, _, _ = run(capsys, "partitions", "3")
    assert code == 2
    monkeypatch.setenv("FDB_MAX_ENUM", "lots")
    code, _, err = run(capsys, "partitions", "3")
    assert code == 1 and "FDB_MAX_ENUM" in err


def test_check_defaults_pass(capsys):
    code, rec, _ = run_json(capsys, "check")
    assert code == 0 and rec["result"]["ok"]
    assert [s["name"] for s in rec["result"]["suites"]] == ["bijection", "counts", "evaluators"]


def test_check_vacuous(capsys):
    code, out, _ = run(capsys, "check", "--n-max", "0")
    assert code == 0


@pytest.mark.parametrize("mutation", ["extend_partition", "profile_count", "closed_form"])
def test_check_detects_mutations(capsys, mutation):
    code, rec, _ = run_json(capsys, "check", "--n-max", "5", "--trials", "5", "--inject-mutation", mutation)
    assert code == 3
    assert not rec["result"]["ok"]


def test_bench_term_counts(capsys):
    code, rec, _ = run_json(capsys, "bench", "--n", "10", "--reps", "1")
    assert code == 0
    assert rec["result"]["terms"]["combinatorial"] == 115975
    assert rec["result"]["terms"]["closed"] == rec["result"]["terms"]["integer_partitions"] == 42
    code, rec, _ = run_json(capsys, "bench", "--n", "1", "--reps", "1")
    assert rec["result"]["terms"]["combinatorial"] == rec["result"]["terms"]["closed"] == 1


def test_bench_compare_backends(capsys):
    code, rec, _ = run_json(capsys, "bench", "--n", "6", "--reps", "1", "--compare-backends")
    assert code == 0 and rec["result"]["agree"]
    assert any(k.startswith("combinatorial[") for k in rec["timing_ns"])


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--n-max", "4", "--trials", "3", "--seed", "7"],
        ["derive", "--f", "x^3", "--g", "2*x-1", "--at", "1/5", "--n", "3", "--method", "all"],
        ["bench", "--n", "5", "--reps", "1", "--seed", "3"],
        ["profiles", "5"],
    ],
)
def test_json_output_is_deterministic_apart_from_timing(capsys, argv):
    _, first, _ = run_json(capsys, *argv)
    _, second, _ = run_json(capsys, *argv)
    first.pop("timing_ns")
    second.pop("timing_ns")
    assert json.dumps(first) == json.dumps(second)


def test_usage_errors_exit_1(capsys):
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys, "derive", "--f", "x")[0] == 1
    assert run(capsys, "partitions", "three")[0] == 1


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "faadibruno", "partitions", "2", "--json"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["result"]["count"] == 2
    assert out.stderr == ""
