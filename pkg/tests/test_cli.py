"""Command-line interface: outputs, formats, exit codes, determinism."""

import json

from charzeta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_count_all_methods_agree(capsys):
    code, doc = run_json(capsys, "count", "--surface", "L0", "--p", "7", "--n", "1",
                         "--space", "biprojective", "--method", "all")
    assert code == 0 and doc["ok"]
    assert doc["schema"] == "charzeta/1"
    counts = [r["count"] for r in doc["records"]]
    assert counts == [99, 99, 99]
    methods = {r["method"] for r in doc["records"]}
    assert methods == {"brute", "fiberwise", "formula"}


def test_count_single_method(capsys):
    code, doc = run_json(capsys, "count", "--surface", "L1", "--p", "2",
                         "--space", "affine", "--method", "brute")
    assert code == 0
    assert doc["records"][0]["count"] == 2


def test_count_formula_nonaffine(capsys):
    code, doc = run_json(capsys, "count", "--surface", "L2", "--p", "3",
                         "--space", "nonaffine", "--method", "formula")
    assert code == 0
    assert doc["records"][0]["count"] == 8


def test_zeta_command_recovered(capsys):
    code, doc = run_json(capsys, "zeta", "--surface", "L0", "--p", "2",
                         "--space", "biprojective")
    assert code == 0 and doc["ok"]
    rec = doc["records"][0]
    assert rec["mode"] == "recovered"
    assert rec["recovered"]["factors"] == [
        {"exp": 1, "unit": 4}, {"exp": 3, "unit": 2}, {"exp": 1, "unit": 1}]
    assert rec["match"]


def test_zeta_command_series_mode(capsys):
    code, doc = run_json(capsys, "zeta", "--surface", "L1", "--p", "5")
    assert code == 0
    rec = doc["records"][0]
    assert rec["mode"] == "series"
    assert rec["closed_form"]["factors"] == [
        {"exp": 1, "unit": 25}, {"exp": 6, "unit": 5}, {"exp": 1, "unit": 1}]
    assert rec["match"]


def test_zeta_l2_p3(capsys):
    code, doc = run_json(capsys, "zeta", "--surface", "L2", "--p", "3")
    assert code == 0
    assert doc["records"][0]["closed_form"]["factors"] == [
        {"exp": 1, "unit": 9}, {"exp": 3, "unit": 3}, {"exp": 1, "unit": 1}]


def test_verify_command(capsys):
    code, doc = run_json(capsys, "verify", "--surface", "L2", "--primes", "2..13")
    assert code == 0 and doc["ok"]
    assert [r["p"] for r in doc["records"]] == [2, 3, 5, 7, 11, 13]


def test_special_command(capsys):
    code, doc = run_json(capsys, "special", "--tol", "1e-6")
    assert code == 0 and doc["ok"]
    assert len(doc["records"]) == 9


def test_singular_command(capsys):
    code, doc = run_json(capsys, "singular", "--surface", "L1", "--p", "5", "--n", "1")
    assert code == 0
    assert doc["records"][0]["count"] == 8


def test_mahler_command_deterministic(capsys):
    code1, out1 = run(capsys, "mahler", "--samples", "50000", "--seed", "42")
    code2, out2 = run(capsys, "mahler", "--samples", "50000", "--seed", "42")
    assert code1 == code2 == 0
    assert out1 == out2  # bit-identical output for identical invocations


def test_usage_error_exit_code(capsys):
    assert main(["count", "--surface", "L9", "--p", "7"]) == 2
    assert main(["count", "--surface", "L0", "--p", "4"]) == 2  # non-prime
    assert main(["verify", "--primes", "abc"]) == 2


def test_csv_format(capsys):
    code, out = run(capsys, "count", "--surface", "L0", "--p", "3",
                    "--space", "biprojective", "--method", "formula",
                    "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert "count" in header.split(",")
    assert "25" in row.split(",")


def test_text_format(capsys):
    code, out = run(capsys, "special", "--format", "text")
    assert code == 0
    assert out.startswith("# special")
    assert "ok: True" in out


def test_prime_range_parsing(capsys):
    code, doc = run_json(capsys, "verify", "--surface", "L2", "--primes", "13")
    assert code == 0
    assert [r["p"] for r in doc["records"]] == [13]
