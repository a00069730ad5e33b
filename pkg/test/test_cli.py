import json

import pytest

import main
from errors import NotDivisibleError, PrecisionError
from recheck import recheck_document
from suites.models import Check
from verifier import run_check


def read(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def test_eval_qint(tmp_path):
    out = tmp_path / "qint.json"
    assert main.main(["--eval", "qint", "--param", "n=3", "--out", str(out)]) == main.EXIT_OK
    document = read(out)
    assert document["value"] == "1 + q + q²"
    assert document["passed"]
    assert "q²" in out.read_text(encoding="utf-8")


def test_eval_qbinom_checks_its_range(capsys):
    assert main.main(["--eval", "qbinom", "--param", "n=4", "--param", "k=2"]) == main.EXIT_OK
    assert "1 + q + 2q² + q³ + q⁴" in capsys.readouterr().out
    assert main.main(["--eval", "qbinom", "--param", "n=2", "--param", "k=3"]) == main.EXIT_USAGE


def test_factorization_certificate_round_trip(tmp_path):
    out = tmp_path / "fact.json"
    args = ["--eval", "qfact-factorize", "--prime", "3", "--precision", "16", "--order", "32",
            "--param", "n=9", "--out", str(out)]
    assert main.main(args) == main.EXIT_OK
    document = read(out)
    assert document["certificate"]["exponents"] == [3, 1]
    assert main.main(["--recheck", str(out)]) == main.EXIT_OK

    coefficients = document["certificate"]["unit"]["coefficients"]
    coefficients[1] = str(int(coefficients[1]) + 3)
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(document))
    assert main.main(["--recheck", str(tampered)]) == main.EXIT_FAIL


def test_recheck_rejects_an_out_of_range_unit_coefficient(tmp_path):
    out = tmp_path / "fact.json"
    args = ["--eval", "qfact-factorize", "--prime", "3", "--precision", "2", "--order", "8",
            "--param", "n=4", "--out", str(out)]
    assert main.main(args) == main.EXIT_OK
    document = read(out)
    coefficients = document["certificate"]["unit"]["coefficients"]
    # 9 = 0 mod 3^2, so only the range check can notice
    coefficients[coefficients.index("0")] = "9"
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(document))
    assert main.main(["--recheck", str(tampered)]) == main.EXIT_FAIL


def test_recheck_counts_an_unknown_kind_as_a_failure(tmp_path):
    args = ["--prime", "2", "--precision", "4", "--order", "12"]
    qlog = tmp_path / "qlog.json"
    assert main.main(["--eval", "qlog", "--param", "a=2", "--out", str(qlog), *args]) == main.EXIT_OK
    document = read(qlog)
    certificates = document["report"]["certificates"]
    certificates.append(dict(certificates[0], kind="nygaarx"))
    corrupted = tmp_path / "corrupted.json"
    corrupted.write_text(json.dumps(document))
    assert main.main(["--recheck", str(corrupted)]) == main.EXIT_FAIL

    results = recheck_document(document)
    assert results["certificates"] == 3
    assert results["verified"] == 2
    assert results["failures"] == ["$.report.certificates[2]"]


def test_eval_qdivided_and_qlog_certificates_recheck(tmp_path):
    divided = tmp_path / "divided.json"
    args = ["--prime", "2", "--precision", "4", "--order", "12"]
    assert main.main(["--eval", "qdivided", "--param", "n=2", "--param", "a=3", "--out", str(divided), *args]) == 0
    assert read(divided)["certificate"]["level"] >= 2
    assert main.main(["--recheck", str(divided)]) == main.EXIT_OK

    qlog = tmp_path / "qlog.json"
    assert main.main(["--eval", "qlog", "--param", "a=2", "--out", str(qlog), *args]) == main.EXIT_OK
    assert len(read(qlog)["report"]["certificates"]) == 2
    assert main.main(["--recheck", str(qlog)]) == main.EXIT_OK


def test_eval_trace_model(tmp_path):
    out = tmp_path / "trace.json"
    args = ["--eval", "trace-model", "--param", "a=-1", "--prime", "3", "--precision", "4", "--order", "8",
            "--out", str(out)]
    assert main.main(args) == main.EXIT_OK
    report = read(out)["report"]
    assert report["matches_a_mu"] and report["eigenspace"]


def test_precision_shortfall_is_reported(tmp_path):
    out = tmp_path / "short.json"
    args = ["--eval", "qfact-factorize", "--prime", "2", "--order", "4", "--param", "n=8", "--out", str(out)]
    assert main.main(args) == main.EXIT_FAIL
    assert "error" in read(out)


def test_usage_errors(capsys):
    assert main.main([]) == main.EXIT_USAGE
    assert main.main(["--eval", "qint", "--prime", "4", "--param", "n=2"]) == main.EXIT_USAGE
    assert main.main(["--eval", "qint", "--param", "n"]) == main.EXIT_USAGE
    assert main.main(["--eval", "qint", "--param", "n=two"]) == main.EXIT_USAGE
    assert main.main(["--eval", "qint"]) == main.EXIT_USAGE
    assert main.main(["--verify", "--suite", "nope"]) == main.EXIT_USAGE
    with pytest.raises(SystemExit) as excinfo:
        main.main(["--eval", "qsomething"])
    assert excinfo.value.code == 2
    capsys.readouterr()


def test_recheck_without_certificates(tmp_path):
    assert main.main(["--recheck", str(tmp_path / "missing.json")]) == main.EXIT_FAIL
    empty = tmp_path / "empty.json"
    empty.write_text("{}")
    assert main.main(["--recheck", str(empty)]) == main.EXIT_FAIL


def test_verify_report_is_deterministic(tmp_path):
    reports = []
    for name in ("first.json", "second.json"):
        out = tmp_path / name
        args = ["--verify", "--suite", "padic", "--prime", "5", "--precision", "8", "--seed", "7", "--out", str(out)]
        assert main.main(args) == main.EXIT_OK
        reports.append(out.read_text())
    assert reports[0] == reports[1]

    report = json.loads(reports[0])
    ids = [entry["check_id"] for entry in report["entries"]]
    assert ids == sorted(ids)
    assert report["summary"]["fail"] == 0
    assert "workers" not in report["config"]
    assert all("paper_anchor" in entry for entry in report["entries"])


def needs_more_digits():
    raise PrecisionError("needs more digits", required=12, achieved=3)


def not_divisible():
    raise NotDivisibleError("remainder", evidence={"index": 0, "residue": 1, "modulus": 3})


def claims_false():
    return False, {"case": "counterexample"}


def test_run_check_verdicts():
    skip = run_check(Check("x/skip", "precision shortfall", {}, needs_more_digits))
    assert skip.verdict == "skip"
    assert skip.evidence["required"] == 12
    assert skip.evidence["achieved"] == 3

    fail = run_check(Check("x/divide", "exact division", {}, not_divisible))
    assert fail.verdict == "fail"
    assert fail.evidence["remainder"] == {"index": 0, "residue": 1, "modulus": 3}

    assert run_check(Check("x/false", "false claim", {}, claims_false)).verdict == "fail"
