"""CLI surface: subcommands, output formats, exit codes, determinism."""

import csv
import io
import json

from quadcensus.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_PROPERTY, main
from quadcensus.reports import CSV_COLUMNS

CONIC = "3 7 1 0 0 1 0 -1"
SECOND = "3 7 1 1 0 2 1 3"


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_worked_example(capsys):
    code, out, _ = _run(
        capsys, ["classify", "--p", "7", "--form", CONIC, "--point", "0,0,1"]
    )
    assert code == EXIT_OK
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert body == ["[0:0:1] int int int"]


def test_classify_conic_point(capsys):
    code, out, _ = _run(
        capsys, ["classify", "--p", "7", "--form", CONIC, "--point", "3,4,5"]
    )
    assert code == EXIT_OK
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert body[0].endswith(" on on on")


def test_classify_multiple_points_and_all(capsys):
    code, out, _ = _run(
        capsys,
        ["classify", "--p", "7", "--form", CONIC, "--point", "0,0,1", "--point", "1,0,0"],
    )
    assert code == EXIT_OK
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert len(body) == 2 and body[1] == "[1:0:0] ext ext ext"
    code, out, _ = _run(capsys, ["classify", "--p", "7", "--form", CONIC, "--all"])
    assert code == EXIT_OK
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert len(body) == 57
    assert not any("MISMATCH" in ln for ln in body)


def test_classify_even_dimension_exit2(capsys):
    code, _, err = _run(
        capsys,
        ["classify", "--p", "7", "--form", "4 7 1 0 0 0 1 0 0 1 0 1", "--point", "1,0,0,0"],
    )
    assert code == EXIT_INPUT
    assert "error:" in err


def test_classify_missing_point_exit2(capsys):
    code, _, err = _run(capsys, ["classify", "--p", "7", "--form", CONIC])
    assert code == EXIT_INPUT


def test_classify_json(capsys):
    code, out, _ = _run(
        capsys,
        ["classify", "--p", "7", "--form", CONIC, "--point", "0,0,1", "--output", "json"],
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["rows"] == [
        {"point": "[0:0:1]", "verdicts": ["int", "int", "int"], "mismatch": False}
    ]
    assert doc["config"]["seed"] == 42


def test_count_csv_schema(capsys):
    code, out, _ = _run(
        capsys,
        ["count", "--p", "7", "--form", CONIC, "--form2", SECOND, "--output", "csv"],
    )
    assert code == EXIT_OK
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(body))))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 2 and len(rows[1]) == 25
    rec = dict(zip(rows[0], rows[1]))
    total = sum(
        int(rec[k])
        for k in (
            "on_on", "on_ext", "on_int",
            "ext_on", "ext_ext", "ext_int",
            "int_on", "int_ext", "int_int",
        )
    )
    assert total == 57
    assert rec["identity_holds"] == "1"


def test_count_proportional_pair_exit2(capsys):
    code, _, err = _run(
        capsys,
        ["count", "--p", "7", "--form", CONIC, "--form2", "3 7 2 0 0 2 0 -2"],
    )
    assert code == EXIT_INPUT
    assert "error:" in err


def test_charsum(capsys):
    code, out, _ = _run(
        capsys, ["charsum", "--p", "7", "--form", CONIC, "--form2", SECOND]
    )
    assert code == EXIT_OK
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert "identity_holds=True" in body[0]
    assert "T11=" in body[0]


def test_sweep_determinism(capsys):
    argv = ["sweep", "--n", "3", "--qs", "7,9", "--trials", "2", "--seed", "42",
            "--output", "csv"]
    code1, out1, _ = _run(capsys, argv)
    code2, out2, _ = _run(capsys, argv)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert "# summary" in out1


def test_sweep_zero_trials(capsys):
    code, out, _ = _run(
        capsys,
        ["sweep", "--qs", "7", "--trials", "0", "--output", "csv"],
    )
    assert code == EXIT_OK
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    # header row only, no data rows before the (empty) summary
    assert body[0] == ",".join(CSV_COLUMNS)


def test_sweep_config_echo(capsys):
    code, out, _ = _run(
        capsys, ["sweep", "--qs", "7", "--trials", "1", "--seed", "5", "--output", "csv"]
    )
    assert code == EXIT_OK
    assert "# seed=5" in out.splitlines()
    assert "# qs=7" in out.splitlines()


def test_selftest_quick(capsys):
    code, out, _ = _run(capsys, ["selftest", "--quick"])
    assert code == EXIT_OK
    lines = out.splitlines()
    assert all(ln.startswith("[PASS]") for ln in lines[:-1])
    assert lines[-1] == "selftest: all batteries passed"


def test_selftest_fault_injection(capsys):
    # hidden negative control: a corrupted character table must trip a battery
    code, out, _ = _run(capsys, ["selftest", "--quick", "--inject-char-fault"])
    assert code == EXIT_PROPERTY
    assert "[FAIL]" in out
    # and the fault must not leak into later runs
    code, out, _ = _run(capsys, ["selftest", "--quick"])
    assert code == EXIT_OK


def test_classify_mismatch_exit_code_reserved():
    # exit code 3 is reserved for classifier disagreement; the classifiers
    # agree on correct code, so only the constant is asserted here
    assert EXIT_MISMATCH == 3
