import csv
import io
import json
import subprocess
import sys

import pytest

from besselsum.cli import CSV_COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_all_routes_json(capsys):
    code, out, _ = run(capsys, "eval", "--mu", "2", "--x", "1.5", "--method", "all", "--format", "json")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["method"] for r in recs] == ["series", "closed", "meijer"]
    v = [r["value"] for r in recs]
    bound = max(r["err_bound"] for r in recs)
    assert max(v) - min(v) <= 2 * bound + 1e-12
    assert set(recs[0]) == set(CSV_COLUMNS)


def test_eval_mu_zero_closed_exit_2(capsys):
    code, _, err = run(capsys, "eval", "--mu", "0", "--method", "closed")
    assert code == 2
    assert "mu != 0" in err


def test_eval_mu_zero_series_ok(capsys):
    code, out, _ = run(capsys, "eval", "--mu", "0")
    assert code == 0 and out.startswith(",".join(CSV_COLUMNS))


def test_eval_tiny_x(capsys):
    code, out, _ = run(capsys, "eval", "--mu", "1", "--x", "1e-9")
    assert code == 0
    row = list(csv.DictReader(io.StringIO(out)))[0]
    assert abs(float(row["value"])) < 1e-6


def test_eval_error_exit_1(capsys):
    code, out, err = run(capsys, "eval", "--mu", "1", "--x", "40", "--method", "meijer")
    assert code == 1 and "cap" in err
    assert "nan" in out


def test_table_row_counts(capsys):
    code, out, _ = run(capsys, "table", "--mu", "1:4", "--x-geom", "0.5:50:8", "--method", "closed")
    assert code == 0 and len(out.splitlines()) == 1 + 32
    code, out, _ = run(capsys, "table", "--mu", "2", "--x", "1,2,5", "--method", "all")
    assert code == 0 and len(out.splitlines()) == 1 + 9


def test_table_needs_x(capsys):
    code, _, _ = run(capsys, "table", "--mu", "1")
    assert code == 2


def test_csv_formatting(capsys):
    code, out, _ = run(capsys, "table", "--mu", "1", "--x-lin", "1:2:2")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == list(CSV_COLUMNS)
    value = rows[1][3]
    assert float(value) == float("%.17g" % float(value))
    assert len(value.replace("-", "").replace(".", "").split("e")[0]) >= 15


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nosuch"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--x-geom", "1:2"])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "eval", "--rel-tol", "-1", "--method", "closed")
    assert code == 2


def test_verify_writes_report(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code, _, err = run(capsys, "verify", "--suite", "lemma2", "--format", "csv", "--out", str(out))
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 36 and all(r["passed"] == "True" for r in rows)
    assert "36/36" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "besselsum", "eval", "--mu", "1", "--x", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("1,2,series,")
