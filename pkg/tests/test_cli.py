import csv
import json

import pytest

from fracmom import cli
from fracmom.cli import CSV_COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_compute_power_moment(capsys):
    code, out = run(capsys, "compute", "--family", "power", "--m", "1", "--k", "0", "--precision", "12")
    assert code == 0
    (record,) = [json.loads(line) for line in out.splitlines()]
    assert record["family"] == "power"
    assert record["m"] == 1
    assert record["k"] == 0
    assert record["symbolic"] == "1 - gamma"
    assert record["value"] == "0.422784335098"
    assert record["precision"] == 12
    assert record["method"] == "theorem"
    assert record["regime"] == "k=m-1"
    assert record["discrepancy"] is None


def test_compute_several_orders_as_csv(capsys):
    code, out = run(capsys, "compute", "--family", "sympower", "--m", "1", "2", "--k", "0", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(out.splitlines()))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [(r["m"], r["k"]) for r in rows] == [("1", "0"), ("1", "1"), ("2", "0"), ("2", "1")]
    assert rows[0]["value"].startswith("0.16212293359065")


def test_compute_generic_polynomial_and_engine(capsys):
    code, out = run(capsys, "compute", "--family", "poly", "--coeffs", "0,1,-1", "--k", "0", "--method", "engine")
    assert code == 0
    record = json.loads(out)
    assert record["coeffs"] == "0,1,-1"
    assert record["method"] == "engine"
    assert record["value"].startswith("0.16212293359065")


def test_compute_with_oracle(capsys):
    code, out = run(
        capsys, "compute", "--family", "cosine", "--k", "1", "--method", "oracle", "--oracle", "polygamma-kernel",
        "--precision", "15",
    )
    assert code == 0
    record = json.loads(out)
    assert record["method"] == "oracle"
    assert record["regime"] == "C_2n+1"
    assert "error_bound" in record


def test_precision_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FRACMOM_PRECISION", "15")
    code, out = run(capsys, "compute", "--family", "bernoulli", "--n", "1", "--k", "0")
    assert code == 0
    assert json.loads(out)["precision"] == 15


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["compute", "--family", "power", "--m", "1", "--k", "0", "--precision", "5"], 2),
        (["compute", "--family", "power", "--m", "1", "--k", "0", "--precision", "5000"], 3),
        (["compute", "--family", "poly", "--k", "0"], 2),
        (["compute", "--family", "bernoulli", "--k", "0"], 2),
        (["compute", "--family", "power", "--m", "0", "--k", "0"], 2),
        (["compute", "--family", "power", "--m", "1", "--k", "-1"], 2),
        (["verify", "--suite", "identities", "--tol", "tiny"], 2),
    ],
)
def test_error_exit_codes(capsys, argv, expected):
    assert main(argv) == expected
    assert capsys.readouterr().out == ""


def test_argparse_rejects_bad_flags():
    with pytest.raises(SystemExit) as excinfo:
        main(["table", "--family", "power", "--k-range", "3..1"])
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit):
        main(["compute", "--family", "tangent", "--k", "0"])


def test_index_range():
    assert cli.index_range("2..4") == range(2, 5)
    assert cli.index_range("3") == range(3, 4)


def test_table_csv_file(tmp_path):
    out = tmp_path / "grid.csv"
    code = main(["table", "--family", "power", "--m-range", "1..2", "--k-range", "0..1", "--precision", "12",
                 "--out", str(out)])
    assert code == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert [(r["m"], r["k"]) for r in rows] == [("1", "0"), ("1", "1"), ("2", "0"), ("2", "1")]
    assert rows[0]["value"] == "0.422784335098"


def test_table_json_with_workers(tmp_path):
    out = tmp_path / "grid.json"
    code = main(["table", "--family", "sine", "--k-range", "0..3", "--format", "json", "--workers", "2",
                 "--out", str(out)])
    assert code == 0
    records = json.loads(out.read_text())
    assert [r["k"] for r in records] == [0, 1, 2, 3]
    assert [r["regime"] for r in records] == ["S_2n", "S_2n+1", "S_2n", "S_2n+1"]


def test_table_unwritable_output(tmp_path):
    out = tmp_path / "missing" / "grid.csv"
    assert main(["table", "--family", "power", "--k-range", "0", "--out", str(out)]) == 4


def test_verify_identities(capsys):
    code, out = run(capsys, "verify", "--suite", "identities", "--max-m", "4")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    summary = records[-1]
    assert summary["summary"] == "identities"
    assert summary["unexplained"] == 0
    assert summary["records"] == len(records) - 1
    assert {"elapsed_s", "peak_rss_mb"} <= set(summary)


def test_verify_known_discrepancies_decide_the_exit_code(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr(cli, "build_cells", lambda suite, opts: [("displayed", (1,))])
    code, out = run(capsys, "verify", "--suite", "sequences", "--precision", "20")
    assert code == 0
    summary = json.loads(out.splitlines()[-1])
    assert (summary["failed"], summary["known"], summary["unexplained"]) == (2, 2, 0)

    empty = tmp_path / "empty.json"
    empty.write_text('{"format_version": "1.0", "entries": []}')
    code, out = run(capsys, "verify", "--suite", "sequences", "--precision", "20", "--registry", str(empty))
    assert code == 1
    assert json.loads(out.splitlines()[-1])["unexplained"] == 2


def test_verbose_logs_go_to_stderr(capsys):
    code = main(["--verbose", "compute", "--family", "power", "--m", "3", "--k", "1"])
    captured = capsys.readouterr()
    assert code == 0
    assert json.loads(captured.out)["regime"] == "k<=m-2"


def test_verify_zeta_sum_cells_return_an_exit_code(capsys, monkeypatch):
    from fracmom.verify import moment_cells

    monkeypatch.setattr(
        cli, "build_cells", lambda suite, opts: [cell for cell in moment_cells(opts) if cell[0] == "zeta-sum"]
    )
    code, out = run(capsys, "verify", "--suite", "moments", "--max-m", "3")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert records[-1]["summary"] == "moments"
    assert records[-1]["records"] == len(records) - 1 > 0
    assert records[-1]["unexplained"] == 0


@pytest.mark.slow
def test_verify_moment_suite_end_to_end(capsys):
    code, out = run(capsys, "verify", "--suite", "moments", "--max-m", "1", "--max-k", "0", "--workers", "2")
    assert code == 0
    assert json.loads(out.splitlines()[-1])["unexplained"] == 0
