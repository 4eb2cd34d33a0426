import csv
import io
import json


from perfcodes.cli import main
from perfcodes.code_equations import Alphabet, to_rn_equation
from perfcodes.rn_solver import enumerate_d


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "--q", "15")
    assert code == 0
    assert "ALL_CANDIDATES_ELIMINATED_BY_LLOYD" in out
    assert "n=11, M=3^4·5^10" in out


def test_classify_json_schema(capsys):
    code, out, _ = run(capsys, "classify", "--q", "46", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["schema_version"] == "1.0"
    assert data["candidates"][0]["M_exponents"] == {"2": 79, "23": 91}
    assert data["verdict"] == "ALL_CANDIDATES_ELIMINATED_BY_LLOYD"


def test_global_options_before_verb(capsys):
    code, out, _ = run(capsys, "--format", "csv", "classify", "--q", "10", "--n-max", "1000")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0]["verdict"] == "NO_CANDIDATES_UP_TO_BOUND"


def test_classify_prime_power(capsys):
    code, out, _ = run(capsys, "classify", "--q", "8")
    assert code == 0 and "prime power" in out


def test_bad_n_max_is_config_error(capsys):
    code, _, err = run(capsys, "classify", "--q", "15", "--n-max", "3")
    assert code == 2 and "n_max" in err


def test_range_csv_and_plot(capsys, tmp_path):
    code, out, _ = run(
        capsys, "range", "--from", "6", "--to", "30", "--format", "csv", "--plot-dir", str(tmp_path)
    )
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["q"] for r in rows] == [str(q) for q in range(6, 31)]
    assert {r["q"] for r in rows if r["n_candidates"] != "0"} == {"15", "21"}
    assert (tmp_path / "range_summary.png").stat().st_size > 0


def test_range_empty_is_error(capsys):
    code, _, err = run(capsys, "range", "--from", "6", "--to", "5")
    assert code == 2


def test_table2_check(capsys):
    code, out, _ = run(capsys, "table2-check")
    assert code == 0 and "3/3 rows matched" in out
    code, out, _ = run(capsys, "table2-check", "--n-max", "50")
    assert code == 3 and "bound too low" in out


def test_export_and_import(capsys, tmp_path):
    curves = tmp_path / "curves.jsonl"
    code, out, _ = run(capsys, "export-curves", "--q", "15,46", "--out", str(curves))
    assert code == 0 and "18" in out
    assert len(curves.read_text().splitlines()) == 18

    pts = tmp_path / "pts.jsonl"
    pts.write_text(json.dumps({"q": 15, "d": 30, "points": [[270, 4440]], "complete": False}) + "\n")
    code, out, _ = run(capsys, "import-points", "--file", str(pts))
    assert code == 0 and "n=11" in out

    pts.write_text(json.dumps({"q": 15, "d": 30, "points": [[270, 4441]]}) + "\n")
    code, _, err = run(capsys, "import-points", "--file", str(pts))
    assert code == 2 and "not on" in err


def test_classify_with_complete_points(capsys, tmp_path):
    eq = to_rn_equation(Alphabet.of(10))
    pts = tmp_path / "q10.jsonl"
    pts.write_text(
        "".join(json.dumps({"q": 10, "d": d, "points": [], "complete": True}) + "\n" for d in enumerate_d(eq))
    )
    code, out, _ = run(capsys, "classify", "--q", "10", "--points", str(pts))
    assert code == 0 and "UNCONDITIONAL_NONEXISTENCE" in out


def test_survivor_exit_code(capsys, monkeypatch):
    from perfcodes import pipeline
    from perfcodes.lloyd import LloydVerdict

    monkeypatch.setattr(pipeline, "check_two_integer_roots", lambda q, n: LloydVerdict(True, (), 0))
    code, out, err = run(capsys, "classify", "--q", "15")
    assert code == 1 and "SURVIVING_CANDIDATE" in err
