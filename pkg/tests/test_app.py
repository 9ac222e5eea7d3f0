import pytest

from app import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, AdderCodeApp
from code_file import load_code_file
from code_core import verify_ud
from config import Config


@pytest.fixture
def app(tmp_path):
    return AdderCodeApp(Config(log_dir=str(tmp_path / "logs"), log_level="WARNING"))


def test_verify_catalog_code(app, capsys):
    assert app.run(["verify", "lindstrom"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "uniquely decodable: yes" in out
    assert "sum rate: 1.292481250" in out


def test_verify_reports_witness(app, tmp_path, capsys):
    path = tmp_path / "bad.code"
    path.write_text("d = 1\ncode = 0, 1\ncode = 0, 1\n")
    assert app.run(["verify", str(path)]) == EXIT_FAILURE
    assert "witness:" in capsys.readouterr().out


def test_usage_errors(app, tmp_path, capsys):
    assert app.run([]) == EXIT_USAGE
    assert app.run(["verify", "no-such-code"]) == EXIT_USAGE
    bad = tmp_path / "range.code"
    bad.write_text("d = 2\ncode = 9\n")
    assert app.run(["verify", str(bad)]) == EXIT_USAGE
    assert "line 2, field 1" in capsys.readouterr().err
    assert app.run(["search", "lindstrom", "--nmax", "4", "--groups", "2"]) == EXIT_USAGE
    assert app.run(["discover", "--d", "2", "--sizes", "5,1"]) == EXIT_USAGE


def test_bounds(app, capsys):
    assert app.run(["bounds", "--T", "2"]) == EXIT_OK
    assert "upper bound: 1.500000000" in capsys.readouterr().out
    assert app.run(["--precision", "4", "bounds", "--T", "6"]) == EXIT_OK
    assert "upper bound: 2.3334" in capsys.readouterr().out


def test_improve_with_certificate_and_materialize(app, tmp_path, capsys):
    out_path = tmp_path / "glued.code"
    code = app.run(["improve", "lindstrom", "--n", "3", "--g", "1", "--materialize", str(out_path)])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "normalized with mask 3" in out
    assert "|C1*| = 26" in out and "|C2*| = 6" in out
    assert "gap 1" in out
    assert "materialized system is UD" in out
    glued = load_code_file(out_path)
    assert glued.d == 6 and glued.sizes == [26, 6]


def test_improve_empty_constituent(app, capsys):
    assert app.run(["improve", "lindstrom", "--n", "1", "--g", "0"]) == EXIT_FAILURE
    assert "empty" in capsys.readouterr().err
    # g wider than half the dimension leaves the first code empty
    assert app.run(["improve", "lindstrom", "--n", "1", "--g", "2"]) == EXIT_FAILURE
    assert "constituent 1 is empty" in capsys.readouterr().err


def test_search(app, capsys):
    assert app.run(["search", "lindstrom", "--nmax", "6"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "normalization: mask 3" in out
    assert "points evaluated:" in out
    assert "ties:" in out


def test_search_with_custom_groups(app, capsys):
    code = app.run(["search", "T4-KO", "--nmax", "3", "--gmax", "2", "--as-given",
                    "--groups", "2,3", "--pin", "4"])
    assert code == EXIT_OK
    assert "free groups {2,3}; pinned 4; caps 2:2,3:2,4:2" in capsys.readouterr().out


def test_discover_writes_code(app, tmp_path, capsys):
    out_path = tmp_path / "found.code"
    assert app.run(["discover", "--d", "2", "--sizes", "3,2", "--seed", "1", "--out", str(out_path)]) == EXIT_OK
    assert verify_ud(load_code_file(out_path)).is_ud
    assert app.run(["discover", "--d", "1", "--sizes", "2,2"]) == EXIT_FAILURE
    assert "no UD system found" in capsys.readouterr().out


def test_catalog_and_normalize(app, capsys):
    assert app.run(["catalog"]) == EXIT_OK
    assert "T8-KM: T=8 d=6" in capsys.readouterr().out
    assert app.run(["catalog", "T4-KO", "--format", "json"]) == EXIT_OK
    assert '"codes": [[0, 7, 8, 14]' in capsys.readouterr().out
    assert app.run(["normalize", "lindstrom"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "minimum average weight: 2/3" in out
    assert "code = 2, 1, 0" in out


def test_spectrum_moments_analyze(app, capsys):
    assert app.run(["spectrum", "lindstrom", "--n", "2"]) == EXIT_OK
    assert app.run(["moments", "T6-KM"]) == EXIT_OK
    assert app.run(["analyze", "lindstrom", "--n", "40,400"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "kappa: 1/6" in out
    assert "smallest improving n:" in out


def test_table1(app, capsys):
    assert app.run(["table1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "MISMATCH" not in out
    assert "T8-KM" in out
