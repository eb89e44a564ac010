import csv
from pathlib import Path

import pytest

from stbem1d.cli import main
from stbem1d.config import ConfigError, RunConfig, load_config

DEFAULT_INI = Path(__file__).resolve().parents[1] / "configs" / "default.ini"


def write(tmp_path, text, name="run.ini"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_default_config_file_matches_builtin_defaults():
    cfg = load_config(DEFAULT_INI)
    assert cfg == RunConfig()


def test_config_parsing(tmp_path):
    p = write(tmp_path, "[geometry]\nT = 1.5\nm_steps = 4\n[problem]\ntype = neumann\nrhs_operator = K\n[study]\nlevels = 4 8\n")
    cfg = load_config(p)
    assert (cfg.T, cfg.m_steps, cfg.problem, cfg.rhs_operator, cfg.levels) == (1.5, 4, "neumann", "K", (4, 8))


@pytest.mark.parametrize(
    "text, line",
    [
        ("[geometry]\nT = 2\nm_steps = -3\n", 3),
        ("[geometry]\nT = 2\n[problem]\nmethod = collocation\n", 4),
        ("[geometry]\nwidth = 2\n", 2),
        ("T = 2\n", 1),
        ("[study]\nlevels = 8\nthis line is broken\n", 3),
        ("[problem]\ntype = neumann\n[geometry]\ndegree = 0\n", 4),
    ],
)
def test_config_errors_name_the_line(tmp_path, text, line):
    p = write(tmp_path, text)
    with pytest.raises(ConfigError) as info:
        load_config(p)
    assert f"{p}:{line}:" in str(info.value)


def test_missing_config_exits_2(tmp_path, capsys):
    assert main(["convergence", "-c", str(tmp_path / "absent.ini")]) == 2
    assert "absent.ini" in capsys.readouterr().err


def test_malformed_config_exits_2(tmp_path, capsys):
    p = write(tmp_path, "[spectral]\nn_modes = many\n")
    assert main(["verify", "ht", "-c", str(p)]) == 2
    assert f"{p}:2:" in capsys.readouterr().err


def test_verify_ht_default(capsys):
    assert main(["verify", "ht"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 5 and "FAIL" not in out


def test_verify_jumps(capsys):
    assert main(["verify", "jumps"]) == 0
    assert capsys.readouterr().out.count("PASS") == 4


def test_verify_calderon_small(tmp_path, capsys):
    p = write(tmp_path, "[study]\nlevels = 4, 8, 16\ncalderon_T = 1.5\n")
    assert main(["verify", "calderon", "-c", str(p)]) == 0
    assert capsys.readouterr().out.count("PASS") == 4


def test_solver_failure_exits_3(monkeypatch, capsys):
    import stbem1d.cli as cli
    from stbem1d.errors import SolverError

    def boom(*args, **kwargs):
        raise SolverError("singular (condition estimate inf)", float("inf"))

    monkeypatch.setattr(cli, "solve_dirichlet", boom)
    assert main(["solve-dirichlet"]) == 3
    assert "solver failure" in capsys.readouterr().err


def test_solve_commands_write_csv(tmp_path):
    for cmd, col in (("solve-dirichlet", "neumann_datum"), ("solve-neumann", "dirichlet_datum")):
        out = tmp_path / f"{cmd}.csv"
        assert main([cmd, "-o", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 16 and col in rows[0]
    out = tmp_path / "rec.csv"
    assert main(["reconstruct", "-o", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 25 and max(float(r["abs_error"]) for r in rows) < 0.1


def test_convergence_csv(tmp_path):
    out = tmp_path / "conv.csv"
    p = write(tmp_path, "[study]\nlevels = 4, 8, 16\n")
    assert main(["convergence", "-c", str(p), "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "level,m,h,err_L2,err_dual_proxy,rate"
    rows = list(csv.DictReader(lines))
    assert [r["m"] for r in rows] == ["4", "8", "16"]
    assert rows[0]["rate"] == ""
    errs = [float(r["err_L2"]) for r in rows]
    assert errs[0] > errs[1] > errs[2]
