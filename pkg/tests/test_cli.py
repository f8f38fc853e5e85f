import subprocess
import sys

import pytest

from aoweno.cli import main


def run(tmp_path, *args):
    return main(list(args) + ["--out-dir", str(tmp_path)])


def test_converge_writes_table(tmp_path, capsys):
    cfg = tmp_path / "c.ini"
    cfg.write_text("[problem]\nname = advection_smooth\n[overrides]\nt_final = 0.2\n")
    assert run(tmp_path, "converge", "--config", str(cfg), "--scheme", "ao53", "--n", "20,40") == 0
    text = (tmp_path / "converge_advection_smooth_ao53.csv").read_text()
    assert text.splitlines()[0] == "N,linf,linf_order,l1,l1_order,seconds"
    assert len(text.splitlines()) == 3
    assert "N,linf" in capsys.readouterr().out


def test_run_writes_snapshot(tmp_path):
    assert run(tmp_path, "run", "--problem", "sod", "--scheme", "ao543", "--n", "100") == 0
    lines = (tmp_path / "sod_ao543.csv").read_text().splitlines()
    assert lines[0] == "x,rho,u,p"
    assert len(lines) == 101


def test_bench_writes_table(tmp_path):
    assert run(tmp_path, "bench", "--problem", "sod", "--scheme", "js,ao53", "--n", "40", "--steps", "2") == 0
    lines = (tmp_path / "bench_sod.csv").read_text().splitlines()
    assert lines[0] == "test,js,ao53"
    assert lines[1].endswith(",1.000000")


def test_shock_needs_reference_flag(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("AOWENO_CACHE", str(tmp_path / "cache"))
    assert run(tmp_path, "shock", "--problem", "shu_osher") == 1
    assert "--seed-cache" in capsys.readouterr().err


@pytest.mark.parametrize("args, message", [
    (["run", "--problem", "nope"], "valid names"),
    (["run", "--problem", "sod", "--scheme", "weno9"], "valid schemes"),
    (["run"], "no problem"),
    (["run", "--problem", "sod", "--n", "abc"], "invalid resolution"),
    (["shock", "--problem", "double_mach"], "1D problem"),
])
def test_configuration_errors(tmp_path, capsys, args, message):
    assert run(tmp_path, *args) == 1
    assert message in capsys.readouterr().err


def test_bad_config_keys(tmp_path, capsys):
    cfg = tmp_path / "c.ini"
    cfg.write_text("[problem]\nname = sod\n[overrides]\nbogus = 1\n")
    assert run(tmp_path, "run", "--config", str(cfg)) == 1
    assert "valid keys" in capsys.readouterr().err
    cfg.write_text("[problem]\nname = sod\n[scheme]\nname = js\nwidth = 3\n")
    assert run(tmp_path, "run", "--config", str(cfg)) == 1
    cfg.write_text("[problem]\nname = sod\n[plots]\nx = 1\n")
    assert run(tmp_path, "run", "--config", str(cfg)) == 1
    cfg.write_text("[problem]\nname = kelvin_helmholtz\n[overrides]\noption.shape = 1\n")
    assert run(tmp_path, "run", "--config", str(cfg)) == 1
    assert "valid options" in capsys.readouterr().err


def test_numerical_failure_exit_code(tmp_path, capsys):
    # the blast wave with a huge time step breaks down immediately
    cfg = tmp_path / "c.ini"
    cfg.write_text("[problem]\nname = blast\n[overrides]\nmode = 'power_law'\ncoeff = 1.0\npower = 0.0\n")
    assert run(tmp_path, "run", "--config", str(cfg), "--scheme", "js", "--n", "100") == 2
    assert "numerical failure" in capsys.readouterr().err


def test_console_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "aoweno", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    for cmd in ("run", "converge", "shock", "bench", "props"):
        assert cmd in out.stdout
