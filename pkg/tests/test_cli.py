import csv
import io
import json
import subprocess
import sys

import pytest

from photokam.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize("argv", [
    ["eq-point", "--mu", "0.01"],
    ["eq-point", "--mu", "0.01", "--q1", "0.98", "--branch", "L5", "--refine"],
    ["frequencies", "--mu", "0.01"],
    ["mu-c0", "--root"],
    ["normal-form", "--mu", "0.01"],
    ["critical-masses", "--q1", "0.97"],
    ["kam-d", "--mu", "0.01"],
    ["kam-d", "--u2", "0.05"],
    ["classify", "--mu", "0.01"],
    ["integrate", "--mu", "0.01", "--dx", "1e-5", "--t-final", "1", "--cadence", "0.5"],
    ["table1"],
    ["table2"],
    ["region", "--axis", "a2:0:0.7:8"],
    ["errata"],
])
def test_subcommands_succeed(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    assert len(rows(out)) >= 1


def test_global_flags_before_subcommand(capsys):
    a = run(capsys, "--mu", "0.02", "classify")[1]
    b = run(capsys, "classify", "--mu", "0.02")[1]
    assert a == b


def test_json_format(capsys):
    code, out, _ = run(capsys, "table2", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 8


def test_errata_json_round_trip(capsys):
    out = run(capsys, "errata", "--format", "json")[1]
    data = json.loads(out)
    assert len(data) >= 4 and all("anchor" in e for e in data)
    assert json.loads(json.dumps(data)) == data


def test_out_file(capsys, tmp_path):
    target = tmp_path / "t1.csv"
    assert run(capsys, "table1", "--out", str(target))[0] == 0
    assert target.read_text().startswith("q1,mu_c1,mu_c2,mu_c3\n")


def test_out_file_error(capsys, tmp_path):
    code, _, err = run(capsys, "table1", "--out", str(tmp_path / "no" / "t1.csv"))
    assert code == 1 and "t1.csv" in err


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("mu=0.024294\n")
    out = run(capsys, "classify", "--config", str(cfg))[1]
    assert rows(out)[0]["verdict"] == "resonance-excluded"
    out = run(capsys, "classify", "--config", str(cfg), "--mu", "0.01")[1]
    assert rows(out)[0]["verdict"] == "kam-stable"


@pytest.mark.parametrize("argv", [
    ["classify", "--mu", "0.7"],
    ["classify"],
    ["frequencies", "--mu", "0.05"],
    ["integrate", "--mu", "0.01", "--t-final", "1", "--method", "rk4"],
])
def test_domain_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_reversed_axis_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["region", "--axis", "q1:1:0.9:3"])
    assert info.value.code == 2
    assert "q1:1:0.9:3" in capsys.readouterr().err


def test_bad_config_key_exit_2(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("speed=3\n")
    assert run(capsys, "classify", "--config", str(cfg))[0] == 2


@pytest.mark.parametrize("argv,factor", [
    (["kam-d", "--u2", "0.16"], "(25*u^2-4)"),
    (["kam-d", "--u2", "0.25"], "(4*u^2-1)"),
    (["integrate", "--mu", "0.1", "--x", "-0.1", "--y", "0", "--t-final", "1"], "r1"),
])
def test_singularities_exit_3(capsys, argv, factor):
    code, _, err = run(capsys, *argv)
    assert code == 3 and factor in err


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "photokam", "critical-masses"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert rows(proc.stdout)[0]["mu_c1"] == "0.024294"


def test_integrate_columns(capsys):
    out = run(capsys, "integrate", "--mu", "0.01", "--t-final", "2", "--cadence", "1",
              "--method", "rk4", "--step", "0.01")[1]
    data = rows(out)
    assert list(data[0]) == ["t", "x", "y", "vx", "vy", "jacobi"]
    assert [float(r["t"]) for r in data] == [0.0, 1.0, 2.0]
