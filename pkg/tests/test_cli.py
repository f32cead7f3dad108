import csv
import io
import math
import subprocess
import sys

import numpy as np
import pytest

from varfrac.cli import UsageError, main, parse_config, read_config_file

FIG2 = "kernel --transition exp --a1 0.6 --a2 0.8 --c 2 --which psi --tmin 0.01 --tmax 5 --points 200".split()
FIG11 = (
    "relax --transition mlf --a1 0.6 --a2 0.8 --c 2 --beta 0.7 --lambda 1 --y0 1 "
    "--tmin 0.01 --tmax 50 --points 400 --spacing log"
).split()


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_fig2_kernel_csv(capsys):
    code, out, _ = run_cli(FIG2, capsys)
    assert code == 0
    table = rows(out)
    assert table[0] == ["t", "psi"]
    assert len(table) == 201
    assert all(len(r) == 2 for r in table)
    assert float(table[1][0]) == 0.01 and float(table[-1][0]) == 5.0


def test_fig11_relax_csv(capsys):
    code, out, _ = run_cli(FIG11, capsys)
    assert code == 0
    table = rows(out)
    assert table[0] == ["t", "y", "y1_ref", "y2_ref"]
    assert len(table) == 401
    t = np.array([float(r[0]) for r in table[1:]])
    assert t[0] == pytest.approx(0.01) and t[-1] == pytest.approx(50)
    assert np.allclose(np.diff(np.log(t)), np.log(5000) / 399)


def test_relax_cq_method(capsys):
    argv = "relax --transition exp --a1 0.6 --a2 0.8 --c 2 --method cq --step-h 0.01 --tmax 1".split()
    code, out, _ = run_cli(argv, capsys)
    assert code == 0
    table = rows(out)
    assert len(table) == 102 and float(table[1][0]) == 0.0 and float(table[1][1]) == 1.0


def test_invert_recip_s(capsys):
    code, out, _ = run_cli(["invert", "--expr", "recip_s", "--t", "1"], capsys)
    assert code == 0
    header, row = rows(out)
    assert header == ["t", "f", "exact"]
    assert float(row[1]) == pytest.approx(1.0, abs=1e-10)


def test_invert_pow_s_grid(capsys):
    argv = "invert --expr pow_s --power 0.7 --tmin 0.5 --tmax 2 --points 4".split()
    code, out, _ = run_cli(argv, capsys)
    data = np.array(rows(out)[1:], dtype=float)
    np.testing.assert_allclose(data[:, 1], data[:, 0] ** -0.3 / math.gamma(0.7), atol=1e-10)
    np.testing.assert_allclose(data[:, 1], data[:, 2], atol=1e-10)


@pytest.mark.parametrize(
    "argv, header",
    [
        ("transition --transition erf --a1 0.6 --a2 0.8 --c 2 --tmin 0.1 --tmax 1 --points 5", ["t", "alpha"]),
        ("kernel --transition const --a1 0.4 --shift 1 --n 2 --j 1 --tmin 0.5 --tmax 1 --points 3", ["t", "phi_1"]),
        ("sonine --transition exp --a1 0.6 --a2 0.8 --c 2 --mesh 256", ["t", "convolution", "target", "deviation"]),
        ("spectral --transition exp --a1 0.6 --a2 0.8 --c 2 --tmin 0.1 --tmax 1.9 --points 10", ["r", "density"]),
        ("kochubei --transition const --a1 0.6", ["condition", "pass", "witness"]),
        ("cqweights --transition exp --a1 0.6 --a2 0.8 --c 2 --step-h 0.01 --count 20", ["n", "weight"]),
    ],
)
def test_every_command_emits_csv(argv, header, capsys):
    code, out, _ = run_cli(argv.split(), capsys)
    assert code == 0
    table = rows(out)
    assert table[0] == header
    assert all(len(r) == len(header) for r in table)
    assert out.endswith("\n") and "\r" not in out


def test_kochubei_rows(capsys):
    _, out, _ = run_cli("kochubei --transition exp --a1 0.6 --a2 0.8 --c 2".split(), capsys)
    verdict = {r[0]: r[1] for r in rows(out)[1:]}
    assert verdict == {"A1": "true", "A2": "false", "A3": "true", "A4": "true"}


def test_determinism(tmp_path):
    outputs = []
    for i in range(2):
        path = tmp_path / f"fig2_{i}.csv"
        assert main(FIG2 + ["--output", str(path)]) == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    lines = outputs[0].decode("utf-8").split("\n")
    assert lines[0] == "t,psi"
    # 17 significant digits round-trip exactly
    value = lines[5].split(",")[1]
    assert float(repr(float(value))) == float(value)
    assert len(value.replace("-", "").replace(".", "").split("e")[0].lstrip("0")) <= 17


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("VARFRAC_OUTPUT_DIR", str(tmp_path / "out"))
    assert main(["invert", "--expr", "recip_s2", "--t", "2", "--output", "x.csv"]) == 0
    assert (tmp_path / "out" / "x.csv").read_text().startswith("t,f,exact\n")


def test_config_file_and_override(tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text("# exponential transition\na1 = 0.6\na2 = 0.8\nc = 2.0  # rate\ntransition = exp\n")
    cfg = parse_config(["kernel", "--config", str(cfg_file), "--c", "3.0"])
    assert (cfg.a1, cfg.a2, cfg.c, cfg.transition) == (0.6, 0.8, 3.0, "exp")
    assert cfg.transition_function().c == 3.0


def test_config_aliases(tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text("lambda = 0.5\nstep-h = 0.01\n")
    assert read_config_file(cfg_file) == {"lam": 0.5, "step_h": 0.01}


def test_unknown_key_lists_valid_keys(tmp_path, capsys):
    cfg_file = tmp_path / "bad.cfg"
    cfg_file.write_text("alpha_one = 0.6\n")
    with pytest.raises(UsageError, match="valid keys:.*a1"):
        read_config_file(cfg_file)
    code, _, err = run_cli(["transition", "--config", str(cfg_file)], capsys)
    assert code == 2 and "unknown key" in err


def test_type_mismatch(tmp_path):
    cfg_file = tmp_path / "bad.cfg"
    cfg_file.write_text("points = many\n")
    with pytest.raises(UsageError, match="points"):
        read_config_file(cfg_file)
    cfg_file.write_text("spacing = cubic\n")
    with pytest.raises(UsageError, match="spacing"):
        read_config_file(cfg_file)


def test_missing_required_key(capsys):
    code, _, err = run_cli("kernel --transition exp --a1 0.6 --a2 0.8 --tmin 1 --tmax 2 --points 3".split(), capsys)
    assert code == 2 and "'c'" in err
    code, _, err = run_cli("kernel --transition exp --a1 0.6 --a2 0.8 --c 1 --tmax 2 --points 3".split(), capsys)
    assert code == 2 and "'tmin'" in err


def test_log_spacing_requires_positive_tmin(tmp_path, capsys):
    cfg_file = tmp_path / "grid.cfg"
    cfg_file.write_text("spacing = log\ntmin = 0\ntmax = 1\npoints = 4\n")
    with pytest.raises(UsageError, match="log spacing"):
        parse_config(["transition", "--config", str(cfg_file)])
    code, _, _ = run_cli(["transition", "--config", str(cfg_file)], capsys)
    assert code == 2


def test_bad_flag_value_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["kernel", "--which", "chi"])
    assert exc.value.code == 2


def test_numerical_failure_exit_status(capsys):
    # j = 0 for n = 2 is not a transform of a function
    argv = "kernel --transition const --a1 0.4 --shift 1 --n 2 --j 0 --tmin 0.5 --tmax 1 --points 3".split()
    code, out, err = run_cli(argv, capsys)
    assert code == 1 and out == ""
    assert "computation failed" in err and "DomainError" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "varfrac", "invert", "--expr", "recip_s_plus_1", "--t", "1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert float(proc.stdout.splitlines()[1].split(",")[1]) == pytest.approx(math.exp(-1), abs=1e-10)
