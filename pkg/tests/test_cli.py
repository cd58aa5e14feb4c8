import json
import os

import pytest
from hypothesis import given, settings, strategies as st

from stieltjes_lab.cli import ExperimentConfig, emit_config, main, parse_config, read_checks, summarize
from stieltjes_lab.errors import ConfigError


def test_minimal_config_gets_defaults():
    cfg = parse_config("a = 2\n")
    assert cfg.a == 2.0 and cfg.b == 0.125 and cfg.seeds == (0,)
    assert "lam_points = 200" in emit_config(cfg)


def test_round_trip_example():
    text = "# Figure 1\nexperiment = dos\na = 8\nb = 0.125\nt = 1, 1+1j\nseeds = 0-3, 7\n"
    cfg = parse_config(text)
    assert cfg.seeds == (0, 1, 2, 3, 7)
    assert parse_config(emit_config(cfg)) == cfg


@settings(max_examples=50, deadline=None)
@given(a=st.floats(1e-3, 1e3), b=st.floats(1e-3, 1e3), n=st.integers(1, 5000),
       seeds=st.lists(st.integers(0, 2 ** 40), min_size=1, max_size=5),
       t=st.lists(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False), min_size=1, max_size=3))
def test_round_trip_property(a, b, n, seeds, t):
    cfg = ExperimentConfig(a=a, b=b, n=n, seeds=tuple(seeds), t=tuple(t))
    assert parse_config(emit_config(cfg)) == cfg


def test_negative_shape_names_field():
    with pytest.raises(ConfigError) as info:
        parse_config("n = 4\na = -1\n")
    assert info.value.field == "a" and info.value.line == 2


@pytest.mark.parametrize("text,field,line", [
    ("n = 4\nfoo = 1\n", "foo", 2),
    ("n = four\n", "n", 1),
    ("seeds = \n", "seeds", None),
    ("tol = 0.1\n", "tol", 1),
    ("experiment = plot\n", "experiment", 1),
    ("n = 3\nn = 4\n", "n", 2),
])
def test_config_errors(text, field, line):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.field == field
    if line is not None:
        assert info.value.line == line


def run_cli(tmp_path, experiment, text, *extra):
    cfg = tmp_path / f"{experiment}.cfg"
    cfg.write_text(text)
    return main([experiment, "--config", str(cfg), *extra])


def test_dos_run_is_byte_identical_across_workers(tmp_path):
    text = "a = 8\nb = 0.125\nn = 64\nlam_points = 40\nseeds = 0-3\n"
    assert run_cli(tmp_path, "dos", text, "--out", str(tmp_path / "w1")) == 0
    assert run_cli(tmp_path, "dos", text, "--out", str(tmp_path / "w3"), "--workers", "3") == 0
    names = sorted(f for f in os.listdir(tmp_path / "w1") if f.endswith(".csv"))
    assert names == ["seed-0.csv", "seed-1.csv", "seed-2.csv", "seed-3.csv", "summary.csv"]
    for name in names:
        assert (tmp_path / "w1" / name).read_bytes() == (tmp_path / "w3" / name).read_bytes()


def test_csv_headers_name_units_and_provenance(tmp_path):
    run_cli(tmp_path, "measure", "a = 8\nn = 32\nlam_points = 20\n", "--out", str(tmp_path / "m"))
    header = (tmp_path / "m" / "seed-0.csv").read_text().splitlines()[0].split(",")
    assert header == ["lambda[1|input]", "sigma_n_cdf[1|empirical]", "sigma_inf_cdf[1|closed-form]"]


def test_seed_flag_overrides_config(tmp_path):
    run_cli(tmp_path, "dos", "n = 16\nlam_points = 10\nseeds = 0-5\n", "--seed", "4", "--seed", "9",
            "--out", str(tmp_path / "d"))
    manifest = (tmp_path / "d" / "manifest.txt").read_text()
    assert "config.seeds = 4, 9" in manifest
    assert sorted(os.listdir(tmp_path / "d")) == ["manifest.txt", "seed-4.csv", "seed-9.csv", "summary.csv"]


def test_manifest_reruns_identically(tmp_path):
    run_cli(tmp_path, "measure", "a = 64\nn = 24\nlam_points = 15\nseeds = 1, 2\n", "--out", str(tmp_path / "a"))
    lines = (tmp_path / "a" / "manifest.txt").read_text().splitlines()
    echoed = "\n".join(l[len("config."):] for l in lines if l.startswith("config.") and not l.startswith("config.out"))
    assert run_cli(tmp_path, "measure", echoed, "--out", str(tmp_path / "b")) == 0
    for name in ("seed-1.csv", "seed-2.csv", "summary.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_deterministic_experiments(tmp_path):
    assert run_cli(tmp_path, "baseline", "n = 64\n", "--out", str(tmp_path / "b")) == 0
    assert run_cli(tmp_path, "idos", "lam_points = 20\nlam_min = 0.1\n", "--out", str(tmp_path / "i")) == 0
    assert (tmp_path / "i" / "data.csv").exists()


def test_summarize_pass_and_fail_rows(tmp_path, capsys):
    run_cli(tmp_path, "baseline", "n = 16\n", "--out", str(tmp_path / "b"))
    capsys.readouterr()
    checks = summarize(str(tmp_path / "b"))
    out = capsys.readouterr().out
    assert all(c.passed for c in checks) and out.startswith("PASS")
    assert json.loads((tmp_path / "b" / "checks.json").read_text())[0]["passed"] is True
    # a tampered manifest shows up as a FAIL row with observed and expected values
    path = tmp_path / "b" / "manifest.txt"
    path.write_text(path.read_text().replace("check.baseline_eigenvalues = PASS", "check.baseline_eigenvalues = FAIL"))
    assert main(["summarize", str(tmp_path / "b")]) == 2
    assert "FAIL  baseline_eigenvalues" in capsys.readouterr().out


def test_numerical_failure_exit_status(tmp_path):
    # a Pade fit at t close to the cut with few steps misses the 1% band
    text = "a = 0.3\nb = 3\nt = -0.9+0.05j\nn_min = 60\nn_max = 200\n"
    assert run_cli(tmp_path, "pade-error", text, "--out", str(tmp_path / "p")) == 2
    assert any(not c.passed for c in read_checks(str(tmp_path / "p")))


def test_input_errors_exit_one(tmp_path, capsys):
    (tmp_path / "empty").mkdir()
    assert main(["summarize", str(tmp_path / "empty")]) == 1
    assert run_cli(tmp_path, "dos", "a = -1\n") == 1
    assert "field 'a'" in capsys.readouterr().err
    assert main(["dos", "--config", str(tmp_path / "missing.cfg")]) == 1
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 1


def test_invariant_needs_complex_t(tmp_path):
    assert run_cli(tmp_path, "invariant", "t = 2\n", "--out", str(tmp_path / "x")) == 1


def test_corrupt_manifest(tmp_path):
    (tmp_path / "manifest.txt").write_text("check.x = PASS observed=abc\n")
    with pytest.raises(ConfigError):
        read_checks(str(tmp_path))
