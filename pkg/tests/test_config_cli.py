"""Config parser diagnostics and the command-line front end."""

import numpy as np
import pytest

from qlsim.cli import RECIPES, main
from qlsim.config import ConfigError, parse_config_text

GOOD = """\
scenario = demo

[lattice]
power_mW = 15.0
waist_m = 25e-6
wavelength_nm = 786.5
"""


def test_parse_units_canonicalized():
    cfg = parse_config_text(GOOD)
    assert cfg.scenario == "demo"
    assert cfg.get("lattice", "power_W") == pytest.approx(15e-3)
    assert cfg.get("lattice", "wavelength_m") == pytest.approx(786.5e-9)


def test_unitless_numeric_key_rejected():
    bad = "scenario = x\n\n[lattice]\npower = 15.0\n"
    with pytest.raises(ConfigError, match=r":4: numeric key 'power'"):
        parse_config_text(bad)


def test_missing_scenario_rejected():
    with pytest.raises(ConfigError, match="scenario"):
        parse_config_text("[lattice]\npower_W = 1.0\n")


def test_repeated_key_becomes_list():
    text = "scenario = x\n\n[states]\nstate = a\nstate = b\n"
    cfg = parse_config_text(text)
    assert cfg.get_list("states", "state") == ["a", "b"]


def test_comments_and_missing_key():
    cfg = parse_config_text("scenario = x  # trailing comment\n")
    assert cfg.scenario == "x"
    with pytest.raises(ConfigError, match="missing"):
        cfg.get("lattice", "power_W")


@pytest.mark.parametrize("recipe", RECIPES)
def test_validate_all_recipes(recipe, capsys):
    assert main(["validate", "--config", recipe]) == 0
    assert "ok:" in capsys.readouterr().out


def test_unknown_config_exits_2(capsys):
    assert main(["validate", "--config", "no-such-recipe"]) == 2
    assert "config error" in capsys.readouterr().err


def test_bad_config_file_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("scenario = x\n\n[lattice]\npower = 1.0\n")
    assert main(["validate", "--config", str(p)]) == 2


def test_numerical_error_exits_3(tmp_path, capsys):
    # a conversion force strong enough to collide the ions
    p = tmp_path / "crash.txt"
    p.write_text(
        "scenario = crash\n\n"
        "[lattice]\npower_mW = 15.0\nwaist_m = 25e-6\n"
        "wavelength_nm = 786.5\n\n"
        "[crystal]\nmass_molecule_u = 28.0061448\n"
        "mass_atom_u = 39.9625909\nomega_ref_Hz = 641.15e3\n\n"
        "[probe]\nrabi_Hz = 71428.6\nwavelength_nm = 729\n\n"
        "[convert]\nt_odf_s = 0.75e-3\nf2_N = 1e-13\n"
    )
    code = main(["convert", "--config", str(p), "--out",
                 str(tmp_path / "out"), "--steps-per-period", "200"])
    assert code == 3
    assert "numerical error" in capsys.readouterr().err


def test_budget_verb_writes_report(tmp_path):
    out = tmp_path / "out"
    assert main(["budget", "--config", "budget", "--out", str(out)]) == 0
    text = (out / "budget_report.txt").read_text()
    assert "cycles" in text and "regime" in text
    assert "chemistry-limited" in text


def test_seeded_rabi_is_reproducible(tmp_path):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    out3 = tmp_path / "c"
    base = ["rabi", "--config", "fig7", "--steps-per-period", "300"]
    assert main(base + ["--out", str(out1), "--seed", "7"]) == 0
    assert main(base + ["--out", str(out2), "--seed", "7"]) == 0
    assert main(base + ["--out", str(out3), "--seed", "8"]) == 0
    a = (out1 / "rabi_noisy.csv").read_bytes()
    assert a == (out2 / "rabi_noisy.csv").read_bytes()
    assert a != (out3 / "rabi_noisy.csv").read_bytes()
    # the noise-free trace does not depend on the seed
    assert (out1 / "rabi_traces.csv").read_text().splitlines()[3:] == \
        (out3 / "rabi_traces.csv").read_text().splitlines()[3:]


def test_empty_state_list_rejected(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text(
        "scenario = x\n\n"
        "[lattice]\npower_mW = 15.0\nwaist_m = 25e-6\n"
        "wavelength_nm = 786.5\n\n[states]\n"
    )
    assert main(["validate", "--config", str(p)]) == 2


def test_spectrum_recipe_emits_csv(tmp_path):
    out = tmp_path / "out"
    # a cut-down sweep keeps this test fast
    p = tmp_path / "mini.txt"
    p.write_text(
        "scenario = mini\n\n"
        "[lattice]\npower_mW = 15.0\nwaist_m = 25e-6\n"
        "wavelength_nm = 786.5\n\n"
        "[sweep]\nlambda_min_nm = 786.0\nlambda_max_nm = 787.0\n"
        "points_count = 5\n\n"
        "[states]\nstate = g X 0 0 0.5 -0.5 2,0\n"
    )
    assert main(["spectrum", "--config", str(p), "--out", str(out)]) == 0
    data = np.genfromtxt(out / "spectrum.csv", delimiter=",", names=True,
                         skip_header=2)
    assert data.size == 5
    assert set(data.dtype.names) == {"lambda_m", "F_g_N", "scatter_g_per_s"}
