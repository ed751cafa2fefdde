"""Command-line front end: figure recipes, sweeps and plot-data emission.

Verbs: spectrum | rabi | convert | budget | validate. All physical
quantities in configs carry unit suffixes; frequencies are cyclic Hz.
Output files are columnar CSV plus key-value reports, written atomically.
Exit codes: 0 ok, 2 configuration error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from importlib import resources

import numpy as np
import scipy.constants as sc

from qlsim.config import RunConfig, parse_config
from qlsim.dynamics import CrystalConfig, StepControl
from qlsim.errors import ConfigError, QlsimError
from qlsim.protocol import (
    ProbeLaser,
    background_model,
    convert_odf,
    distinguishability,
    molecular_signal,
    shot_budget,
)
from qlsim.spectro import (
    LatticeConfig,
    RovibronicState,
    build_line_catalog,
    load_molecular_constants,
    odf_amplitude,
    scattering_rate,
)
from qlsim.thermometry import add_shot_noise, coherent_distribution

RECIPES = ("fig5a", "fig5b", "fig7", "figA1", "budget")

DEFAULT_N_MAX = 10


# ---------------------------------------------------------------------------
# config plumbing

def _resolve_config(name: str):
    """A filesystem path, or the name of a shipped figure recipe."""
    if os.path.exists(name):
        return name
    if name in RECIPES:
        return resources.files("qlsim").joinpath(f"recipes/{name}.txt")
    raise ConfigError(
        f"config {name!r} is neither a file nor a known recipe "
        f"(recipes: {', '.join(RECIPES)})"
    )


def _load_constants(cfg: RunConfig):
    if cfg.has("constants") and "path" in cfg.sections["constants"]:
        return load_molecular_constants(cfg.get("constants", "path"))
    return load_molecular_constants()


def _lattice(cfg: RunConfig, need_wavelength=True) -> LatticeConfig:
    sec = "lattice"
    wavelength = cfg.get(sec, "wavelength_m") if need_wavelength else 780e-9
    return LatticeConfig(
        power=float(cfg.get(sec, "power_W")),
        waist=float(cfg.get(sec, "waist_m")),
        wavelength=float(wavelength),
    )


def _crystal(cfg: RunConfig) -> CrystalConfig:
    sec = "crystal"
    m_mol = float(cfg.get(sec, "mass_molecule_u")) * sc.atomic_mass
    m_atom = float(cfg.get(sec, "mass_atom_u")) * sc.atomic_mass
    omega = 2.0 * math.pi * float(cfg.get(sec, "omega_ref_Hz"))
    return CrystalConfig((m_mol, m_atom), omega, m_ref=m_atom)


def _probe(cfg: RunConfig) -> ProbeLaser:
    sec = "probe"
    sideband = cfg.get(sec, "sideband", default="red")
    return ProbeLaser(
        omega0=2.0 * math.pi * float(cfg.get(sec, "rabi_Hz")),
        wavelength=float(cfg.get(sec, "wavelength_m")),
        sideband=sideband,
    )


def _states(cfg: RunConfig):
    """[(label, state, band)] from 'state = label X v N J mJ vu,vl' lines."""
    entries = cfg.get_list("states", "state")
    if not entries:
        raise ConfigError(f"{cfg.path}: [states] has no 'state' entries")
    out = []
    for raw in entries:
        parts = str(raw).split()
        if len(parts) != 7:
            raise ConfigError(
                f"{cfg.path}: bad state spec {raw!r} "
                "(expect: label elec v N J mJ vup,vlow)"
            )
        label, elec, v, n, j, mj, band = parts
        try:
            vu, vl = (int(x) for x in band.split(","))
            state = RovibronicState(
                elec, int(v), float(j), N=int(n), m_J=float(mj)
            )
        except (ValueError, QlsimError) as exc:
            raise ConfigError(f"{cfg.path}: bad state spec {raw!r}: {exc}") from exc
        out.append((label, state, (vu, vl)))
    return out


def _seed(cfg: RunConfig, args) -> int:
    if args.seed is not None:
        return args.seed
    if cfg.has("run") and "seed_count" in cfg.sections["run"]:
        return int(cfg.get("run", "seed_count"))
    return 0


def _control(args) -> StepControl:
    if args.steps_per_period is not None:
        return StepControl(steps_per_period=args.steps_per_period)
    return StepControl()


# ---------------------------------------------------------------------------
# output helpers

def _write_atomic(path, text: str):
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header, rows, meta):
    lines = [f"# {k} = {v}" for k, v in meta]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(
            x if isinstance(x, str) else f"{x:.9e}" for x in row
        ))
    return "\n".join(lines) + "\n"


def _report_text(items, meta):
    lines = [f"# {k} = {v}" for k, v in meta]
    width = max(len(k) for k, _ in items)
    for k, v in items:
        lines.append(f"{k:<{width}} = {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands

def cmd_spectrum(cfg: RunConfig, out_dir: str, args) -> int:
    constants = _load_constants(cfg)
    lattice = _lattice(cfg, need_wavelength=False)
    states = _states(cfg)
    lo = float(cfg.get("sweep", "lambda_min_m"))
    hi = float(cfg.get("sweep", "lambda_max_m"))
    npts = int(cfg.get("sweep", "points_count"))
    if not (0 < lo <= hi) or npts < 1:
        raise ConfigError(f"{cfg.path}: bad sweep bounds or point count")
    grid = np.linspace(lo, hi, npts)

    catalogs = {}
    for _, _, band in states:
        if band not in catalogs:
            catalogs[band] = build_line_catalog(constants, band, DEFAULT_N_MAX)

    header = ["lambda_m"] + [f"F_{label}_N" for label, _, _ in states]
    header.append(f"scatter_{states[0][0]}_per_s")
    rows = []
    import warnings as _w
    for lam in grid:
        cfg_l = LatticeConfig(power=lattice.power, waist=lattice.waist,
                              wavelength=float(lam))
        row = [float(lam)]
        for _, state, band in states:
            with _w.catch_warnings():
                _w.simplefilter("ignore")
                try:
                    row.append(odf_amplitude(state, cfg_l, catalogs[band]))
                except QlsimError:
                    row.append(math.nan)
        try:
            row.append(scattering_rate(states[0][1], cfg_l,
                                       catalogs[states[0][2]], constants))
        except QlsimError:
            row.append(math.nan)
        rows.append(row)

    meta = [("scenario", cfg.scenario), ("config", cfg.path)]
    _write_atomic(os.path.join(out_dir, "spectrum.csv"),
                  _csv_text(header, rows, meta))
    return 0


def cmd_rabi(cfg: RunConfig, out_dir: str, args) -> int:
    constants = _load_constants(cfg)
    lattice = _lattice(cfg)
    crystal = _crystal(cfg)
    probe = _probe(cfg)
    states = _states(cfg)
    control = _control(args)
    seed = _seed(cfg, args)

    t_max = float(cfg.get("trace", "t_max_s"))
    npts = int(cfg.get("trace", "points_count"))
    shots = int(cfg.get("trace", "shots_count", default=0))
    t_odf = float(cfg.get("trace", "t_odf_s"))
    times = np.linspace(0.0, t_max, npts)

    catalogs = {}
    traces = []
    forces = []
    for label, state, band in states:
        if band not in catalogs:
            catalogs[band] = build_line_catalog(constants, band, DEFAULT_N_MAX)
        forces.append(odf_amplitude(state, lattice, catalogs[band]))
        traces.append(molecular_signal(
            state, lattice, crystal, catalogs[band], t_odf, probe,
            times=times, control=control,
        ))

    w_minus = crystal.mode_frequencies()[0]
    nbars = []
    from qlsim.dynamics import DriveSpec, simulate_two
    for f in forces:
        drive = DriveSpec((f, 0.0), 2.0 * lattice.k, w_minus)
        if f == 0.0:
            nbars.append(0.0)
        else:
            traj = simulate_two(crystal, drive, t_odf, control)
            nbars.append(float(traj.mode_energy(0)[-1]) / (sc.hbar * w_minus))
    dists = [coherent_distribution(nb) for nb in nbars]

    meta = [("scenario", cfg.scenario), ("config", cfg.path), ("seed", seed),
            ("shots", shots), ("t_odf_s", t_odf)]

    header = ["t_s"] + [f"Pe_{label}" for label, _, _ in states]
    rows = [[times[i]] + [tr.excitation[i] for tr in traces]
            for i in range(npts)]
    _write_atomic(os.path.join(out_dir, "rabi_traces.csv"),
                  _csv_text(header, rows, meta))

    n_top = max(d.n_max for d in dists)
    fock_header = ["n"] + [f"p_{label}" for label, _, _ in states]
    fock_rows = []
    for n in range(n_top + 1):
        fock_rows.append([float(n)] + [
            float(d.probs[n]) if n <= d.n_max else 0.0 for d in dists
        ])
    _write_atomic(os.path.join(out_dir, "rabi_fock.csv"),
                  _csv_text(fock_header, fock_rows, meta))

    if shots > 0:
        noisy = [add_shot_noise(tr, shots, seed + i)
                 for i, tr in enumerate(traces)]
        rows = [[times[i]] + [tr.excitation[i] for tr in noisy]
                for i in range(npts)]
        _write_atomic(os.path.join(out_dir, "rabi_noisy.csv"),
                      _csv_text(header, rows, meta))

    items = [("seed", seed)]
    for (label, _, _), f, nb in zip(states, forces, nbars):
        items.append((f"F_{label}_N", f"{f:.6e}"))
        items.append((f"nbar_{label}", f"{nb:.6f}"))
    ref_shots = shots if shots > 0 else 400
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            sep = distinguishability(traces[i], traces[j], shots=ref_shots)
            items.append((
                f"separation_{states[i][0]}_{states[j][0]}_sigma",
                f"{sep.sigma:.3f} at {sep.time:.3e} s",
            ))

    if cfg.has("background"):
        residual = float(cfg.get("background", "residual_nbar_count"))
        w, vecs = crystal.normal_modes()
        from qlsim.thermometry import lamb_dicke
        eta = lamb_dicke(probe.k, crystal.masses[1], w[0],
                         crystal.mode_amplitude_coefficient(0, 1))
        bg = background_model(residual, probe.coupling(eta), times=times)
        rows = [[times[i], bg.excitation[i], traces[0].excitation[i]]
                for i in range(npts)]
        _write_atomic(
            os.path.join(out_dir, "background.csv"),
            _csv_text(["t_s", "Pe_background", f"Pe_{states[0][0]}"],
                      rows, meta),
        )
        sep = distinguishability(bg, traces[0], shots=ref_shots)
        items.append(("background_residual_nbar", f"{residual:.6f}"))
        items.append(("background_separation_sigma",
                      f"{sep.sigma:.3f} at {sep.time:.3e} s"))

    _write_atomic(os.path.join(out_dir, "rabi_report.txt"),
                  _report_text(items, meta))
    return 0


def cmd_convert(cfg: RunConfig, out_dir: str, args) -> int:
    lattice = _lattice(cfg)
    crystal = _crystal(cfg)
    probe = _probe(cfg)
    control = _control(args)
    t_odf = float(cfg.get("convert", "t_odf_s"))

    sec = cfg.section("convert")
    if "f2_N" in sec:
        f2_values = [float(x) for x in cfg.get_list("convert", "f2_N")]
    else:
        lo = float(cfg.get("convert", "f2_min_N"))
        hi = float(cfg.get("convert", "f2_max_N"))
        npts = int(cfg.get("convert", "points_count"))
        if not (0 < lo <= hi) or npts < 1:
            raise ConfigError(f"{cfg.path}: bad f2 sweep in [convert]")
        f2_values = list(np.geomspace(lo, hi, npts))

    header = ["F2_N", "F1_N", "identity_N", "nbar1", "closure_rms",
              "fit_rms", "stark_J"]
    rows = []
    for f2 in f2_values:
        res = convert_odf(f2, crystal, lattice, t_odf, probe, control=control)
        rows.append([res.f_two, res.f_one, res.f_two, res.nbar_one,
                     res.closure_rms, res.fit.residual, res.stark_shift])
    meta = [("scenario", cfg.scenario), ("config", cfg.path),
            ("t_odf_s", t_odf)]
    _write_atomic(os.path.join(out_dir, "convert.csv"),
                  _csv_text(header, rows, meta))
    return 0


def cmd_budget(cfg: RunConfig, out_dir: str, args) -> int:
    sec = "budget"
    tau = float(cfg.get(sec, "tau_chem_s"))
    t_cycle = float(cfg.get(sec, "t_cycle_s"))
    rate = float(cfg.get(sec, "scatter_rate_per_s"))
    pulse = float(cfg.get(sec, "pulse_time_s"))
    target = float(cfg.get(sec, "target_sigma_count", default=5.0))
    sep = float(cfg.get(sec, "per_shot_separation_count", default=1.0))
    p = -math.expm1(-rate * pulse)
    report = shot_budget(tau, t_cycle, p, target_sigma=target,
                         per_shot_separation=sep)
    meta = [("scenario", cfg.scenario), ("config", cfg.path)]
    _write_atomic(os.path.join(out_dir, "budget_report.txt"),
                  _report_text(report.as_items(), meta))
    return 0


def cmd_validate(cfg: RunConfig, out_dir: str, args) -> int:
    constants = _load_constants(cfg)
    checked = ["constants"]
    if cfg.has("lattice"):
        _lattice(cfg, need_wavelength="wavelength_m" in cfg.sections["lattice"])
        checked.append("lattice")
    if cfg.has("crystal"):
        _crystal(cfg)
        checked.append("crystal")
    if cfg.has("probe"):
        _probe(cfg)
        checked.append("probe")
    if cfg.has("states"):
        for _, _, band in _states(cfg):
            constants.require_band(*band)
        checked.append("states")
    print(f"ok: scenario {cfg.scenario!r}, validated " + ", ".join(checked))
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "rabi": cmd_rabi,
    "convert": cmd_convert,
    "budget": cmd_budget,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlsim",
        description="Molecular-ion state-detection simulator",
    )
    parser.add_argument("verb", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True,
                        help="config file path or recipe name "
                             f"({', '.join(RECIPES)})")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--steps-per-period", type=int, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(_resolve_config(args.config))
        return COMMANDS[args.verb](cfg, args.out, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except QlsimError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
