"""Batch command-line front-end.

One declarative INI config drives every subcommand; a few flags override
single keys for convenience.  All outputs are CSV with ``#`` header lines
(command, column names, resolved-config sha256) plus a JSON manifest of the
fully resolved parameters, so every file can be traced to the exact inputs
that produced it.  Runs are deterministic: identical config gives
byte-identical files regardless of the worker thread count
(STARKHHG_WORKERS).

Exit codes: 0 success, 2 configuration/usage error, 1 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import config as cfg
from . import lewenstein as lew
from . import macroprop as mp
from . import molecule as mol
from . import pulse as pls
from . import starkphase as sp
from . import trajectories as trj

_FORMULATION_ALIASES = {"eq3": "time_integral", "eq6": "return_velocity",
                        "eq7": "frequency_field",
                        "eq8": "frequency_field_free"}


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17e" % float(value)
    return str(value)


def _write_csv(path, command, run, columns, rows):
    lines = [f"# starkhhg {command}",
             f"# config sha256: {run.config_hash}",
             "# " + ",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _write_manifest(path, command, run, extra=None):
    resolved = {}
    for line in run.resolved_text.strip().splitlines():
        key, _, val = line.partition(" = ")
        resolved[key] = val
    doc = {"command": command, "config_sha256": run.config_hash,
           "resolved": resolved}
    if extra:
        doc.update(extra)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _outdir(run):
    d = Path(run.output_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _cmd_trajectories(run):
    table = trj.trajectory_table(run.pulse, run.params)
    rows = [(t_i, t_r, t_r - t_i, w, h, br, hc)
            for t_i, t_r, w, h, br, hc in zip(
                table.t_ion, table.t_rec, table.omega,
                table.harmonic_order, table.branch, table.half_cycle)]
    out = _outdir(run)
    _write_csv(out / "trajectories.csv", "trajectories", run,
               ["t_ion_au", "t_rec_au", "tau_au", "omega_au",
                "harmonic_order", "branch", "half_cycle"], rows)
    _write_manifest(out / "trajectories.json", "trajectories", run,
                    {"n_trajectories": len(table)})
    return 0


def _cmd_stark_phase(run, formulation, branch):
    table = trj.trajectory_table(run.pulse, run.params)
    w0 = run.pulse.carrier_frequency_au
    omega = np.arange(run.numerics.band_min_harmonic,
                      run.numerics.band_max_harmonic + 1e-9, 0.25) * w0
    records = sp.stark_phase_curve(run.pulse, run.params, table, omega,
                                   formulation=formulation, branch=branch)
    rows = [(r.omega_au, r.harmonic_order, r.phase1_rad, r.phase2_rad,
             r.branch, r.below_threshold)
            for r in records]
    out = _outdir(run)
    _write_csv(out / "stark_phase.csv", "stark-phase", run,
               ["omega_au", "harmonic_order", "phase1_rad", "phase2_rad",
                "branch", "below_threshold"], rows)
    _write_manifest(out / "stark_phase.json", "stark-phase", run,
                    {"formulation": formulation, "branch": branch})
    return 0


def _single_spectrum(run, mode):
    d = lew.dipole_time_series(run.pulse, run.params, mode, run.settings)
    return lew.spectrum(d, window=run.window, observable=run.observable,
                        pad_factor=run.pad_factor)


def _cmd_spectrum(run):
    s = _single_spectrum(run, run.stark_mode)
    rows = [(w, h, a.real, a.imag, abs(a))
            for w, h, a in zip(s.omega_au, s.harmonic_order, s.amp)]
    out = _outdir(run)
    _write_csv(out / "spectrum.csv", "spectrum", run,
               ["omega_au", "harmonic_order", "re", "im", "abs_amp"], rows)
    _write_manifest(out / "spectrum.json", "spectrum", run,
                    {"stark_mode": run.stark_mode})
    return 0


def _cmd_extract(run):
    if run.stark_mode == "none":
        raise cfg.ConfigError(
            "numerics.stark_mode: extraction needs a Stark mode to compare "
            "against the field-free reference")
    s_with = _single_spectrum(run, run.stark_mode)
    s_none = _single_spectrum(run, "none")
    pc = lew.extract_stark_phase(s_with, s_none, run.params.ip_au,
                                 rel_floor=run.rel_floor)
    rows = [(w, h, a, p, r)
            for w, h, a, p, r in zip(pc.omega_au, pc.harmonic_order,
                                     pc.amp_geo, pc.phase_rad, pc.reliable)]
    out = _outdir(run)
    _write_csv(out / "extract.csv", "extract", run,
               ["omega_au", "harmonic_order", "abs_amp", "phase_rad",
                "reliable_flag"], rows)
    _write_manifest(out / "extract.json", "extract", run,
                    {"stark_mode": run.stark_mode})
    return 0


def _map_rows(fmap):
    rows = []
    if fmap.plane == "far":
        lam = (2.0 * np.pi * pls.SPEED_OF_LIGHT_AU / fmap.omega_au
               * pls.BOHR_RADIUS_CM)
        for k, w in enumerate(fmap.omega_au):
            theta = fmap.radial * lam[k] / (2.0 * np.pi)
            for j, r in enumerate(theta):
                rows.append((w, r, fmap.amp[k, j].real, fmap.amp[k, j].imag))
    else:
        for k, w in enumerate(fmap.omega_au):
            for j, r in enumerate(fmap.radial):
                rows.append((w, r, fmap.amp[k, j].real, fmap.amp[k, j].imag))
    return rows


def _cmd_propagate(run):
    builder = mp.aligned_ensemble if run.aligned else mp.propagate_jet
    kw = dict(numerics=run.numerics, settings=run.settings,
              window=run.window, observable=run.observable,
              pad_factor=run.pad_factor)
    if run.stark_mode == "none":
        raise cfg.ConfigError(
            "numerics.stark_mode: propagation compares a Stark mode against "
            "the field-free reference")
    near_w = builder(run.pulse, run.focus, run.medium, run.params,
                     run.stark_mode, **kw)
    near_0 = builder(run.pulse, run.focus, run.medium, run.params, "none",
                     **kw)
    far_w = mp.to_far_field(near_w)
    ref_w = mp.to_near_field(mp.apply_filter(far_w, run.filter))
    ref_0 = mp.filtered_refocused(near_0, run.filter)
    phase, reliable = mp.extract_map_phase(ref_w, ref_0, run.params.ip_au,
                                           rel_floor=run.rel_floor)
    avg, defined = mp.radial_average_phase(phase, ref_w, reliable)

    out = _outdir(run)
    _write_csv(out / "near_field.csv", "propagate", run,
               ["omega_au", "r_cm", "re", "im"], _map_rows(near_w))
    _write_csv(out / "far_field.csv", "propagate", run,
               ["omega_au", "divergence_rad", "re", "im"], _map_rows(far_w))
    _write_csv(out / "refocused.csv", "propagate", run,
               ["omega_au", "r_cm", "re", "im"], _map_rows(ref_w))
    h = near_w.harmonic_order
    rows = [(w, hh, (p if d else float("nan")), d)
            for w, hh, p, d in zip(near_w.omega_au, h, avg, defined)]
    _write_csv(out / "averaged_phase.csv", "propagate", run,
               ["omega_au", "harmonic_order", "phase_rad", "defined_flag"],
               rows)
    _write_manifest(out / "propagate.json", "propagate", run,
                    {"aligned": bool(run.aligned),
                     "stark_mode": run.stark_mode})
    return 0


def _cmd_fig2(run):
    return _cmd_trajectories(run)


def _cmd_fig3(run):
    return _cmd_extract(run)


def _cmd_fig4(run):
    return _cmd_propagate(run)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="starkhhg",
        description="Bound-state Stark phases in harmonic generation from "
                    "oriented polar molecules: trajectories, single-molecule "
                    "spectra, phase extraction, macroscopic propagation.")
    parser.add_argument("--config", type=Path, default=None,
                        help="INI configuration file (defaults apply "
                             "when omitted)")
    parser.add_argument("--output-dir", default=None,
                        help="override output.directory")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, **kwargs):
        p = sub.add_parser(name, help=help_text, **kwargs)
        return p

    add("trajectories", "classical recollision table")
    p = add("stark-phase", "classical bound-state phase curves")
    p.add_argument("--formulation",
                   choices=sp.FORMULATIONS + tuple(_FORMULATION_ALIASES),
                   default="frequency_field",
                   help="phase formulation; eq3/eq6/eq7/eq8 are accepted "
                        "aliases for time_integral/return_velocity/"
                        "frequency_field/frequency_field_free")
    p.add_argument("--branch", choices=("short", "long"), default="short")
    for name, help_text in (("spectrum", "single-molecule harmonic spectrum"),
                            ("extract", "extracted Stark phase curve"),
                            ("reproduce-fig3", "single-molecule phase "
                                               "extraction at full production "
                                               "defaults")):
        p = add(name, help_text)
        p.add_argument("--stark-mode", choices=lew.STARK_MODES, default=None)
        p.add_argument("--window", choices=lew.WINDOWS, default=None)
        p.add_argument("--observable", choices=lew.OBSERVABLES, default=None)
        p.add_argument("--tau-max-cycles", type=float, default=None)
    for name, help_text in (("propagate", "macroscopic jet propagation"),
                            ("reproduce-fig4", "macroscopic averaged phase "
                                               "at jet-geometry defaults")):
        p = add(name, help_text)
        p.add_argument("--aligned", action="store_true", default=None)
        p.add_argument("--stark-mode", choices=lew.STARK_MODES, default=None)
    add("reproduce-fig2", "classical trajectory map at full production "
                          "defaults")
    return parser


_DISPATCH = {
    "trajectories": _cmd_trajectories,
    "spectrum": _cmd_spectrum,
    "extract": _cmd_extract,
    "propagate": _cmd_propagate,
    "reproduce-fig2": _cmd_fig2,
    "reproduce-fig3": _cmd_fig3,
    "reproduce-fig4": _cmd_fig4,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)

    overrides = {}
    for attr, target in (("stark_mode", ("numerics", "stark_mode")),
                         ("window", ("numerics", "window")),
                         ("observable", ("numerics", "observable")),
                         ("tau_max_cycles", ("numerics", "tau_max_cycles")),
                         ("output_dir", ("output", "directory"))):
        val = getattr(args, attr, None)
        if val is not None:
            overrides[target] = str(val)
    if getattr(args, "aligned", None):
        overrides[("macroscopic", "aligned")] = "true"

    try:
        text = args.config.read_text() if args.config else ""
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2

    try:
        run = cfg.parse_config(text, overrides=overrides)
    except cfg.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "stark-phase":
            form = _FORMULATION_ALIASES.get(args.formulation,
                                            args.formulation)
            return _cmd_stark_phase(run, form, args.branch)
        return _DISPATCH[args.command](run)
    except cfg.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, mol.UnboundStateError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
