"""Declarative run configuration for the CLI.

INI-style text (configparser syntax) with sections ``pulse``, ``molecule``,
``numerics``, ``macroscopic`` and ``output``.  Every physical key carries its
unit in the name (``_au``, ``_nm``, ``_Wcm2``, ``_cm``, ``_cm3``, ``_rad``);
unknown sections or keys are rejected so a typo cannot silently fall back to
a default.  :func:`parse_config` returns a fully resolved :class:`RunConfig`
holding ready-to-use domain objects plus a canonical text rendering of every
resolved value and its sha256 hash, which output writers embed in headers.
"""

from __future__ import annotations

import configparser
import dataclasses
import hashlib
import math
from dataclasses import dataclass

from . import lewenstein as lew
from . import macroprop as mp
from . import molecule as mol
from . import pulse as pls


class ConfigError(ValueError):
    """A configuration value failed validation; the message names the key."""


_UNSET = object()


def _float(text, key):
    try:
        val = float(text)
    except ValueError:
        raise ConfigError(f"{key}: not a number: {text!r}") from None
    if not math.isfinite(val):
        raise ConfigError(f"{key}: must be finite, got {text!r}")
    return val


def _int(text, key):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key}: not an integer: {text!r}") from None


def _bool(text, key):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: not a boolean: {text!r}")


def _str(text, key):
    return text.strip().strip('"').strip("'")


_PARSERS = {"float": _float, "int": _int, "bool": _bool, "str": _str}

# section -> key -> (type name, default); _UNSET means "no value unless given"
_SCHEMA = {
    "pulse": {
        "wavelength_nm": ("float", 800.0),
        "peak_intensity_Wcm2": ("float", _UNSET),
        "peak_field_au": ("float", _UNSET),
        "duration_cycles": ("float", 2.0),
        "cep_rad": ("float", 0.0),
        "envelope": ("str", "cos2"),
    },
    "molecule": {
        "preset": ("str", "CO"),
        "e0_au": ("float", _UNSET),
        "mu_au": ("float", _UNSET),
        "alpha_par_au": ("float", _UNSET),
        "alpha_perp_au": ("float", _UNSET),
        "theta_rad": ("float", 0.0),
    },
    "numerics": {
        "samples_per_cycle": ("int", 4096),
        "tau_max_cycles": ("float", 1.0),
        "tau_rolloff_cycles": ("float", 0.1),
        "tau_min_cycles": ("float", 0.0),
        "tau_min_rolloff_cycles": ("float", 0.0),
        "epsilon_au": ("float", 1e-4),
        "symmetric_ionization": ("bool", False),
        "stark_mode": ("str", "first_order"),
        "window": ("str", "cos8"),
        "observable": ("str", "dipole"),
        "pad_factor": ("int", 8),
        "rel_floor": ("float", 0.02),
    },
    "macroscopic": {
        "confocal_cm": ("float", 2.0),
        "focus_z_cm": ("float", -0.70),
        "focus_intensity_Wcm2": ("float", 3.0e14),
        "jet_length_cm": ("float", 0.5),
        "jet_density_cm3": ("float", 5.0e14),
        "jet_center_cm": ("float", 0.0),
        "n_slices": ("int", 21),
        "n_radial": ("int", 128),
        "r_max_waists": ("float", 4.0),
        "intensity_step_frac": ("float", 0.01),
        "intensity_floor_frac": ("float", 0.02),
        "band_min_harmonic": ("float", 4.0),
        "band_max_harmonic": ("float", 30.0),
        "dipole_source": ("str", "table"),
        "filter_shape": ("str", "hard"),
        "filter_cutoff_rad": ("float", _UNSET),
        "filter_cutoff_scale": ("float", 1.0),
        "filter_order": ("int", 4),
        "filter_reference_harmonic": ("float", 21.0),
        "aligned": ("bool", False),
    },
    "output": {
        "directory": ("str", "."),
        "format": ("str", "csv"),
    },
}


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration resolved into domain objects."""

    pulse: pls.LaserPulse
    params: mol.StarkParameters
    settings: lew.DipoleSettings
    stark_mode: str
    window: str
    observable: str
    pad_factor: int
    rel_floor: float
    focus: pls.FocusGeometry
    medium: mp.MediumSpec
    numerics: mp.MacroNumerics
    filter: mp.FilterSpec
    aligned: bool
    output_dir: str
    output_format: str
    resolved_text: str
    config_hash: str


def _read_sections(text):
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # unit suffixes are case-sensitive (Wcm2)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax: {exc}") from None
    values = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]; "
                              f"known: {sorted(_SCHEMA)}")
        for key, raw in parser.items(section):
            schema = _SCHEMA[section]
            if key not in schema:
                raise ConfigError(f"unknown key {section}.{key}; "
                                  f"known: {sorted(schema)}")
            kind, _ = schema[key]
            values[(section, key)] = _PARSERS[kind](raw, f"{section}.{key}")
    return values


def _get(values, section, key):
    _kind, default = _SCHEMA[section][key]
    return values.get((section, key), default)


def parse_config(text, overrides=None):
    """Parse and validate INI text into a :class:`RunConfig`.

    ``overrides`` is an optional {(section, key): raw string} mapping applied
    on top of the file (used for CLI flags); override values pass through the
    same parsing and validation as file values.
    """
    values = _read_sections(text)
    if overrides:
        for (section, key), raw in overrides.items():
            if section not in _SCHEMA or key not in _SCHEMA[section]:
                raise ConfigError(f"unknown override {section}.{key}")
            kind, _ = _SCHEMA[section][key]
            values[(section, key)] = _PARSERS[kind](str(raw),
                                                    f"{section}.{key}")

    # pulse: amplitude from field or intensity, mutually consistent
    wavelength = _get(values, "pulse", "wavelength_nm")
    field = _get(values, "pulse", "peak_field_au")
    inten = _get(values, "pulse", "peak_intensity_Wcm2")
    if field is _UNSET and inten is _UNSET:
        inten = 2.0e14
    try:
        pulse = pls.LaserPulse.from_wavelength(
            wavelength, _get(values, "pulse", "duration_cycles"),
            peak_field_au=None if field is _UNSET else field,
            peak_intensity_Wcm2=None if inten is _UNSET else inten,
            cep_rad=_get(values, "pulse", "cep_rad"),
            envelope=_get(values, "pulse", "envelope"))
    except ValueError as exc:
        raise ConfigError(f"pulse: {exc}") from None

    # molecule: preset, overridable constants
    explicit = {k: values[("molecule", k)]
                for k in ("e0_au", "mu_au", "alpha_par_au", "alpha_perp_au")
                if ("molecule", k) in values}
    theta = _get(values, "molecule", "theta_rad")
    try:
        if explicit:
            missing = [k for k in ("e0_au", "mu_au", "alpha_par_au",
                                   "alpha_perp_au") if k not in explicit]
            if ("molecule", "preset") in values:
                raise ConfigError("molecule: give either preset or explicit "
                                  "constants, not both")
            if missing:
                raise ConfigError("molecule: explicit constants incomplete, "
                                  f"missing {missing}")
            params = mol.StarkParameters(theta_rad=theta, **explicit)
        else:
            params = mol.preset(_get(values, "molecule", "preset"))
            params = dataclasses.replace(params, theta_rad=theta)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"molecule: {exc}") from None

    try:
        settings = lew.DipoleSettings(
            samples_per_cycle=_get(values, "numerics", "samples_per_cycle"),
            tau_max_cycles=_get(values, "numerics", "tau_max_cycles"),
            epsilon_au=_get(values, "numerics", "epsilon_au"),
            tau_rolloff_cycles=_get(values, "numerics", "tau_rolloff_cycles"),
            tau_min_cycles=_get(values, "numerics", "tau_min_cycles"),
            tau_min_rolloff_cycles=_get(values, "numerics",
                                        "tau_min_rolloff_cycles"),
            symmetric_ionization=_get(values, "numerics",
                                      "symmetric_ionization"))
    except ValueError as exc:
        raise ConfigError(f"numerics: {exc}") from None

    stark_mode = _get(values, "numerics", "stark_mode")
    if stark_mode not in lew.STARK_MODES:
        raise ConfigError(f"numerics.stark_mode: must be one of "
                          f"{lew.STARK_MODES}")
    window = _get(values, "numerics", "window")
    if window not in lew.WINDOWS:
        raise ConfigError(f"numerics.window: must be one of {lew.WINDOWS}")
    observable = _get(values, "numerics", "observable")
    if observable not in lew.OBSERVABLES:
        raise ConfigError(f"numerics.observable: must be one of "
                          f"{lew.OBSERVABLES}")
    pad_factor = _get(values, "numerics", "pad_factor")
    if pad_factor < 1:
        raise ConfigError("numerics.pad_factor: must be >= 1")
    rel_floor = _get(values, "numerics", "rel_floor")
    if not (0 < rel_floor < 1):
        raise ConfigError("numerics.rel_floor: must be in (0, 1)")

    try:
        focus = pls.FocusGeometry(
            confocal_cm=_get(values, "macroscopic", "confocal_cm"),
            focus_z_cm=_get(values, "macroscopic", "focus_z_cm"),
            peak_intensity_Wcm2=_get(values, "macroscopic",
                                     "focus_intensity_Wcm2"))
        n_slices = _get(values, "macroscopic", "n_slices")
        if n_slices < 3:
            raise ValueError("n_slices must be >= 3 for a production run")
        medium = mp.MediumSpec(
            length_cm=_get(values, "macroscopic", "jet_length_cm"),
            number_density_cm3=_get(values, "macroscopic", "jet_density_cm3"),
            n_slices=n_slices,
            center_z_cm=_get(values, "macroscopic", "jet_center_cm"))
        numerics = mp.MacroNumerics(
            n_radial=_get(values, "macroscopic", "n_radial"),
            r_max_waists=_get(values, "macroscopic", "r_max_waists"),
            intensity_step_frac=_get(values, "macroscopic",
                                     "intensity_step_frac"),
            intensity_floor_frac=_get(values, "macroscopic",
                                      "intensity_floor_frac"),
            band_min_harmonic=_get(values, "macroscopic",
                                   "band_min_harmonic"),
            band_max_harmonic=_get(values, "macroscopic",
                                   "band_max_harmonic"),
            dipole_source=_get(values, "macroscopic", "dipole_source"))
        cutoff = _get(values, "macroscopic", "filter_cutoff_rad")
        filt = mp.FilterSpec(
            shape=_get(values, "macroscopic", "filter_shape"),
            cutoff_rad=None if cutoff is _UNSET else cutoff,
            cutoff_scale=_get(values, "macroscopic", "filter_cutoff_scale"),
            order=_get(values, "macroscopic", "filter_order"),
            reference_harmonic=_get(values, "macroscopic",
                                    "filter_reference_harmonic"))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"macroscopic: {exc}") from None

    fmt = _get(values, "output", "format")
    if fmt != "csv":
        raise ConfigError("output.format: only 'csv' is supported")

    resolved = _resolve_text(values, pulse, params)
    digest = hashlib.sha256(resolved.encode()).hexdigest()

    return RunConfig(
        pulse=pulse, params=params, settings=settings, stark_mode=stark_mode,
        window=window, observable=observable, pad_factor=pad_factor,
        rel_floor=rel_floor, focus=focus, medium=medium, numerics=numerics,
        filter=filt, aligned=_get(values, "macroscopic", "aligned"),
        output_dir=_get(values, "output", "directory"), output_format=fmt,
        resolved_text=resolved, config_hash=digest)


def _resolve_text(values, pulse, params):
    """Canonical text of every resolved key, stable across dict ordering."""
    lines = []
    for section in sorted(_SCHEMA):
        for key in sorted(_SCHEMA[section]):
            val = _get(values, section, key)
            if val is _UNSET:
                # the two pulse amplitude keys resolve through the pulse
                if key == "peak_field_au":
                    val = pulse.peak_field_au
                elif key == "peak_intensity_Wcm2":
                    val = float(pls.intensity_from_field_au(
                        pulse.peak_field_au))
                elif key == "filter_cutoff_rad":
                    val = "auto"
                else:
                    val = "unset"
            lines.append(f"{section}.{key} = {val!r}")
    for key in ("e0_au", "mu_au", "alpha_par_au", "alpha_perp_au"):
        lines.append(f"resolved.molecule.{key} = {getattr(params, key)!r}")
    return "\n".join(lines) + "\n"
