"""Laser-induced bound-state phases in harmonic generation from polar
molecules: classical trajectory analysis, strong-field dipole spectra with
switchable Stark-shift accumulation, phase extraction, and reduced
macroscopic propagation over a thin gas jet."""

from .hankel import hankel_grid
from .lewenstein import (DipoleSettings, HarmonicSpectrum, PhaseCurve,
                         dipole_time_series, extract_stark_phase, spectrum,
                         stark_phase_run)
from .macroprop import (FieldMap, FilterSpec, MacroNumerics, MediumSpec,
                        aligned_ensemble, apply_filter, extract_map_phase,
                        filtered_refocused, propagate_jet,
                        radial_average_phase, to_far_field, to_near_field)
from .molecule import StarkParameters, UnboundStateError, preset
from .pulse import FocusGeometry, LaserPulse
from .starkphase import cutoff_and_scaling, stark_phase_curve
from .trajectories import frequency_to_pairs, trajectory_table

__all__ = [
    "DipoleSettings", "FieldMap", "FilterSpec", "FocusGeometry",
    "HarmonicSpectrum", "LaserPulse", "MacroNumerics", "MediumSpec",
    "PhaseCurve", "StarkParameters", "UnboundStateError", "aligned_ensemble",
    "apply_filter", "cutoff_and_scaling", "dipole_time_series",
    "extract_map_phase", "extract_stark_phase", "filtered_refocused",
    "frequency_to_pairs", "hankel_grid", "preset", "propagate_jet",
    "radial_average_phase", "spectrum", "stark_phase_curve",
    "stark_phase_run", "to_far_field", "to_near_field", "trajectory_table",
]

__version__ = "0.1.0"
