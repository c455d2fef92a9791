"""Driving laser pulse: electric field, vector potential, focusing geometry.

Everything is in Hartree atomic units unless a unit suffix says otherwise
(``_nm``, ``_cm``, ``_Wcm2``).  Conventions used throughout the package:

* the electric field is ``F(t) = F0 * env(t) * sin(w0*t + cep)`` along the
  polarization axis, with a sine carrier referenced to the envelope start
  (t = 0) and a cos^2 field envelope of full duration ``duration_cycles * T``;
* the vector potential is ``A(t) = -int_0^t F dt''`` with ``A(0) = 0``, so a
  free electron released at rest at t' moves with velocity
  ``A(t) - A(t')`` (charge -1);
* intensities convert via ``F = sqrt(I / 3.50945e16)`` with I in W/cm^2.

The cos^2 field envelope has an intensity FWHM of 0.3636 times the full
duration (0.727 T for a two-cycle pulse).  A ``flat`` envelope (constant
amplitude over the support) is available for quasi-monochromatic checks.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline

ATOMIC_INTENSITY_WCM2 = 3.50945e16
SPEED_OF_LIGHT_AU = 137.035999084
BOHR_RADIUS_M = 5.29177210903e-11
BOHR_RADIUS_CM = BOHR_RADIUS_M * 100.0

# intensity-envelope FWHM of a cos^2 field envelope, as a fraction of the
# full duration: solves cos^4(pi u / tau) = 1/2
COS2_FWHM_FRACTION = 2.0 * math.acos(2.0 ** -0.25) / math.pi

_MIN_GRID_POINTS = 2 ** 14

_ENVELOPES = ("cos2", "flat")


def omega_au_from_wavelength_nm(wavelength_nm):
    """Carrier angular frequency in au for a vacuum wavelength in nm."""
    if wavelength_nm <= 0:
        raise ValueError("wavelength_nm must be positive")
    lam_au = wavelength_nm * 1e-9 / BOHR_RADIUS_M
    return 2.0 * math.pi * SPEED_OF_LIGHT_AU / lam_au


def wavelength_cm_from_omega_au(omega_au):
    if omega_au <= 0:
        raise ValueError("omega_au must be positive")
    lam_au = 2.0 * math.pi * SPEED_OF_LIGHT_AU / omega_au
    return lam_au * BOHR_RADIUS_CM


def field_au_from_intensity(intensity_Wcm2):
    """Peak field in au from a cycle-peak intensity in W/cm^2."""
    if np.any(np.asarray(intensity_Wcm2) < 0):
        raise ValueError("intensity_Wcm2 must be non-negative")
    return np.sqrt(np.asarray(intensity_Wcm2, dtype=float) / ATOMIC_INTENSITY_WCM2)


def intensity_from_field_au(field_au):
    """Inverse of :func:`field_au_from_intensity`."""
    f = np.asarray(field_au, dtype=float)
    if np.any(f < 0):
        raise ValueError("field_au must be non-negative")
    return f * f * ATOMIC_INTENSITY_WCM2


@dataclass(frozen=True)
class LaserPulse:
    """Linearly polarized few-cycle pulse.

    Parameters
    ----------
    peak_field_au :
        Envelope peak field F0.  For a sine carrier the instantaneous field
        maximum is below F0 because no carrier crest coincides with the
        envelope peak.
    carrier_frequency_au :
        Angular carrier frequency w0.
    duration_cycles :
        Full envelope duration in units of the optical period T = 2 pi / w0.
    envelope :
        "cos2" (default) or "flat".
    cep_rad :
        Carrier phase offset at the envelope start.
    polarization_axis :
        Unit vector; normalized on construction.
    """

    peak_field_au: float
    carrier_frequency_au: float
    duration_cycles: float
    envelope: str = "cos2"
    cep_rad: float = 0.0
    carrier_type: str = "sine"
    polarization_axis: tuple = (0.0, 0.0, 1.0)

    def __post_init__(self):
        if not (self.peak_field_au >= 0):
            raise ValueError("peak_field_au must be non-negative")
        if not (self.carrier_frequency_au > 0):
            raise ValueError("carrier_frequency_au must be positive")
        if not (self.duration_cycles > 0):
            raise ValueError("duration_cycles must be positive")
        if self.envelope not in _ENVELOPES:
            raise ValueError(f"envelope must be one of {_ENVELOPES}")
        if self.carrier_type != "sine":
            raise ValueError("only the sine carrier is supported")
        axis = np.asarray(self.polarization_axis, dtype=float)
        if axis.shape != (3,) or not np.all(np.isfinite(axis)):
            raise ValueError("polarization_axis must be a finite 3-vector")
        norm = float(np.linalg.norm(axis))
        if norm < 1e-12:
            raise ValueError("polarization_axis must be non-zero")
        object.__setattr__(self, "polarization_axis", tuple(axis / norm))

    @classmethod
    def from_wavelength(cls, wavelength_nm, duration_cycles, peak_field_au=None,
                        peak_intensity_Wcm2=None, **kwargs):
        """Build a pulse from a wavelength and either a field or an intensity.

        Exactly one of ``peak_field_au`` / ``peak_intensity_Wcm2`` must pin the
        amplitude; if both are given they must agree to 1e-6 relative.
        """
        omega = omega_au_from_wavelength_nm(wavelength_nm)
        if peak_field_au is None and peak_intensity_Wcm2 is None:
            raise ValueError("one of peak_field_au, peak_intensity_Wcm2 is required")
        if peak_intensity_Wcm2 is not None:
            f_from_i = float(field_au_from_intensity(peak_intensity_Wcm2))
            if peak_field_au is not None:
                if abs(peak_field_au - f_from_i) > 1e-6 * f_from_i:
                    raise ValueError(
                        "peak_field_au and peak_intensity_Wcm2 disagree; give one")
            peak_field_au = f_from_i
        return cls(peak_field_au=peak_field_au, carrier_frequency_au=omega,
                   duration_cycles=duration_cycles, **kwargs)

    @property
    def period_au(self):
        return 2.0 * math.pi / self.carrier_frequency_au

    @property
    def duration_au(self):
        return self.duration_cycles * self.period_au

    @property
    def envelope_fwhm_cycles(self):
        """Intensity-envelope FWHM in units of T (equals the duration if flat)."""
        if self.envelope == "flat":
            return self.duration_cycles
        return COS2_FWHM_FRACTION * self.duration_cycles

    @property
    def ponderomotive_energy_au(self):
        """Up at the envelope peak, F0^2 / (4 w0^2)."""
        return self.peak_field_au ** 2 / (4.0 * self.carrier_frequency_au ** 2)

    def envelope_at(self, t):
        t = np.asarray(t, dtype=float)
        if not np.all(np.isfinite(t)):
            raise ValueError("time samples must be finite")
        inside = (t >= 0.0) & (t <= self.duration_au)
        if self.envelope == "flat":
            return np.where(inside, 1.0, 0.0)
        x = np.sin(np.pi * np.clip(t, 0.0, self.duration_au) / self.duration_au)
        return np.where(inside, x * x, 0.0)

    def field_scalar(self, t):
        """Signed field amplitude along the polarization axis."""
        t = np.asarray(t, dtype=float)
        carrier = np.sin(self.carrier_frequency_au * t + self.cep_rad)
        return self.peak_field_au * self.envelope_at(t) * carrier

    def field_at(self, t):
        """Field vector(s); shape is t.shape + (3,)."""
        scal = np.asarray(self.field_scalar(t))
        axis = np.asarray(self.polarization_axis)
        return np.multiply.outer(scal, axis)

    def vector_potential(self, t):
        """A(t) along the polarization axis (scalar), from tabulated quadrature."""
        return grids(self).a(t)


class PulseGrids:
    """Uniform-grid antiderivatives of a pulse's field.

    Holds t, F(t), A(t) = -int F, int A, int A^2 and int F^2 on one shared
    grid (cumulative Simpson), plus cubic-spline evaluators for off-grid
    queries.  Everything downstream (classical trajectories, the strong-field
    dipole integral) reads these arrays rather than re-integrating.
    """

    def __init__(self, pulse, samples_per_cycle=8192):
        spc = int(samples_per_cycle)
        # keep at least 2^14 intervals over the pulse regardless of duration
        min_spc = int(math.ceil(_MIN_GRID_POINTS / pulse.duration_cycles))
        spc = max(spc, min_spc)
        n = int(round(spc * pulse.duration_cycles)) + 1
        self.pulse = pulse
        self.samples_per_cycle = spc
        self.t = np.linspace(0.0, pulse.duration_au, n)
        self.dt = self.t[1] - self.t[0]
        self.field = pulse.field_scalar(self.t)
        self.a_pot = -cumulative_simpson(self.field, dx=self.dt, initial=0.0)
        self.int_a = cumulative_simpson(self.a_pot, dx=self.dt, initial=0.0)
        self.int_a2 = cumulative_simpson(self.a_pot ** 2, dx=self.dt, initial=0.0)
        self.int_f2 = cumulative_simpson(self.field ** 2, dx=self.dt, initial=0.0)
        self._a_spline = None
        self._ia_spline = None

    @property
    def net_area_residual_au(self):
        """|A| at the pulse end; should be ~0 for a physical pulse."""
        return abs(float(self.a_pot[-1]))

    def a(self, t):
        """A(t), constant outside the support (the field there is zero)."""
        if self._a_spline is None:
            self._a_spline = CubicSpline(self.t, self.a_pot)
        t = np.asarray(t, dtype=float)
        return self._a_spline(np.clip(t, 0.0, self.t[-1]))

    def ia(self, t):
        """int_0^t A dt'', linearly continued past the pulse end."""
        if self._ia_spline is None:
            self._ia_spline = CubicSpline(self.t, self.int_a)
        t = np.asarray(t, dtype=float)
        tc = np.clip(t, 0.0, self.t[-1])
        out = self._ia_spline(tc)
        return out + (t - tc) * self.a_pot[-1]


@functools.lru_cache(maxsize=32)
def _cached_grids(pulse, samples_per_cycle):
    return PulseGrids(pulse, samples_per_cycle)


def grids(pulse, samples_per_cycle=8192):
    """Shared, cached :class:`PulseGrids` for a pulse."""
    return _cached_grids(pulse, int(samples_per_cycle))


@dataclass(frozen=True)
class FocusGeometry:
    """Gaussian-beam focusing of the fundamental.

    ``focus_z_cm`` is the focus position along propagation relative to the
    medium center (negative = focus upstream of the medium).  The confocal
    parameter b is twice the Rayleigh range; on-axis intensity a distance
    dz from the focus is peak / (1 + (2 dz / b)^2).
    """

    confocal_cm: float
    focus_z_cm: float = 0.0
    peak_intensity_Wcm2: float = field(default=2.0e14)

    def __post_init__(self):
        if not (self.confocal_cm > 0):
            raise ValueError("confocal_cm must be positive")
        if not (self.peak_intensity_Wcm2 > 0):
            raise ValueError("peak_intensity_Wcm2 must be positive")

    @property
    def rayleigh_cm(self):
        return 0.5 * self.confocal_cm

    def waist_cm(self, wavelength_cm, z_cm=None):
        """1/e^2 intensity radius at z_cm (relative to medium center)."""
        w0 = math.sqrt(self.rayleigh_cm * wavelength_cm / math.pi)
        if z_cm is None:
            return w0
        zeta = (np.asarray(z_cm, dtype=float) - self.focus_z_cm) / self.rayleigh_cm
        return w0 * np.sqrt(1.0 + zeta * zeta)

    def gaussian_beam_factor(self, wavelength_cm, z_cm, r_cm):
        """Complex TEM00 factor, normalized to 1 at the focus on axis.

        Carries the amplitude scaling, the radial Gaussian, the wavefront
        curvature phase ``k r^2 / (2 R(z))`` and the on-axis phase ``-atan``
        through focus.  The plane-wave ``k z`` factor common to drive and
        harmonics is omitted (it drops out of vacuum phase matching).
        """
        if wavelength_cm <= 0:
            raise ValueError("wavelength_cm must be positive")
        z = np.asarray(z_cm, dtype=float)
        r = np.asarray(r_cm, dtype=float)
        if np.any(r < 0):
            raise ValueError("r_cm must be non-negative")
        zr = self.rayleigh_cm
        dz = z - self.focus_z_cm
        zeta = dz / zr
        w0 = math.sqrt(zr * wavelength_cm / math.pi)
        w2 = w0 * w0 * (1.0 + zeta * zeta)
        k = 2.0 * math.pi / wavelength_cm
        # k r^2 / (2 R) with 1/R written zeta/(zr (1 + zeta^2)) to stay
        # finite at the focal plane
        inv_r = zeta / (zr * (1.0 + zeta * zeta))
        phase = 0.5 * k * r * r * inv_r - np.arctan(zeta)
        amp = np.exp(-r * r / w2) / np.sqrt(1.0 + zeta * zeta)
        return amp * np.exp(1j * phase)

    def intensity_at(self, wavelength_cm, z_cm, r_cm):
        """Local peak intensity (W/cm^2) of the focused fundamental."""
        g = self.gaussian_beam_factor(wavelength_cm, z_cm, r_cm)
        return self.peak_intensity_Wcm2 * np.abs(g) ** 2
