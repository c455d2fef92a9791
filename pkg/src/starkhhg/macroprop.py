"""Reduced macroscopic build-up of the harmonic field over a thin gas jet.

The medium is optically thin and essentially unionized, so the fundamental
is the undepleted focused Gaussian beam and the harmonic field at the jet
exit is a phase-coherent sum of single-molecule responses over z slices and
radial nodes:

    F(w, r) = rho * dz * sum_z D(w; I(z, r)) * exp(i (w/w0) arg g(z, r))

with g the complex beam factor of :class:`starkhhg.pulse.FocusGeometry`.
The local response D is the windowed single-molecule spectrum at the local
peak intensity; the local carrier phase enters as the harmonic-order-scaled
phase factor above (envelope distortion of the phase transfer is neglected,
consistent with keying the source table by intensity alone).  The plane-wave
propagation phase k(w) z cancels between drive and harmonic in vacuum and
is dropped; phase matching acts through the Gouy and curvature phases and
the intensity-dependent dipole phase.

Near <-> far field conversion is the order-zero Hankel transform of
:mod:`starkhhg.hankel`; spatial filtering happens in the far plane on the
divergence coordinate theta = q / k(w).

Single-molecule runs are expensive, so by default they are computed on a
geometric intensity ladder (1% spacing) and interpolated: amplitude
linearly, phase linearly after unwrapping along the intensity axis.  The
``direct`` source recomputes every (z, r) node and exists for degenerate
equivalence tests.  Worker threads (STARKHHG_WORKERS) only split independent
single-molecule runs and merge in deterministic order, so results are
byte-identical for any worker count.
"""

from __future__ import annotations

import dataclasses
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import hankel as hk
from . import lewenstein as lew
from . import molecule as mol
from . import pulse as pls

PLANES = ("near", "far", "refocused")
FILTER_SHAPES = ("hard", "supergauss")
SOURCES = ("table", "direct")


def worker_count():
    """Thread count for independent single-molecule runs.

    Reads STARKHHG_WORKERS; defaults to min(8, cpu count).  Only the degree
    of parallelism is affected, never the result.
    """
    env = os.environ.get("STARKHHG_WORKERS", "").strip()
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("STARKHHG_WORKERS must be >= 1")
        return n
    return min(8, os.cpu_count() or 1)


@dataclass(frozen=True)
class MediumSpec:
    """Thin gas jet: length, density, slice count, center position.

    ``center_z_cm`` and ``FocusGeometry.focus_z_cm`` live on one z axis, so
    the focus-to-jet offset is set by their difference; the default center 0
    keeps the focus coordinate interpretable as "relative to jet center".
    """

    length_cm: float
    number_density_cm3: float
    n_slices: int = 21
    center_z_cm: float = 0.0

    def __post_init__(self):
        if not (self.length_cm > 0):
            raise ValueError("length_cm must be positive")
        if not (self.number_density_cm3 >= 0):
            raise ValueError("number_density_cm3 must be non-negative")
        if int(self.n_slices) != self.n_slices or self.n_slices < 1:
            raise ValueError("n_slices must be a positive integer")

    def slice_positions(self):
        """Midpoint z of each slice."""
        n = self.n_slices
        edges = np.linspace(-0.5 * self.length_cm, 0.5 * self.length_cm, n + 1)
        return self.center_z_cm + 0.5 * (edges[:-1] + edges[1:])


@dataclass(frozen=True)
class MacroNumerics:
    """Grid and source-table knobs for :func:`propagate_jet`."""

    n_radial: int = 128
    r_max_waists: float = 4.0
    intensity_step_frac: float = 0.01
    intensity_floor_frac: float = 0.02
    band_min_harmonic: float = 4.0
    band_max_harmonic: float = 30.0
    dipole_source: str = "table"

    def __post_init__(self):
        if int(self.n_radial) != self.n_radial or self.n_radial < 1:
            raise ValueError("n_radial must be a positive integer")
        if not (self.r_max_waists > 0):
            raise ValueError("r_max_waists must be positive")
        if not (0 < self.intensity_step_frac <= 0.5):
            raise ValueError("intensity_step_frac must be in (0, 0.5]")
        if not (0 <= self.intensity_floor_frac < 1):
            raise ValueError("intensity_floor_frac must be in [0, 1)")
        if not (0 < self.band_min_harmonic < self.band_max_harmonic):
            raise ValueError("need 0 < band_min_harmonic < band_max_harmonic")
        if self.dipole_source not in SOURCES:
            raise ValueError(f"dipole_source must be one of {SOURCES}")


@dataclass(frozen=True)
class FilterSpec:
    """Far-field spatial filter on the divergence coordinate.

    ``cutoff_rad = None`` picks the divergence radius enclosing half the
    far-field energy of ``reference_harmonic``, times ``cutoff_scale``.
    """

    shape: str = "hard"
    cutoff_rad: float | None = None
    cutoff_scale: float = 1.0
    order: int = 4
    reference_harmonic: float = 21.0

    def __post_init__(self):
        if self.shape not in FILTER_SHAPES:
            raise ValueError(f"shape must be one of {FILTER_SHAPES}")
        if self.cutoff_rad is not None and not (self.cutoff_rad > 0):
            raise ValueError("cutoff_rad must be positive")
        if not (self.cutoff_scale > 0):
            raise ValueError("cutoff_scale must be positive")
        if int(self.order) != self.order or self.order < 1:
            raise ValueError("order must be a positive integer")
        if not (self.reference_harmonic > 0):
            raise ValueError("reference_harmonic must be positive")


@dataclass(frozen=True, eq=False)
class FieldMap:
    """Complex harmonic amplitude on (omega, radial) grids.

    ``radial`` is r in cm for the near and refocused planes and the Hankel
    spatial frequency q in 1/cm for the far plane (the physical divergence
    angle is per-frequency, theta = q / k(omega); see :func:`divergence_rad`).
    ``radial_weights`` are the quadrature weights of int . r dr (resp.
    int . q dq) on the grid.
    """

    omega_au: np.ndarray
    radial: np.ndarray
    amp: np.ndarray
    plane: str
    carrier_frequency_au: float
    window: str
    observable: str
    pad_factor: int
    radial_weights: np.ndarray
    r_max_cm: float

    def __post_init__(self):
        if self.plane not in PLANES:
            raise ValueError(f"plane must be one of {PLANES}")
        om = np.asarray(self.omega_au, dtype=float)
        rad = np.asarray(self.radial, dtype=float)
        amp = np.asarray(self.amp)
        w = np.asarray(self.radial_weights, dtype=float)
        if amp.shape != (om.size, rad.size):
            raise ValueError("amp must have shape (n_omega, n_radial)")
        if w.shape != rad.shape:
            raise ValueError("radial_weights must match the radial grid")
        if rad.size > 1 and not np.all(np.diff(rad) > 0):
            raise ValueError("radial grid must be strictly increasing")
        if rad.size and rad[0] < 0:
            raise ValueError("radial grid must be non-negative")
        if not np.all(np.isfinite(amp)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "omega_au", om)
        object.__setattr__(self, "radial", rad)
        object.__setattr__(self, "amp", amp)
        object.__setattr__(self, "radial_weights", w)

    @property
    def harmonic_order(self):
        return self.omega_au / self.carrier_frequency_au

    def _meta(self):
        return (self.carrier_frequency_au, self.window, self.observable,
                self.pad_factor, float(self.r_max_cm))


def _spectral_band(pulse, params, settings, window, observable, pad_factor,
                   numerics):
    """Frequency grid of the local spectra, restricted to the working band."""
    zero = dataclasses.replace(pulse, peak_field_au=0.0)
    d = lew.dipole_time_series(zero, params, "none", settings)
    s = lew.spectrum(d, window=window, observable=observable,
                     pad_factor=pad_factor)
    h = s.omega_au / pulse.carrier_frequency_au
    idx = np.flatnonzero((h >= numerics.band_min_harmonic)
                         & (h <= numerics.band_max_harmonic))
    if idx.size < 8:
        raise ValueError("working band holds fewer than 8 spectral bins")
    band = slice(int(idx[0]), int(idx[-1]) + 1)
    return s.omega_au[band], band


def _band_response(pulse, params, mode, settings, window, observable,
                   pad_factor, band, field_au):
    p = dataclasses.replace(pulse, peak_field_au=float(field_au))
    d = lew.dipole_time_series(p, params, mode, settings)
    s = lew.spectrum(d, window=window, observable=observable,
                     pad_factor=pad_factor)
    return s.amp[band]


class _TableSource:
    """Geometric-ladder intensity table with (amp, unwrapped phase) interp."""

    def __init__(self, runner, intensities, step_frac):
        i_lo = float(np.min(intensities))
        i_hi = float(np.max(intensities))
        ratio = 1.0 + step_frac
        n = max(2, int(math.ceil(math.log(i_hi / i_lo) / math.log(ratio))) + 1)
        ladder = i_lo * ratio ** np.arange(n)
        ladder[-1] = max(ladder[-1], i_hi)
        fields = pls.field_au_from_intensity(ladder)
        with ThreadPoolExecutor(max_workers=worker_count()) as ex:
            rows = list(ex.map(runner, fields))
        tab = np.asarray(rows)
        self.log_i = np.log(ladder)
        self.mag = np.abs(tab)
        self.phase = np.unwrap(np.angle(tab), axis=0)

    def __call__(self, intensity):
        x = math.log(intensity)
        k = int(np.clip(np.searchsorted(self.log_i, x) - 1, 0,
                        self.log_i.size - 2))
        f = (x - self.log_i[k]) / (self.log_i[k + 1] - self.log_i[k])
        f = min(max(f, 0.0), 1.0)
        mag = self.mag[k] * (1.0 - f) + self.mag[k + 1] * f
        ph = self.phase[k] * (1.0 - f) + self.phase[k + 1] * f
        return mag * np.exp(1j * ph)


def propagate_jet(pulse, focus, medium, params, mode="first_order", *,
                  numerics=None, settings=None, window="cos8",
                  observable="dipole", pad_factor=8):
    """Near-field harmonic map at the jet exit.

    The pulse argument fixes carrier, envelope, duration and cep; its own
    amplitude is ignored, the local field comes from ``focus``.  Raises the
    bound-state validity error of :func:`starkhhg.molecule.ip_of_field_z`
    if the focal field is strong enough to unbind the Stark-shifted state.
    """
    if numerics is None:
        numerics = MacroNumerics()
    if settings is None:
        settings = lew.DipoleSettings()
    lam_cm = pls.wavelength_cm_from_omega_au(pulse.carrier_frequency_au)

    f0 = float(pls.field_au_from_intensity(focus.peak_intensity_Wcm2))
    mol.ip_of_field_z(params, f0)
    mol.ip_of_field_z(params, -f0)

    w_center = float(focus.waist_cm(lam_cm, medium.center_z_cm))
    r_max = numerics.r_max_waists * w_center
    if numerics.n_radial == 1:
        radial = np.array([0.0])
        weights = np.array([1.0])
    else:
        grid = hk.hankel_grid(numerics.n_radial, r_max)
        radial = grid.r
        weights = grid.weights_r

    z = medium.slice_positions()
    gfac = focus.gaussian_beam_factor(lam_cm, z[:, None], radial[None, :])
    inten = focus.peak_intensity_Wcm2 * np.abs(gfac) ** 2
    carrier = np.angle(gfac)

    omega, band = _spectral_band(pulse, params, settings, window, observable,
                                 pad_factor, numerics)
    h = omega / pulse.carrier_frequency_au
    amp = np.zeros((omega.size, radial.size), dtype=complex)

    if medium.number_density_cm3 > 0:
        floor = numerics.intensity_floor_frac * float(inten.max())
        live = inten >= max(floor, 1e-300)

        def runner(field_au):
            return _band_response(pulse, params, mode, settings, window,
                                  observable, pad_factor, band, field_au)

        if numerics.dipole_source == "table" and np.any(live):
            source = _TableSource(runner, inten[live],
                                  numerics.intensity_step_frac)
            for i in range(z.size):
                for j in range(radial.size):
                    if live[i, j]:
                        amp[:, j] += source(inten[i, j]) * np.exp(
                            1j * h * carrier[i, j])
        elif np.any(live):
            tasks = [(i, j) for i in range(z.size) for j in range(radial.size)
                     if live[i, j]]
            flds = [pls.field_au_from_intensity(inten[i, j]) for i, j in tasks]
            with ThreadPoolExecutor(max_workers=worker_count()) as ex:
                cols = list(ex.map(runner, flds))
            for (i, j), col in zip(tasks, cols):
                amp[:, j] += col * np.exp(1j * h * carrier[i, j])
        dz = medium.length_cm / medium.n_slices
        amp *= medium.number_density_cm3 * dz

    return FieldMap(omega_au=omega, radial=radial, amp=amp, plane="near",
                    carrier_frequency_au=pulse.carrier_frequency_au,
                    window=window, observable=observable,
                    pad_factor=pad_factor, radial_weights=weights,
                    r_max_cm=r_max)


def aligned_ensemble(pulse, focus, medium, params, mode="first_order", **kw):
    """Coherent equal-weight sum of the two head-to-tail orientations."""
    up = propagate_jet(pulse, focus, medium, params, mode, **kw)
    down = propagate_jet(pulse, focus, medium, params.flipped(), mode, **kw)
    return dataclasses.replace(up, amp=up.amp + down.amp)


def _hankel_for(fmap):
    return hk.hankel_grid(fmap.radial.size, fmap.r_max_cm)


def to_far_field(fmap):
    """Order-zero Hankel transform per frequency bin (near -> far)."""
    if fmap.plane not in ("near", "refocused"):
        raise ValueError("to_far_field needs a near-plane map")
    grid = _hankel_for(fmap)
    if not np.allclose(grid.r, fmap.radial, rtol=1e-12, atol=0.0):
        raise ValueError("radial grid is not the Hankel node set")
    return dataclasses.replace(fmap, radial=grid.q,
                               amp=hk.forward(grid, fmap.amp),
                               radial_weights=grid.weights_q, plane="far")


def to_near_field(fmap):
    """Inverse transform back to the refocused near plane."""
    if fmap.plane != "far":
        raise ValueError("to_near_field needs a far-plane map")
    grid = _hankel_for(fmap)
    if not np.allclose(grid.q, fmap.radial, rtol=1e-12, atol=0.0):
        raise ValueError("radial grid is not the Hankel frequency node set")
    return dataclasses.replace(fmap, radial=grid.r,
                               amp=hk.inverse(grid, fmap.amp),
                               radial_weights=grid.weights_r,
                               plane="refocused")


def divergence_rad(fmap, omega_au):
    """Far-field divergence angles theta = q / k(omega) of the radial nodes."""
    if fmap.plane != "far":
        raise ValueError("divergence is defined on the far plane")
    lam_cm = pls.wavelength_cm_from_omega_au(float(omega_au))
    return fmap.radial * lam_cm / (2.0 * math.pi)


def half_energy_divergence(fmap, harmonic=21.0):
    """Divergence radius enclosing half the energy of the given harmonic."""
    if fmap.plane != "far":
        raise ValueError("needs a far-plane map")
    k = int(np.argmin(np.abs(fmap.harmonic_order - harmonic)))
    energy = fmap.radial_weights * np.abs(fmap.amp[k]) ** 2
    total = energy.sum()
    if not (total > 0):
        raise ValueError("zero far-field energy at the reference harmonic")
    cum = np.cumsum(energy) / total
    theta = divergence_rad(fmap, fmap.omega_au[k])
    m = int(np.searchsorted(cum, 0.5))
    if m == 0:
        return float(theta[0])
    lo, hi = cum[m - 1], cum[m]
    f = (0.5 - lo) / (hi - lo)
    return float(theta[m - 1] + f * (theta[m] - theta[m - 1]))


def apply_filter(fmap, filt=None):
    """Multiply each frequency's radial profile by the filter transmission."""
    if fmap.plane != "far":
        raise ValueError("spatial filtering happens in the far plane")
    if filt is None:
        filt = FilterSpec()
    cutoff = filt.cutoff_rad
    if cutoff is None:
        cutoff = half_energy_divergence(fmap, filt.reference_harmonic)
    cutoff = cutoff * filt.cutoff_scale
    lam = (2.0 * math.pi * pls.SPEED_OF_LIGHT_AU / fmap.omega_au
           * pls.BOHR_RADIUS_CM)
    theta = fmap.radial[None, :] * lam[:, None] / (2.0 * math.pi)
    if filt.shape == "hard":
        trans = (theta <= cutoff).astype(float)
    else:
        trans = np.exp(-((theta / cutoff) ** (2 * filt.order)))
    return dataclasses.replace(fmap, amp=fmap.amp * trans)


def filtered_refocused(fmap, filt=None):
    """near -> far -> filter -> refocused, the standard analysis chain."""
    return to_near_field(apply_filter(to_far_field(fmap), filt))


def extract_map_phase(map_with, map_without, ip_au, rel_floor=0.02):
    """Per-radius phase extraction between two same-geometry maps.

    Returns (phase, reliable) arrays of shape (n_omega, n_radial); columns
    whose spectra never clear the reliability floor come back all-False.
    """
    if map_with.plane != map_without.plane:
        raise ValueError("maps live on different planes")
    if map_with._meta() != map_without._meta():
        raise ValueError("maps carry different spectral conventions")
    if not (np.allclose(map_with.omega_au, map_without.omega_au)
            and np.allclose(map_with.radial, map_without.radial)):
        raise ValueError("maps live on different grids")
    n_om, n_r = map_with.amp.shape
    phase = np.full((n_om, n_r), np.nan)
    reliable = np.zeros((n_om, n_r), dtype=bool)
    for j in range(n_r):
        sw = lew.HarmonicSpectrum(
            omega_au=map_with.omega_au, amp=map_with.amp[:, j],
            carrier_frequency_au=map_with.carrier_frequency_au,
            window=map_with.window, observable=map_with.observable,
            pad_factor=map_with.pad_factor)
        s0 = lew.HarmonicSpectrum(
            omega_au=map_without.omega_au, amp=map_without.amp[:, j],
            carrier_frequency_au=map_without.carrier_frequency_au,
            window=map_without.window, observable=map_without.observable,
            pad_factor=map_without.pad_factor)
        try:
            pc = lew.extract_stark_phase(sw, s0, ip_au, rel_floor=rel_floor)
        except ValueError:
            continue
        phase[:, j] = pc.phase_rad
        reliable[:, j] = pc.reliable
    return phase, reliable


def radial_average_phase(phase, fmap, reliable=None):
    """Intensity-weighted radial phase average.

    <phi>(w) = int phi |F|^2 r dr / int |F|^2 r dr on the map's quadrature;
    entries masked by ``reliable`` carry zero weight.  Returns (average,
    defined) where ``defined`` flags frequencies with non-vanishing total
    weight; undefined bins hold NaN.
    """
    phase = np.asarray(phase, dtype=float)
    if phase.shape != fmap.amp.shape:
        raise ValueError("phase map and field map shapes differ")
    w = fmap.radial_weights[None, :] * np.abs(fmap.amp) ** 2
    if reliable is not None:
        w = np.where(reliable, w, 0.0)
    phi = np.where(w > 0, phase, 0.0)
    denom = w.sum(axis=1)
    defined = denom > 0
    avg = np.full(phase.shape[0], np.nan)
    np.divide((w * phi).sum(axis=1), denom, out=avg, where=defined)
    return avg, defined
