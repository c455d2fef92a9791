"""Strong-field-approximation dipole with a stark-shifted bound state.

The emitted dipole along the polarization axis is the excursion-time integral

    d(t) = i int_0^{tau_max} dtau  (pi / (eps + i tau/2))^(3/2)
           * conj(d_rec(v(t))) * d_ion(v(t-tau)) * F(t-tau) * exp(-i S)

with the stationary canonical momentum p = -(1/tau) int_{t-tau}^t A dt'',
kinetic momenta v = p + A, and the action

    S = int_{t-tau}^{t} [ (p + A)^2 / 2 + Ip_mode(t'') ] dt''.

``stark_mode`` selects what the bound state accumulates while the electron
is away: the field-free Ip alone ("none"), plus the linear dipole shift
("first_order"), plus the quadratic polarizability shift
("first_and_second").  Everything else is identical between modes, so phase
differences between two runs isolate the bound-state Stark phase.

The bound orbital is a single-center 1s-type state with effective charge
such that kappa^2/2 = Ip, displaced along the axis so that its charge
asymmetry matches the permanent dipole.  The displacement puts the electron
cloud on the side the molecular dipole points away from, which makes
ionization strongest when the field points along the dipole; a test knob
restores the symmetric (centered) matrix elements without touching the
action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from . import pulse as pls

STARK_MODES = ("none", "first_order", "first_and_second")

WINDOWS = ("rect", "hann", "cos4", "cos8")
OBSERVABLES = ("dipole", "acceleration")

_MIN_DIPOLE_SPC = 4096


@dataclass(frozen=True)
class DipoleSettings:
    """Numerical knobs of the dipole integral.

    ``tau_max_cycles`` truncates the excursion integral (1.0 keeps first
    returns; up to 1.5 admits longer excursions and their interference).
    ``tau_rolloff_cycles`` smoothly ramps the integrand to zero over that
    much excursion before the cutoff to avoid ringing from a hard edge; 0
    gives the hard truncation.  ``tau_min_cycles`` with its own ramp width
    excludes short excursions instead, isolating the long-excursion class
    (default 0 keeps everything).  ``symmetric_ionization`` replaces the
    displaced-orbital matrix elements by centered ones.
    """

    samples_per_cycle: int = 4096
    tau_max_cycles: float = 1.0
    epsilon_au: float = 1e-4
    tau_rolloff_cycles: float = 0.1
    tau_min_cycles: float = 0.0
    tau_min_rolloff_cycles: float = 0.0
    symmetric_ionization: bool = False

    def __post_init__(self):
        if int(self.samples_per_cycle) < _MIN_DIPOLE_SPC:
            raise ValueError(
                f"samples_per_cycle={self.samples_per_cycle} under-resolves the "
                f"plateau; need >= {_MIN_DIPOLE_SPC}")
        if not (0 < self.tau_max_cycles <= 1.5):
            raise ValueError("tau_max_cycles must be in (0, 1.5]")
        if not (self.epsilon_au > 0):
            raise ValueError("epsilon_au must be positive")
        if not (0 <= self.tau_rolloff_cycles < self.tau_max_cycles):
            raise ValueError("tau_rolloff_cycles must be in [0, tau_max_cycles)")
        if self.tau_min_cycles < 0 or self.tau_min_rolloff_cycles < 0:
            raise ValueError("tau_min gate parameters must be >= 0")
        full_lo = self.tau_min_cycles + self.tau_min_rolloff_cycles
        full_hi = self.tau_max_cycles - self.tau_rolloff_cycles
        if full_lo >= full_hi:
            raise ValueError("tau gate leaves no fully weighted excursion range")


@dataclass
class DipoleSignal:
    """Complex dipole time series plus the configuration that produced it."""

    t_au: np.ndarray
    data: np.ndarray
    pulse: object
    params: object
    stark_mode: str
    settings: DipoleSettings

    @property
    def dt_au(self):
        return float(self.t_au[1] - self.t_au[0])


@dataclass
class HarmonicSpectrum:
    omega_au: np.ndarray
    amp: np.ndarray
    carrier_frequency_au: float
    window: str
    observable: str
    pad_factor: int

    @property
    def harmonic_order(self):
        return self.omega_au / self.carrier_frequency_au


@dataclass
class PhaseCurve:
    """Unwrapped spectral phase difference between two runs."""

    omega_au: np.ndarray
    phase_rad: np.ndarray
    reliable: np.ndarray
    amp_geo: np.ndarray
    carrier_frequency_au: float

    @property
    def harmonic_order(self):
        return self.omega_au / self.carrier_frequency_au


@njit(cache=True, nogil=True)
def _sfa_kernel(a_pot, int_a, int_a2, int_ip, fld, dt, jmax, pref, wtau,
                kappa2, a_disp, c_dip, c_wfn):
    """Inner excursion integral; one output sample per recombination time.

    pref[j] and wtau[j] carry the spreading prefactor and the quadrature
    weight (including the soft tail mask) for excursion j*dt.  Matrix
    elements are the displaced 1s forms; a_disp = 0 recovers the symmetric
    orbital.
    """
    n = a_pot.size
    out = np.zeros(n, np.complex128)
    for i in range(n):
        jm = min(i, jmax)
        acc = 0.0 + 0.0j
        for j in range(1, jm + 1):
            ip = i - j
            f_ion = fld[ip]
            if f_ion == 0.0:
                continue
            tau = j * dt
            ia = int_a[i] - int_a[ip]
            p = -ia / tau
            s_act = (-ia * ia / (2.0 * tau)
                     + 0.5 * (int_a2[i] - int_a2[ip])
                     + (int_ip[i] - int_ip[ip]))
            vt = p + a_pot[i]
            vp = p + a_pot[ip]
            # recombination matrix element at vt
            q = vt * vt + kappa2
            mel_r = np.exp(-1j * vt * a_disp) * (
                -1j * c_dip * vt / (q * q * q) + a_disp * c_wfn / (q * q))
            # ionization matrix element at vp
            q = vp * vp + kappa2
            mel_i = np.exp(-1j * vp * a_disp) * (
                -1j * c_dip * vp / (q * q * q) + a_disp * c_wfn / (q * q))
            acc += (wtau[j] * pref[j] * np.conj(mel_r) * mel_i * f_ion
                    * np.exp(-1j * s_act))
        out[i] = 1j * acc
    return out


def dipole_time_series(pulse, params, stark_mode="none", settings=None):
    """Compute the complex SFA dipole of one molecule in one pulse.

    The time grid is uniform with ``settings.samples_per_cycle`` per optical
    cycle; field antiderivatives come from a twice-finer shared pulse grid so
    every mode of every run sees identical quadrature.
    """
    if stark_mode not in STARK_MODES:
        raise ValueError(f"stark_mode must be one of {STARK_MODES}")
    if settings is None:
        settings = DipoleSettings()
    spc = int(settings.samples_per_cycle)

    # the shared pulse grid enforces a minimum total density; pick the
    # smallest multiple of spc at or above both that and 2*spc, so the
    # dipole grid is an exact subsampling
    min_total = int(math.ceil(pls._MIN_GRID_POINTS / pulse.duration_cycles))
    master_spc = spc * max(2, int(math.ceil(min_total / spc)))
    g = pls.grids(pulse, master_spc)
    stride = g.samples_per_cycle // spc

    t = g.t[::stride].copy()
    fld = g.field[::stride].copy()
    a_pot = g.a_pot[::stride].copy()
    int_a = g.int_a[::stride].copy()
    int_a2 = g.int_a2[::stride].copy()
    int_f2 = g.int_f2[::stride].copy()
    dt = t[1] - t[0]

    ip0 = params.ip_au
    mu_par = params.mu_parallel_au
    alpha_par = params.alpha_parallel_au
    # cumulative integral of the mode's instantaneous Ip along the grid;
    # int F dt'' = -A by construction
    int_ip = ip0 * t
    if stark_mode in ("first_order", "first_and_second"):
        int_ip = int_ip + mu_par * (-a_pot)
    if stark_mode == "first_and_second":
        int_ip = int_ip + 0.5 * alpha_par * int_f2

    jmax = int(round(settings.tau_max_cycles * spc))
    jmax = min(jmax, t.size - 1)
    tau = dt * np.arange(jmax + 1)
    pref = (math.pi / (settings.epsilon_au + 0.5j * tau)) ** 1.5
    # trapezoid weights with smooth ramps at both gate edges
    wtau = np.full(jmax + 1, dt)
    wtau[0] = 0.0
    wtau[jmax] = 0.5 * dt
    if settings.tau_rolloff_cycles > 0:
        ramp_n = int(round(settings.tau_rolloff_cycles * spc))
        if ramp_n > 1:
            x = np.linspace(0.0, 1.0, ramp_n)
            wtau[jmax - ramp_n + 1:] *= 0.5 * (1.0 + np.cos(math.pi * x))
    if settings.tau_min_cycles > 0:
        cyc = tau / pulse.period_au
        lo = settings.tau_min_cycles
        ramp = settings.tau_min_rolloff_cycles
        gate = np.ones_like(cyc)
        gate[cyc < lo] = 0.0
        if ramp > 0:
            sel = (cyc >= lo) & (cyc < lo + ramp)
            x = (cyc[sel] - lo) / ramp
            gate[sel] = 0.5 * (1.0 - np.cos(math.pi * x))
        wtau = wtau * gate

    kappa = math.sqrt(2.0 * ip0)
    c_dip = 2.0 ** 3.5 * kappa ** 2.5 / math.pi
    c_wfn = 2.0 ** 1.5 * kappa ** 2.5 / math.pi
    a_disp = 0.0 if settings.symmetric_ionization else -mu_par

    data = _sfa_kernel(a_pot, int_a, int_a2, int_ip, fld, dt, jmax,
                       pref.astype(np.complex128), wtau, kappa * kappa,
                       a_disp, c_dip, c_wfn)
    return DipoleSignal(t_au=t, data=data, pulse=pulse, params=params,
                        stark_mode=stark_mode, settings=settings)


def window_array(name, n):
    """Full-span taper used before the spectral transform."""
    if name == "rect":
        return np.ones(n)
    x = np.sin(np.pi * np.arange(n) / (n - 1))
    if name == "hann":
        return x * x
    if name == "cos4":
        return x ** 4
    if name == "cos8":
        return x ** 8
    raise ValueError(f"window must be one of {WINDOWS}")


def spectrum(signal, window="cos8", observable="dipole", pad_factor=8,
             two_sided=False):
    """Windowed spectral transform F(w) = dt * sum s(t) win(t) exp(+i w t).

    ``pad_factor`` zero-pads the transform for a denser frequency read-out
    of the same continuous spectrum.  ``observable="acceleration"``
    multiplies the dipole spectrum by -w^2 (spectral differentiation).
    """
    if observable not in OBSERVABLES:
        raise ValueError(f"observable must be one of {OBSERVABLES}")
    if int(pad_factor) < 1:
        raise ValueError("pad_factor must be >= 1")
    s = signal.data * window_array(window, signal.data.size)
    n_fft = int(pad_factor) * s.size
    dt = signal.dt_au
    amp = dt * n_fft * np.fft.ifft(s, n=n_fft)
    omega = 2.0 * math.pi * np.fft.fftfreq(n_fft, d=dt)
    if not two_sided:
        keep = n_fft // 2
        amp = amp[:keep]
        omega = omega[:keep]
    if observable == "acceleration":
        amp = amp * (-(omega ** 2))
    w0 = signal.pulse.carrier_frequency_au
    return HarmonicSpectrum(omega_au=omega, amp=amp, carrier_frequency_au=w0,
                            window=window, observable=observable,
                            pad_factor=int(pad_factor))


def _unwrap_over_reliable(raw, reliable, seed, pin_zero=False):
    """Continuity-unwrap raw phases along the reliable bins only.

    Bins flagged unreliable keep their principal value; jumps across them do
    not contaminate the rest of the curve.  The seed bin either keeps its
    principal value (default) or is pinned to exactly zero.
    """
    out = raw.copy()
    idx = np.nonzero(reliable)[0]
    if idx.size == 0:
        return out
    pos = int(np.searchsorted(idx, seed))
    pos = min(pos, idx.size - 1)
    if pin_zero:
        out[idx[pos]] = 0.0
    # forward sweep
    for k in range(pos + 1, idx.size):
        prev, cur = idx[k - 1], idx[k]
        step = raw[cur] - raw[prev]
        out[cur] = out[prev] + math.remainder(step, 2.0 * math.pi)
    # backward sweep
    for k in range(pos - 1, -1, -1):
        nxt, cur = idx[k + 1], idx[k]
        step = raw[cur] - raw[nxt]
        out[cur] = out[nxt] + math.remainder(step, 2.0 * math.pi)
    return out


def extract_stark_phase(spec_with, spec_without, ip_au, rel_floor=0.02):
    """Unwrapped phase difference between two otherwise identical runs.

    Bins where the geometric-mean amplitude falls below ``rel_floor`` times
    its maximum above the ionization threshold are flagged unreliable
    (spectral minima; the raw difference there is interference-dominated),
    as is everything below the threshold itself, where the phase difference
    is dominated by below-threshold leakage.  The unwrap is seeded at the
    first reliable bin and keeps the seed's principal value, which is
    insensitive to the exact seed position.
    """
    for attr in ("window", "observable", "pad_factor"):
        if getattr(spec_with, attr) != getattr(spec_without, attr):
            raise ValueError("spectra were produced with different settings")
    if spec_with.omega_au.size != spec_without.omega_au.size or not np.allclose(
            spec_with.omega_au, spec_without.omega_au, rtol=0, atol=1e-12):
        raise ValueError("spectra live on different frequency grids")

    omega = spec_with.omega_au
    raw = np.angle(spec_with.amp * np.conj(spec_without.amp))
    amp_geo = np.sqrt(np.abs(spec_with.amp) * np.abs(spec_without.amp))
    above = omega > ip_au
    if not np.any(above):
        raise ValueError("frequency grid does not reach the ionization threshold")
    floor = rel_floor * np.max(amp_geo[above])
    reliable = (amp_geo >= floor) & above
    seed_candidates = np.nonzero(reliable)[0]
    if seed_candidates.size == 0:
        raise ValueError("no reliable bins above the ionization threshold")
    seed = int(seed_candidates[0])
    phase = _unwrap_over_reliable(raw, reliable, seed)
    return PhaseCurve(omega_au=omega, phase_rad=phase, reliable=reliable,
                      amp_geo=amp_geo,
                      carrier_frequency_au=spec_with.carrier_frequency_au)


def stark_phase_run(pulse, params, mode_with="first_order", mode_without="none",
                    settings=None, window="cos8", observable="dipole",
                    pad_factor=8, rel_floor=0.02):
    """Convenience pipeline: two dipole runs, two spectra, one phase curve."""
    d_w = dipole_time_series(pulse, params, mode_with, settings)
    d_0 = dipole_time_series(pulse, params, mode_without, settings)
    s_w = spectrum(d_w, window, observable, pad_factor)
    s_0 = spectrum(d_0, window, observable, pad_factor)
    return extract_stark_phase(s_w, s_0, params.ip_au, rel_floor)
