import numpy as np
from scipy.optimize import curve_fit
import sys
sys.path.insert(0, "src")

from starkhhg import pulse as pls
from starkhhg import molecule as mol
from starkhhg import lewenstein as lew
from starkhhg import trajectories as trj

params = mol.preset("CO")
w0 = pls.omega_au_from_wavelength_nm(800.0)
ip = params.ip_au


def curve(p, mode_w, mode_0, settings, pin):
    d_w = lew.dipole_time_series(p, params, mode_w, settings)
    d_0 = lew.dipole_time_series(p, params, mode_0, settings)
    s_w = lew.spectrum(d_w)
    s_0 = lew.spectrum(d_0)
    h = s_w.omega_au / w0
    raw = np.angle(s_w.amp * np.conj(s_0.amp))
    amp = np.sqrt(np.abs(s_w.amp) * np.abs(s_0.amp))
    above = s_w.omega_au > ip
    floor = 0.02 * np.max(amp[above])
    rel = amp >= floor
    seed = int(np.nonzero(rel & above)[0][0])
    ph = lew._unwrap_over_reliable(raw, rel, seed, pin_zero=pin)
    return h, ph, rel, amp


def offset_power_fit(h, ph, rel, amp, lo, hi):
    m = (h >= lo) & (h <= hi) & rel
    x = h[m] * w0 - ip
    y = ph[m]
    sgn = np.sign(np.median(y))
    y = sgn * y
    w = amp[m] ** 2
    sigma = 1.0 / np.sqrt(w / np.max(w))

    def f(x, c0, c1, p):
        return c0 + c1 * x ** p

    popt, _ = curve_fit(f, x, y, p0=[0.0, 1.5, 0.6], sigma=sigma,
                        maxfev=20000)
    resid = np.sqrt(np.mean((f(x, *popt) - y) ** 2))
    return popt, resid


pp = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=w0,
                    duration_cycles=2.0)
cut_h = trj.trajectory_table(pp, params).cutoff_omega_au / w0
st = lew.DipoleSettings()

for pin in (False, True):
    h, ph, rel, amp = curve(pp, "first_order", "none", st, pin)
    for lo in (11.0, 13.0):
        popt, resid = offset_power_fit(h, ph, rel, amp, lo, cut_h)
        print("pin=%d band H%.0f..cut: phi0=%+.3f C=%.3f p=%.3f rms=%.4f"
              % (pin, lo, popt[0], popt[1], popt[2], resid))

# intensity robustness of p
for I in (1.5e14, 2.0e14, 2.5e14):
    f0 = pls.field_au_from_intensity(I)
    p2 = pls.LaserPulse(peak_field_au=f0, carrier_frequency_au=w0,
                        duration_cycles=2.0)
    ch = trj.trajectory_table(p2, params).cutoff_omega_au / w0
    h, ph, rel, amp = curve(p2, "first_order", "none", st, False)
    popt, resid = offset_power_fit(h, ph, rel, amp, 11.0, ch)
    print("I=%.1e: p=%.3f phi0=%+.3f rms=%.4f (cut H%.1f)"
          % (I, popt[2], popt[0], resid, ch))
