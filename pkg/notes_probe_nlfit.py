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
st = lew.DipoleSettings()

pp = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=w0,
                    duration_cycles=2.0)
cut_h = trj.trajectory_table(pp, params).cutoff_omega_au / w0

d_w = lew.dipole_time_series(pp, params, "first_order", st)
d_0 = lew.dipole_time_series(pp, params, "none", st)

for obs in ("dipole", "acceleration"):
    s_w = lew.spectrum(d_w, observable=obs)
    s_0 = lew.spectrum(d_0, observable=obs)
    pc = lew.extract_stark_phase(s_w, s_0, ip)
    h = pc.harmonic_order
    for lo in (11.0, 13.0):
        m = (h >= lo) & (h <= cut_h) & pc.reliable
        x = h[m] * w0 - ip
        y = np.abs(pc.phase_rad[m])
        w = pc.amp_geo[m] ** 2
        sigma = 1.0 / np.sqrt(w / w.max())

        def f(x, c, p):
            return c * x ** p

        popt, _ = curve_fit(f, x, y, p0=[1.5, 0.6], sigma=sigma, maxfev=20000)
        print("%-13s band H%.0f..cut: C=%.3f p=%.3f" % (obs, lo, *popt))
