"""Scratch: pin C3/C4/C5/C6 numbers with current code before freezing acceptance."""
import time

import numpy as np

from starkhhg import lewenstein as lew
from starkhhg import molecule as mol
from starkhhg import pulse as pls
from starkhhg import trajectories as tr
from starkhhg import starkphase as sp

co = mol.preset("CO")
paper = pls.LaserPulse.from_wavelength(800.0, 2.0, peak_field_au=0.071)

# --- C3: analytic overestimate at H21 vs intensity
for inten in (1.5e14, 2.0e14, 2.5e14):
    p = pls.LaserPulse.from_wavelength(800.0, 2.0, peak_intensity_Wcm2=inten)
    t0 = time.time()
    curve = lew.stark_phase_run(p, co)
    h = curve.omega_au / p.carrier_frequency_au
    ok = curve.reliable
    k = np.argmin(np.abs(np.where(ok, h, -1e9) - 21.0))
    ex = abs(curve.phase_rad[k])
    p8 = abs(sp.phase1_analytic(co, curve.omega_au[k])[0])
    print("C3 I=%.1e H%.2f ex=%.3f p8=%.3f over=%+.1f%% (%.0fs)"
          % (inten, h[k], ex, p8, 100 * (p8 - ex) / ex, time.time() - t0),
          flush=True)

# --- C4/C5: plateau-end magnitude and exponent on the paper pulse
curve = lew.stark_phase_run(paper, co)
h = curve.omega_au / paper.carrier_frequency_au
table = tr.trajectory_table(paper, co)
h_cut = float(np.max(table.harmonic_order))
ok = curve.reliable
k = np.argmin(np.abs(np.where(ok, h, -1e9) - h_cut))
print("C4 cutoff H%.2f bin H%.2f |phi|=%.3f (0.5pi=%.3f)"
      % (h_cut, h[k], abs(curve.phase_rad[k]), 0.5 * np.pi), flush=True)
sel = ok & (h >= 11.0) & (h <= min(h_cut, 23.0))
x = np.log(curve.omega_au[sel] - co.ip_au)
y = np.log(np.abs(curve.phase_rad[sel]))
slope = np.polyfit(x, y, 1)[0]
print("C5 fit H11-%.1f n=%d slope=%.3f" % (min(h_cut, 23.0), sel.sum(), slope),
      flush=True)

# --- C6: second-order phase, candidate gates
GATES = {
    "default": lew.DipoleSettings(),
    "short065": lew.DipoleSettings(tau_max_cycles=0.65, tau_rolloff_cycles=0.2),
    "long": lew.DipoleSettings(tau_min_cycles=0.55, tau_min_rolloff_cycles=0.3,
                               tau_max_cycles=1.5),
}
for tag, settings in GATES.items():
    c2 = lew.stark_phase_run(paper, co, mode_with="first_and_second",
                             mode_without="first_order", settings=settings)
    hh = c2.omega_au / paper.carrier_frequency_au
    ok = c2.reliable & (hh >= 11.0) & (hh <= 23.0)
    vals = []
    for target in (13.0, 15.0, 17.0, 19.0, 21.0):
        k = np.argmin(np.abs(np.where(ok, hh, -1e9) - target))
        vals.append(c2.phase_rad[k])
    neg = np.mean(c2.phase_rad[ok] <= 1e-3)
    print("C6 %-8s H13/15/17/19/21 = %s  neg_frac=%.2f"
          % (tag, " ".join("%+.3f" % v for v in vals), neg), flush=True)
print("done", flush=True)
