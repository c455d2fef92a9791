import numpy as np
import sys
sys.path.insert(0, "src")

from starkhhg import pulse as pls
from starkhhg import molecule as mol
from starkhhg import lewenstein as lew
from starkhhg import starkphase as sph
from starkhhg import trajectories as trj

params = mol.preset("CO")
w0 = pls.omega_au_from_wavelength_nm(800.0)
ip = params.ip_au


def wslope(h, ph, amp, h_lo, h_hi):
    m = (h >= h_lo) & (h <= h_hi)
    x = h[m] * w0 - ip
    y = np.abs(ph[m])
    w = amp[m] ** 2
    ok = (x > 0) & (y > 1e-4)
    x, y, w = np.log(x[ok]), np.log(y[ok]), w[ok]
    W = np.sum(w)
    xb = np.sum(w * x) / W
    yb = np.sum(w * y) / W
    return np.sum(w * (x - xb) * (y - yb)) / np.sum(w * (x - xb) ** 2)


# classical eq7 reference for the paper pulse
pp = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=w0,
                    duration_cycles=2.0)
table = trj.trajectory_table(pp, params)
cut_h = table.cutoff_omega_au / w0
print("paper pulse classical cutoff: H%.2f" % cut_h)
hh7 = np.linspace(10.5, cut_h - 0.1, 120)
ph7 = np.empty_like(hh7)
for i, hcur in enumerate(hh7):
    v, below = sph.phase1_frequency_timedep(pp, params, table, hcur * w0, "short")
    ph7[i] = v
ok = np.abs(ph7) > 1e-6
for lo in (11, 13, 15):
    m = ok & (hh7 >= lo)
    s = np.polyfit(np.log(hh7[m] * w0 - ip), np.log(np.abs(ph7[m])), 1)[0]
    print("  eq7-short unweighted slope H%d..cut: %.3f" % (lo, s))
print("  eq7 at H13/15/17/19/21/23:",
      ["%+.3f" % sph.phase1_frequency_timedep(pp, params, table, hv * w0, "short")[0]
       for hv in (13, 15, 17, 19, 21, 23)])

for tau_max in (1.0, 1.25, 1.5):
    st = lew.DipoleSettings(tau_max_cycles=tau_max)
    pc = lew.stark_phase_run(pp, params, "first_order", "none", settings=st)
    h = pc.harmonic_order
    rel = pc.reliable
    print(f"tau_max={tau_max}:")
    vals = []
    for hv in (13, 15, 17, 19, 21, 23):
        i = np.argmin(np.abs(h - hv))
        vals.append("%+.3f%s" % (pc.phase_rad[i], "" if rel[i] else "?"))
    print("   ext at H13..H23:", vals)
    for lo, hi in ((11, cut_h), (13, cut_h), (15, cut_h), (11, 23.0), (13, 23.0)):
        hm = (h >= lo) & (h <= hi) & rel
        s = wslope(h[hm], pc.phase_rad[hm], pc.amp_geo[hm], lo, hi)
        su = np.polyfit(np.log(h[hm] * w0 - ip),
                        np.log(np.clip(np.abs(pc.phase_rad[hm]), 1e-4, None)), 1)[0]
        print("   band H%.0f..H%.1f: weighted=%.3f unweighted=%.3f (n=%d)"
              % (lo, hi, s, su, np.sum(hm)))

# criterion 3 re-check with the zero anchoring
print()
for I in (1.5e14, 2.0e14, 2.5e14):
    f0 = pls.field_au_from_intensity(I)
    p = pls.LaserPulse(peak_field_au=f0, carrier_frequency_au=w0,
                       duration_cycles=2.0)
    pc = lew.stark_phase_run(p, params, "first_order", "none")
    h = pc.harmonic_order
    i21 = np.argmin(np.abs(h - 21))
    a21, _ = sph.phase1_analytic(params, 21 * w0, sign=1.0)
    over = (abs(a21) - abs(pc.phase_rad[i21])) / abs(pc.phase_rad[i21])
    print("I=%.1e: ext(H21)=%+.4f  over=%+.1f%%  rel=%s"
          % (I, pc.phase_rad[i21], 100 * over, pc.reliable[i21]))
