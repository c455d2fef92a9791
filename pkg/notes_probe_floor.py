import numpy as np
import sys
sys.path.insert(0, "src")

from starkhhg import pulse as pls
from starkhhg import molecule as mol
from starkhhg import lewenstein as lew
from starkhhg import trajectories as trj
from starkhhg import starkphase as sph

params = mol.preset("CO")
w0 = pls.omega_au_from_wavelength_nm(800.0)
ip = params.ip_au
st = lew.DipoleSettings()

pp = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=w0,
                    duration_cycles=2.0)
cut_h = trj.trajectory_table(pp, params).cutoff_omega_au / w0
a21, _ = sph.phase1_analytic(params, 21 * w0, sign=1.0)

d_w = lew.dipole_time_series(pp, params, "first_order", st)
d_0 = lew.dipole_time_series(pp, params, "none", st)
s_w = lew.spectrum(d_w)
s_0 = lew.spectrum(d_0)

runs = {}
for I in (1.5e14, 2.0e14, 2.5e14):
    f0 = pls.field_au_from_intensity(I)
    p2 = pls.LaserPulse(peak_field_au=f0, carrier_frequency_au=w0,
                        duration_cycles=2.0)
    dw = lew.dipole_time_series(p2, params, "first_order", st)
    d0 = lew.dipole_time_series(p2, params, "none", st)
    runs[I] = (lew.spectrum(dw), lew.spectrum(d0))


def wslope(h, ph, rel, amp, lo, hi):
    m = (h >= lo) & (h <= hi) & rel
    x = np.log(h[m] * w0 - ip)
    y = np.log(np.clip(np.abs(ph[m]), 1e-4, None))
    w = amp[m] ** 2
    W = np.sum(w)
    xb = np.sum(w * x) / W
    yb = np.sum(w * y) / W
    return np.sum(w * (x - xb) * (y - yb)) / np.sum(w * (x - xb) ** 2), int(np.sum(m))


for floor in (0.02, 0.1, 0.2, 0.3, 0.4, 0.5):
    pc = lew.extract_stark_phase(s_w, s_0, ip, rel_floor=floor)
    h = pc.harmonic_order
    icut = np.argmin(np.abs(h - cut_h))
    s11, n11 = wslope(h, pc.phase_rad, pc.reliable, pc.amp_geo, 11.0, cut_h)
    s13, n13 = wslope(h, pc.phase_rad, pc.reliable, pc.amp_geo, 13.0, cut_h)
    overs = []
    ok21 = []
    for I in (1.5e14, 2.0e14, 2.5e14):
        pci = lew.extract_stark_phase(*runs[I], ip, rel_floor=floor)
        hh = pci.harmonic_order
        j21 = np.argmin(np.abs(hh - 21))
        overs.append(100 * (abs(a21) - abs(pci.phase_rad[j21]))
                     / abs(pci.phase_rad[j21]))
        ok21.append(bool(pci.reliable[j21]))
    print("floor=%.2f: C5 H11=%.3f(n=%d) H13=%.3f(n=%d)  C4=%.3f rel=%s | "
          "C3 %+5.1f%% %+5.1f%% %+5.1f%% mono=%s H21rel=%s"
          % (floor, s11, n11, s13, n13, abs(pc.phase_rad[icut]),
             pc.reliable[icut], overs[0], overs[1], overs[2],
             overs[0] < overs[1] < overs[2], ok21))
