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


def curve(p, mode_w, mode_0, settings):
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
    ph = lew._unwrap_over_reliable(raw, rel, seed, pin_zero=False)
    return h, ph, rel, amp


def wslope(h, ph, rel, amp, lo, hi):
    m = (h >= lo) & (h <= hi) & rel
    x = np.log(h[m] * w0 - ip)
    y = np.log(np.clip(np.abs(ph[m]), 1e-4, None))
    w = amp[m] ** 2
    W = np.sum(w)
    xb = np.sum(w * x) / W
    yb = np.sum(w * y) / W
    return np.sum(w * (x - xb) * (y - yb)) / np.sum(w * (x - xb) ** 2)


st10 = lew.DipoleSettings()
a21, _ = sph.phase1_analytic(params, 21 * w0, sign=1.0)

for cep in (0.0, np.pi):
    pp = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=w0,
                        duration_cycles=2.0, cep_rad=cep)
    cut_h = trj.trajectory_table(pp, params).cutoff_omega_au / w0
    h, ph, rel, amp = curve(pp, "first_order", "none", st10)
    icut = np.argmin(np.abs(h - cut_h))
    vals = [ph[np.argmin(np.abs(h - hv))] for hv in (11, 13, 15, 17, 19, 21, 23)]
    print("cep=%.2f cut=H%.2f  ext H11..23: %s" %
          (cep, cut_h, " ".join("%+.3f" % v for v in vals)))
    print("   C4 |ph(cut)|=%.3f  C5 slope(H11..cut)=%.3f  slope(H13..cut)=%.3f"
          % (abs(ph[icut]), wslope(h, ph, rel, amp, 11.0, cut_h),
             wslope(h, ph, rel, amp, 13.0, cut_h)))
    overs = []
    for I in (1.5e14, 2.0e14, 2.5e14):
        f0 = pls.field_au_from_intensity(I)
        p = pls.LaserPulse(peak_field_au=f0, carrier_frequency_au=w0,
                           duration_cycles=2.0, cep_rad=cep)
        hh, pr, rl, am = curve(p, "first_order", "none", st10)
        j21 = np.argmin(np.abs(hh - 21))
        overs.append(100 * (abs(a21) - abs(pr[j21])) / abs(pr[j21]))
    print("   C3 overs: %+5.1f%% %+5.1f%% %+5.1f%%  mono=%s"
          % (overs[0], overs[1], overs[2], overs[0] < overs[1] < overs[2]))

# criterion 6 with a soft short gate vs full first returns
print()
st_short = lew.DipoleSettings(tau_max_cycles=0.8, tau_rolloff_cycles=0.3)
st_long = lew.DipoleSettings(tau_max_cycles=1.5)
for cep in (0.0, np.pi):
    pp = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=w0,
                        duration_cycles=2.0, cep_rad=cep)
    for tag, st in (("short0.8/0.3", st_short), ("long1.5", st_long)):
        h, ph2, rel, amp = curve(pp, "first_and_second", "first_order", st)
        vals = [ph2[np.argmin(np.abs(h - hv))] for hv in (13, 15, 17, 19, 21)]
        sel = rel & (h > 11) & (h < 23.6)
        print("cep=%.2f %-13s phi2 H13..21: %s  frac<=0: %.2f"
              % (cep, tag, " ".join("%+.3f" % v for v in vals),
                 np.mean(ph2[sel] <= 0)))
