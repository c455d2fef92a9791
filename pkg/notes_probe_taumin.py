import math
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


def dipole_gate(pulse, mode, tmin, tmin_roll, spc=4096):
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
    mu_par = params.mu_parallel_au
    int_ip = ip * t
    if mode in ("first_order", "first_and_second"):
        int_ip = int_ip + mu_par * (-a_pot)
    if mode == "first_and_second":
        int_ip = int_ip + 0.5 * params.alpha_parallel_au * int_f2
    jmax = min(int(round(1.0 * spc)), t.size - 1)
    tauv = dt * np.arange(jmax + 1)
    pref = (math.pi / (1e-4 + 0.5j * tauv)) ** 1.5
    wtau = np.full(jmax + 1, dt)
    wtau[0] = 0.0
    wtau[jmax] = 0.5 * dt
    ramp_n = int(round(0.1 * spc))
    x = np.linspace(0.0, 1.0, ramp_n)
    wtau[jmax - ramp_n + 1:] *= 0.5 * (1.0 + np.cos(math.pi * x))
    cyc = tauv / pulse.period_au
    if tmin > 0:
        gate = np.ones_like(cyc)
        gate[cyc < tmin] = 0.0
        ramp = (cyc >= tmin) & (cyc < tmin + tmin_roll)
        xx = (cyc[ramp] - tmin) / tmin_roll
        gate[ramp] = 0.5 * (1 - np.cos(math.pi * xx))
        wtau = wtau * gate
    kappa = math.sqrt(2.0 * ip)
    c_dip = 2.0 ** 3.5 * kappa ** 2.5 / math.pi
    c_wfn = 2.0 ** 1.5 * kappa ** 2.5 / math.pi
    data = lew._sfa_kernel(a_pot, int_a, int_a2, int_ip, fld, dt, jmax,
                           pref.astype(np.complex128), wtau, kappa * kappa,
                           -mu_par, c_dip, c_wfn)
    return lew.DipoleSignal(t_au=t, data=data, pulse=pulse, params=params,
                            stark_mode=mode, settings=lew.DipoleSettings())


def curve(p, tmin, troll):
    d_w = dipole_gate(p, "first_order", tmin, troll)
    d_0 = dipole_gate(p, "none", tmin, troll)
    s_w = lew.spectrum(d_w)
    s_0 = lew.spectrum(d_0)
    pc = lew.extract_stark_phase(s_w, s_0, ip)
    return pc.harmonic_order, pc.phase_rad, pc.reliable, pc.amp_geo


def wslope(h, ph, rel, amp, lo, hi):
    m = (h >= lo) & (h <= hi) & rel
    x = np.log(h[m] * w0 - ip)
    y = np.log(np.clip(np.abs(ph[m]), 1e-4, None))
    w = amp[m] ** 2
    W = np.sum(w)
    xb = np.sum(w * x) / W
    yb = np.sum(w * y) / W
    return np.sum(w * (x - xb) * (y - yb)) / np.sum(w * (x - xb) ** 2)


pp = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=w0,
                    duration_cycles=2.0)
cut_h = trj.trajectory_table(pp, params).cutoff_omega_au / w0
a21, _ = sph.phase1_analytic(params, 21 * w0, sign=1.0)

for tmin, troll in ((0.0, 0.0), (0.03, 0.04), (0.05, 0.05), (0.08, 0.07),
                    (0.12, 0.08)):
    h, ph, rel, amp = curve(pp, tmin, troll)
    icut = np.argmin(np.abs(h - cut_h))
    i1 = np.argmin(np.abs(h - 1))
    i9 = np.argmin(np.abs(h - 9))
    i21 = np.argmin(np.abs(h - 21))
    vals = [ph[np.argmin(np.abs(h - hv))] for hv in (11, 13, 15, 17)]
    print("tmin=%.2f/%.2f amps H1=%.1e H9=%.1e H21=%.1e | ext H11..17: %s"
          % (tmin, troll, amp[i1], amp[i9], amp[i21],
             " ".join("%+.3f" % v for v in vals)))
    print("   C4=%.3f  C5: H11=%.3f H13=%.3f H15=%.3f"
          % (abs(ph[icut]), wslope(h, ph, rel, amp, 11.0, cut_h),
             wslope(h, ph, rel, amp, 13.0, cut_h),
             wslope(h, ph, rel, amp, 15.0, cut_h)))
    overs = []
    for I in (1.5e14, 2.0e14, 2.5e14):
        f0 = pls.field_au_from_intensity(I)
        p2 = pls.LaserPulse(peak_field_au=f0, carrier_frequency_au=w0,
                            duration_cycles=2.0)
        hh, pr, rl, am = curve(p2, tmin, troll)
        j21 = np.argmin(np.abs(hh - 21))
        overs.append(100 * (abs(a21) - abs(pr[j21])) / abs(pr[j21]))
    print("   C3: %+5.1f%% %+5.1f%% %+5.1f%% mono=%s"
          % (overs[0], overs[1], overs[2], overs[0] < overs[1] < overs[2]))
