import math
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


def dipole_scaled(pulse, mode, disp_scale, spc=4096):
    st = lew.DipoleSettings()
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
    tau = dt * np.arange(jmax + 1)
    pref = (math.pi / (1e-4 + 0.5j * tau)) ** 1.5
    wtau = np.full(jmax + 1, dt)
    wtau[0] = 0.0
    wtau[jmax] = 0.5 * dt
    ramp_n = int(round(0.1 * spc))
    x = np.linspace(0.0, 1.0, ramp_n)
    wtau[jmax - ramp_n + 1:] *= 0.5 * (1.0 + np.cos(math.pi * x))
    kappa = math.sqrt(2.0 * ip)
    c_dip = 2.0 ** 3.5 * kappa ** 2.5 / math.pi
    c_wfn = 2.0 ** 1.5 * kappa ** 2.5 / math.pi
    a_disp = -disp_scale * mu_par
    data = lew._sfa_kernel(a_pot, int_a, int_a2, int_ip, fld, dt, jmax,
                           pref.astype(np.complex128), wtau, kappa * kappa,
                           a_disp, c_dip, c_wfn)
    return lew.DipoleSignal(t_au=t, data=data, pulse=pulse, params=params,
                            stark_mode=mode, settings=st)


def curves(pulse, disp_scale):
    d_w = dipole_scaled(pulse, "first_order", disp_scale)
    d_0 = dipole_scaled(pulse, "none", disp_scale)
    s_w = lew.spectrum(d_w)
    s_0 = lew.spectrum(d_0)
    h = s_w.omega_au / w0
    raw = np.angle(s_w.amp * np.conj(s_0.amp))
    amp = np.sqrt(np.abs(s_w.amp) * np.abs(s_0.amp))
    above = h * w0 > ip
    floor = 0.02 * np.max(amp[above])
    rel = amp >= floor
    seed = int(np.nonzero(rel & above)[0][0])
    ph_pr = lew._unwrap_over_reliable(raw, rel, seed, pin_zero=False)
    ph_p0 = lew._unwrap_over_reliable(raw, rel, seed, pin_zero=True)
    return h, ph_pr, ph_p0, rel, amp


def slope(h, ph, rel, amp, lo, hi, weighted=True):
    m = (h >= lo) & (h <= hi) & rel
    x = np.log(h[m] * w0 - ip)
    y = np.log(np.clip(np.abs(ph[m]), 1e-4, None))
    w = amp[m] ** 2 if weighted else np.ones(np.sum(m))
    W = np.sum(w)
    xb = np.sum(w * x) / W
    yb = np.sum(w * y) / W
    return np.sum(w * (x - xb) * (y - yb)) / np.sum(w * (x - xb) ** 2)


pp = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=w0,
                    duration_cycles=2.0)
cut_h = trj.trajectory_table(pp, params).cutoff_omega_au / w0
a21, _ = sph.phase1_analytic(params, 21 * w0, sign=1.0)

for ds in (1.0, 1.5, 2.0, 2.5):
    h, ph_pr, ph_p0, rel, amp = curves(pp, ds)
    i13 = np.argmin(np.abs(h - 13))
    i21 = np.argmin(np.abs(h - 21))
    s_pr = slope(h, ph_pr, rel, amp, 11.0, cut_h)
    s_p0 = slope(h, ph_p0, rel, amp, 11.0, cut_h)
    print("disp x%.1f: ext13=%+.3f ext21=%+.3f  slope pr=%.3f pin0=%.3f"
          % (ds, ph_pr[i13], ph_pr[i21], s_pr, s_p0))
    overs = []
    for I in (1.5e14, 2.0e14, 2.5e14):
        f0 = pls.field_au_from_intensity(I)
        p = pls.LaserPulse(peak_field_au=f0, carrier_frequency_au=w0,
                           duration_cycles=2.0)
        hh, pr, p0, rl, am = curves(p, ds)
        j21 = np.argmin(np.abs(hh - 21))
        overs.append(100 * (abs(a21) - abs(pr[j21])) / abs(pr[j21]))
    print("   C3 principal overs: %+.1f%% %+.1f%% %+.1f%%" % tuple(overs))
