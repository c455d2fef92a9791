import numpy as np
import sys
sys.path.insert(0, "src")

from starkhhg import pulse as pls
from starkhhg import molecule as mol
from starkhhg import lewenstein as lew
from starkhhg import trajectories as trj

params0 = mol.preset("CO")
params_pi = params0.flipped()
w0 = pls.omega_au_from_wavelength_nm(800.0)
ip = params0.ip_au

pp = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=w0,
                    duration_cycles=2.0)
cut_h = trj.trajectory_table(pp, params0).cutoff_omega_au / w0

for sym in (False, True):
    st = lew.DipoleSettings(symmetric_ionization=sym)
    d0_w = lew.dipole_time_series(pp, params0, "first_order", st)
    d0_0 = lew.dipole_time_series(pp, params0, "none", st)
    dp_w = lew.dipole_time_series(pp, params_pi, "first_order", st)
    dp_0 = lew.dipole_time_series(pp, params_pi, "none", st)

    al_w = lew.DipoleSignal(d0_w.t_au, d0_w.data + dp_w.data, pp, params0,
                            "first_order", st)
    al_0 = lew.DipoleSignal(d0_0.t_au, d0_0.data + dp_0.data, pp, params0,
                            "none", st)
    pc_or = lew.extract_stark_phase(lew.spectrum(d0_w), lew.spectrum(d0_0), ip)
    pc_al = lew.extract_stark_phase(lew.spectrum(al_w), lew.spectrum(al_0), ip)
    h = pc_or.harmonic_order
    print("symmetric_ionization=%s" % sym)
    for hv in (13, 15, 17, 19, 21, 23):
        i = np.argmin(np.abs(h - hv))
        o, a = pc_or.phase_rad[i], pc_al.phase_rad[i]
        print("  H%02d oriented=%+.3f aligned=%+.3f ratio=%.2f rel(al)=%s"
              % (hv, o, a, a / o if abs(o) > 1e-9 else np.nan,
                 pc_al.reliable[i]))
    m = pc_al.reliable & (h > 12) & (h < cut_h)
    print("  max|aligned| over plateau: %.4f  mean|aligned/oriented|: %.2f"
          % (np.max(np.abs(pc_al.phase_rad[m])),
             np.mean(np.abs(pc_al.phase_rad[m] / pc_or.phase_rad[m]))))
