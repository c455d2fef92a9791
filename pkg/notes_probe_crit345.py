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

for I in (1.5e14, 2.0e14, 2.5e14):
    f0 = pls.field_au_from_intensity(I)
    p = pls.LaserPulse(peak_field_au=f0, carrier_frequency_au=w0,
                       duration_cycles=2.0)
    pc = lew.stark_phase_run(p, params, "first_order", "none")
    h = pc.harmonic_order
    print(f"I={I:.1e}  F0={f0:.5f}  Up={p.ponderomotive_energy_au:.4f} "
          f"cutoff_h={(3.17*p.ponderomotive_energy_au+params.ip_au)/w0:.2f}")
    for hh in (13, 15, 17, 19, 21, 23):
        i = np.argmin(np.abs(h - hh))
        a1, _ = sph.phase1_analytic(params, hh * w0, sign=1.0)
        print("  H%02d  ext=%+.4f  rel=%s  eq8(+)=%+.4f  "
              "over_vs_+ = %+.3f  over_vs_- = %+.3f"
              % (hh, pc.phase_rad[i], pc.reliable[i], a1,
                 (abs(a1) - abs(pc.phase_rad[i])) / max(abs(pc.phase_rad[i]), 1e-12),
                 (abs(-a1) - abs(pc.phase_rad[i])) / max(abs(pc.phase_rad[i]), 1e-12)))
    # plateau shape: phase at all reliable bins H11..cutoff
    m = (h > 11) & (h < 24.5) & pc.reliable
    hh = h[m]; ph = pc.phase_rad[m]
    # sqrt fit vs (omega - Ip)
    x = hh * w0 - params.ip_au
    good = x > 0.01
    if np.sum(good) > 4 and np.all(np.abs(ph[good]) > 1e-3):
        slope = np.polyfit(np.log(x[good]), np.log(np.abs(ph[good])), 1)[0]
        print("  sqrt-fit exponent over H11-24 reliable bins: %.3f  (n=%d)"
              % (slope, np.sum(good)))
    print("  phase at plateau end (last reliable < H24): %+.4f  (0.5pi=%.4f)"
          % (ph[-1] if ph.size else np.nan, 0.5 * np.pi))
    print()
