import numpy as np
import sys
sys.path.insert(0, "src")

from starkhhg import pulse as pls
from starkhhg import molecule as mol
from starkhhg import lewenstein as lew
from starkhhg import starkphase as sph

params = mol.preset("CO")
w0 = pls.omega_au_from_wavelength_nm(800.0)

for tau_max, roll in ((0.65, 0.1), (0.65, 0.15), (0.8, 0.1)):
    st = lew.DipoleSettings(tau_max_cycles=tau_max, tau_rolloff_cycles=roll)
    print(f"--- tau_max={tau_max} rolloff={roll} ---")
    for I in (1.5e14, 2.0e14, 2.5e14):
        f0 = pls.field_au_from_intensity(I)
        p = pls.LaserPulse(peak_field_au=f0, carrier_frequency_au=w0,
                           duration_cycles=2.0)
        pc = lew.stark_phase_run(p, params, "first_order", "none", settings=st)
        h = pc.harmonic_order
        outs = []
        for hh in (13, 15, 17, 19, 21, 23):
            i = np.argmin(np.abs(h - hh))
            a1, _ = sph.phase1_analytic(params, hh * w0, sign=1.0)
            outs.append("H%02d %+0.3f(%+.1f%%)" % (
                hh, pc.phase_rad[i],
                100 * (abs(a1) - abs(pc.phase_rad[i])) / abs(pc.phase_rad[i])))
        m = (h > 12.5) & (h < 24.0) & pc.reliable
        x = h[m] * w0 - params.ip_au
        ph = np.abs(pc.phase_rad[m])
        ok = (x > 0.01) & (ph > 1e-3)
        slope = np.polyfit(np.log(x[ok]), np.log(ph[ok]), 1)[0]
        i21 = np.argmin(np.abs(h - 21))
        a21, _ = sph.phase1_analytic(params, 21 * w0, sign=1.0)
        over21 = (abs(a21) - abs(pc.phase_rad[i21])) / abs(pc.phase_rad[i21])
        print(f"I={I:.1e}: exp={slope:.3f} over21={100*over21:+.1f}%  "
              + " ".join(outs))
    print()
