import os
import time

import numpy as np

from starkhhg import macroprop as mp
from starkhhg import molecule as mol
from starkhhg import pulse as pls
from starkhhg import starkphase as sp
from starkhhg import trajectories as tr

print("cpus:", os.cpu_count(), "workers:", mp.worker_count())

pulse = pls.LaserPulse.from_wavelength(800.0, 2.0, peak_intensity_Wcm2=1.0)
par = mol.preset("CO")
focus = pls.FocusGeometry(confocal_cm=2.0, focus_z_cm=-0.70,
                          peak_intensity_Wcm2=3.0e14)
med = mp.MediumSpec(length_cm=0.5, number_density_cm3=5.0e14, n_slices=21)
num = mp.MacroNumerics()

print("mid-jet I:", focus.intensity_at(
    pls.wavelength_cm_from_omega_au(pulse.carrier_frequency_au), 0.0, 0.0))

t0 = time.time()
mw = mp.propagate_jet(pulse, focus, med, par, "first_order", numerics=num)
print("with map:", f"{time.time()-t0:.1f}s")
t0 = time.time()
m0 = mp.propagate_jet(pulse, focus, med, par, "none", numerics=num)
print("none map:", f"{time.time()-t0:.1f}s")

np.savez("notes_c8_maps.npz", omega=mw.omega_au, radial=mw.radial,
         ampw=mw.amp, amp0=m0.amp, weights=mw.radial_weights,
         r_max=mw.r_max_cm)

for filt_scale in (1.0, 0.5, 2.0):
    filt = mp.FilterSpec(cutoff_scale=filt_scale)
    fw = mp.filtered_refocused(mw, filt)
    f0 = mp.filtered_refocused(m0, filt)
    ph, rel = mp.extract_map_phase(fw, f0, par.ip_au)
    avg, defined = mp.radial_average_phase(ph, fw, rel)
    h = fw.harmonic_order
    far = mp.to_far_field(mw)
    if filt_scale == 1.0:
        print("auto cutoff (rad):", mp.half_energy_divergence(far))
    sel = defined & (h >= 11) & (h <= 25)
    hh = h[sel]
    aa = avg[sel]
    idx = np.linspace(0, hh.size - 1, 12).astype(int)
    print(f"scale {filt_scale}: ", " ".join(
        f"H{hh[i]:.1f}:{aa[i]:+.3f}" for i in idx))

# single-molecule short-branch first-order reference at mid-jet intensity
pulse_mid = pls.LaserPulse.from_wavelength(800.0, 2.0,
                                           peak_intensity_Wcm2=2.0e14)
table = tr.trajectory_table(pulse_mid, par)
h = mw.harmonic_order
sel = (h >= 11) & (h <= 25)
om = mw.omega_au[sel]
ref = np.array([sp.phase1_frequency_timedep(pulse_mid, par, table, o,
                                            branch="short") for o in om])
print("ref eq7 at H13..H23:",
      " ".join(f"{sp.phase1_frequency_timedep(pulse_mid, par, table, k * pulse_mid.carrier_frequency_au):+.3f}" for k in (13, 15, 17, 19, 21, 23)))
np.savez("notes_c8_ref.npz", omega=om, ref=ref, h=h[sel])
