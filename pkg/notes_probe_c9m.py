import time

import numpy as np

from starkhhg import macroprop as mp
from starkhhg import molecule as mol
from starkhhg import pulse as pls
from starkhhg import starkphase as sp
from starkhhg import trajectories as tr

pulse = pls.LaserPulse.from_wavelength(800.0, 2.0, peak_intensity_Wcm2=1.0)
par = mol.preset("CO")
parpi = par.flipped()
focus = pls.FocusGeometry(confocal_cm=2.0, focus_z_cm=-0.70,
                          peak_intensity_Wcm2=3.0e14)
med = mp.MediumSpec(length_cm=0.5, number_density_cm3=5.0e14, n_slices=21)
num = mp.MacroNumerics(intensity_step_frac=0.02)

maps = {}
for name, p, m in (("0w", par, "first_order"), ("0n", par, "none"),
                   ("pw", parpi, "first_order"), ("pn", parpi, "none")):
    t0 = time.time()
    maps[name] = mp.propagate_jet(pulse, focus, med, p, m, numerics=num)
    print(name, f"{time.time() - t0:.1f}s", flush=True)

np.savez("notes_c9_maps.npz", omega=maps["0w"].omega_au,
         radial=maps["0w"].radial, weights=maps["0w"].radial_weights,
         r_max=maps["0w"].r_max_cm,
         **{"amp_" + k: maps[k].amp for k in maps})

import dataclasses
al_w = dataclasses.replace(maps["0w"], amp=maps["0w"].amp + maps["pw"].amp)
al_n = dataclasses.replace(maps["0n"], amp=maps["0n"].amp + maps["pn"].amp)

h_all = maps["0w"].harmonic_order
filt = mp.FilterSpec()

def avg_curve(mw, m0):
    fw = mp.filtered_refocused(mw, filt)
    f0 = mp.filtered_refocused(m0, filt)
    ph, rel = mp.extract_map_phase(fw, f0, par.ip_au)
    avg, defined = mp.radial_average_phase(ph, fw, rel)
    return avg, defined

avg0, def0 = avg_curve(maps["0w"], maps["0n"])
avgp, defp = avg_curve(maps["pw"], maps["pn"])
avga, defa = avg_curve(al_w, al_n)

sel = (h_all >= 13) & (h_all <= 23)
for tag, avg, dd in (("theta0", avg0, def0), ("thetapi", avgp, defp),
                     ("aligned", avga, defa)):
    m = sel & dd
    hh = h_all[m]
    idx = np.linspace(0, hh.size - 1, 8).astype(int)
    print(tag, " ".join(f"H{hh[i]:.1f}:{avg[m][i]:+.3f}" for i in idx),
          flush=True)

m = sel & defp & defa
diff = avga[m] - avgp[m]
print("C9a vs thetapi: rms_ref=%.3f rms_diff=%.3f ratio=%.3f"
      % (np.sqrt(np.mean(avgp[m] ** 2)), np.sqrt(np.mean(diff ** 2)),
         np.sqrt(np.mean(diff ** 2) / np.mean(avgp[m] ** 2))), flush=True)
m = sel & def0 & defa
diff = avga[m] - avg0[m]
print("C9a vs theta0: ratio=%.3f"
      % np.sqrt(np.mean(diff ** 2) / np.mean(avg0[m] ** 2)), flush=True)

# C8 at the coarser ladder, against the single-molecule reference
pulse_mid = pls.LaserPulse.from_wavelength(800.0, 2.0,
                                           peak_intensity_Wcm2=2.0e14)
table = tr.trajectory_table(pulse_mid, par)
for lo, hi in ((13.0, 23.0), (11.0, 25.0)):
    bsel = (h_all >= lo) & (h_all <= hi)
    om = maps["0w"].omega_au[bsel]
    ref = np.empty(om.size)
    ok = np.ones(om.size, dtype=bool)
    for i, o in enumerate(om):
        p1, below = sp.phase1_frequency_timedep(pulse_mid, par, table, o,
                                                branch="short")
        ref[i] = p1
        ok[i] = not below
    for scale in (1.0, 0.5, 2.0):
        fper = mp.FilterSpec(cutoff_scale=scale)
        fw = mp.filtered_refocused(maps["0w"], fper)
        f0 = mp.filtered_refocused(maps["0n"], fper)
        ph, rel = mp.extract_map_phase(fw, f0, par.ip_au)
        avg, defined = mp.radial_average_phase(ph, fw, rel)
        mm = defined[bsel] & ok & np.isfinite(ref)
        diff = avg[bsel][mm] - ref[mm]
        print("C8 band H%g-%g scale %.1f: ratio=%.3f (n=%d)"
              % (lo, hi, scale,
                 np.sqrt(np.mean(diff ** 2) / np.mean(ref[mm] ** 2)),
                 mm.sum()), flush=True)
print("done", flush=True)
