import numpy as np

from starkhhg import macroprop as mp
from starkhhg import molecule as mol
from starkhhg import pulse as pls
from starkhhg import starkphase as sp
from starkhhg import trajectories as tr

d = np.load("/root/pkg/notes_c8_maps.npz")
w0 = pls.omega_au_from_wavelength_nm(800.0)
common = dict(omega_au=d["omega"], radial=d["radial"], plane="near",
              carrier_frequency_au=w0, window="cos8", observable="dipole",
              pad_factor=8, radial_weights=d["weights"],
              r_max_cm=float(d["r_max"]))
mw = mp.FieldMap(amp=d["ampw"], **common)
m0 = mp.FieldMap(amp=d["amp0"], **common)
par = mol.preset("CO")

far = mp.to_far_field(mw)
print("half-energy divergence at H21 (rad):",
      mp.half_energy_divergence(far))

# single-molecule short-branch first-order reference at mid-jet intensity
pulse_mid = pls.LaserPulse.from_wavelength(800.0, 2.0,
                                           peak_intensity_Wcm2=2.0e14)
table = tr.trajectory_table(pulse_mid, par)
h_all = mw.harmonic_order

results = {}
for filt_scale in (0.5, 1.0, 2.0):
    filt = mp.FilterSpec(cutoff_scale=filt_scale)
    fw = mp.filtered_refocused(mw, filt)
    f0 = mp.filtered_refocused(m0, filt)
    ph, rel = mp.extract_map_phase(fw, f0, par.ip_au)
    avg, defined = mp.radial_average_phase(ph, fw, rel)
    results[filt_scale] = (avg, defined)
    sel = defined & (h_all >= 11) & (h_all <= 25)
    hh = h_all[sel]
    aa = avg[sel]
    idx = np.linspace(0, hh.size - 1, 10).astype(int)
    print(f"scale {filt_scale}: defined {sel.sum()} bins; ",
          " ".join(f"H{hh[i]:.2f}:{aa[i]:+.3f}" for i in idx))

for lo, hi in ((11.0, 25.0), (13.0, 24.0), (13.0, 23.0)):
    sel = (h_all >= lo) & (h_all <= hi)
    om = mw.omega_au[sel]
    ref = np.empty(om.size)
    ok = np.ones(om.size, dtype=bool)
    for i, o in enumerate(om):
        p1, below = sp.phase1_frequency_timedep(pulse_mid, par, table, o,
                                                branch="short")
        ref[i] = p1
        ok[i] = not below
    for filt_scale in (0.5, 1.0, 2.0):
        avg, defined = results[filt_scale]
        m = defined[sel] & ok & np.isfinite(ref)
        diff = avg[sel][m] - ref[m]
        rms_ref = np.sqrt(np.mean(ref[m] ** 2))
        rms_diff = np.sqrt(np.mean(diff ** 2))
        print(f"band H{lo}-{hi} scale {filt_scale}: n={m.sum()} "
              f"rms_ref={rms_ref:.3f} rms_diff={rms_diff:.3f} "
              f"ratio={rms_diff / rms_ref:.3f}")

# sample of the reference curve itself for the ledger
sel = (h_all >= 13) & (h_all <= 23)
om = mw.omega_au[sel]
hh = h_all[sel]
vals = []
for o, hv in zip(om, hh):
    if abs(hv - round(hv)) < 0.02 and round(hv) % 2 == 1:
        p1, below = sp.phase1_frequency_timedep(pulse_mid, par, table, o,
                                                branch="short")
        vals.append((round(hv), p1, below))
print("odd-harmonic reference:", " ".join(
    f"H{n}:{v:+.3f}{'!' if b else ''}" for n, v, b in vals))
