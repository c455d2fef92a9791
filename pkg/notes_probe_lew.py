import time
import numpy as np
import sys
sys.path.insert(0, "src")

from starkhhg import pulse as pls
from starkhhg import molecule as mol
from starkhhg import lewenstein as lew

params = mol.preset("CO")
print("params:", params)

# --- invariant: zero field -> zero dipole ---
p0 = pls.LaserPulse(peak_field_au=0.0, carrier_frequency_au=0.057, duration_cycles=2.0)
t0 = time.time()
d0 = lew.dipole_time_series(p0, params, "first_and_second")
print("compile+run zero-field: %.1f s" % (time.time() - t0))
print("zero-field max|d| =", np.max(np.abs(d0.data)))

# --- invariant: mode none == first_order at mu=0 (bitwise) ---
pm = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=0.057, duration_cycles=2.0)
params_mu0 = mol.StarkParameters(e0_au=-0.5150, mu_au=0.0, alpha_par_au=3.2,
                                 alpha_perp_au=2.8)
da = lew.dipole_time_series(pm, params_mu0, "none")
db = lew.dipole_time_series(pm, params_mu0, "first_order")
print("mu=0 none==first_order bitwise:", np.array_equal(da.data, db.data))

# --- timing on the paper pulse ---
t0 = time.time()
dn = lew.dipole_time_series(pm, params, "none")
t1 = time.time()
print("one dipole run: %.2f s, n=%d" % (t1 - t0, dn.data.size))

# --- spectrum sanity: plateau and cutoff ---
sp = lew.spectrum(dn, window="cos8", observable="dipole", pad_factor=8)
h = sp.harmonic_order
pw = np.abs(sp.amp) ** 2
up = pm.ponderomotive_energy_au
cut = (3.17 * up + params.ip_au) / pm.carrier_frequency_au
print("expected cutoff order: %.2f" % cut)
for hh in (11, 15, 19, 21, 23, 25, 27, 31):
    i = np.argmin(np.abs(h - hh))
    print("  H%02d  |F|^2 = %.3e" % (hh, pw[i]))
