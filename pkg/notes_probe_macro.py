import time

import numpy as np

from starkhhg import lewenstein as lew
from starkhhg import macroprop as mp
from starkhhg import molecule as mol
from starkhhg import pulse as pls

pulse = pls.LaserPulse.from_wavelength(800.0, 2.0, peak_intensity_Wcm2=1.0)
par = mol.preset("CO")
focus = pls.FocusGeometry(confocal_cm=2.0, focus_z_cm=0.0,
                          peak_intensity_Wcm2=2.0e14)
med1 = mp.MediumSpec(length_cm=0.5, number_density_cm3=5.0e14, n_slices=1,
                     center_z_cm=0.0)
num1 = mp.MacroNumerics(n_radial=1, dipole_source="direct")

# density zero
t0 = time.time()
z = mp.propagate_jet(pulse, focus,
                     mp.MediumSpec(0.5, 0.0, 1), par, "first_order",
                     numerics=num1)
print("zero map max:", np.abs(z.amp).max(), f"({time.time()-t0:.2f}s)")

# degenerate pipeline == single molecule
t0 = time.time()
mw = mp.propagate_jet(pulse, focus, med1, par, "first_order", numerics=num1)
m0 = mp.propagate_jet(pulse, focus, med1, par, "none", numerics=num1)
ph, rel = mp.extract_map_phase(mw, m0, par.ip_au)
print("macro runs:", f"{time.time()-t0:.2f}s")

pulse_loc = pls.LaserPulse.from_wavelength(800.0, 2.0,
                                           peak_intensity_Wcm2=2.0e14)
pc = lew.stark_phase_run(pulse_loc, par)
h = mw.harmonic_order
hs = pc.harmonic_order
band = (hs >= h[0] - 1e-9) & (hs <= h[-1] + 1e-9)
ref = pc.phase_rad[band]
refrel = pc.reliable[band]
dev = np.abs(ph[:, 0] - ref)[rel[:, 0] & refrel]
print("degenerate max |dphase|:", dev.max())
print("reliable agreement:", np.array_equal(rel[:, 0], refrel))

# linearity in density
med2 = mp.MediumSpec(length_cm=0.5, number_density_cm3=1.0e15, n_slices=1)
mw2 = mp.propagate_jet(pulse, focus, med2, par, "first_order", numerics=num1)
print("density doubling exact:", np.array_equal(mw2.amp, 2.0 * mw.amp))
