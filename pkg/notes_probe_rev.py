import numpy as np
from starkhhg import pulse as pls
from starkhhg import molecule as mol
from starkhhg import lewenstein as lew

pulse = pls.LaserPulse.from_wavelength(800.0, 2.0, peak_intensity_Wcm2=2.0e14)
par0 = mol.preset("CO")
parp = par0.flipped()
st = lew.DipoleSettings()

d0 = lew.dipole_time_series(pulse, par0, "first_order", st)
dp = lew.dipole_time_series(pulse, parp, "first_order", st)

# reversal identity: d_pi(t) = -conj(d_0(2T - t))
n = d0.data.size
rev = np.empty_like(d0.data)
rev[0] = d0.data[0]
rev[1:] = d0.data[:0:-1]
pred = -np.conj(rev)
num = np.max(np.abs(dp.data - pred))
den = np.max(np.abs(d0.data))
print("reversal identity rel err:", num / den)

# aligned per-bin raw phase: quantized to {0,pi} mod pi after removing omega*T?
d0n = lew.dipole_time_series(pulse, par0, "none", st)
dpn = lew.dipole_time_series(pulse, parp, "none", st)

al_w = lew.DipoleSignal(d0.t_au, d0.data + dp.data, pulse, par0, "first_order", st)
al_0 = lew.DipoleSignal(d0.t_au, d0n.data + dpn.data, pulse, par0, "none", st)
sw = lew.spectrum(al_w)
s0 = lew.spectrum(al_0)
raw = np.angle(sw.amp * np.conj(s0.amp))
h = sw.harmonic_order
for target in (13, 15, 17, 19, 21, 23):
    k = np.argmin(np.abs(h - target))
    r = raw[k]
    dist = min(abs(r) % np.pi, np.pi - (abs(r) % np.pi))
    print(f"H{h[k]:6.2f} raw {r:+.4f}  dist-to-{{0,pi}} {dist:.4f}  "
          f"amps {np.abs(sw.amp[k]):.3e} {np.abs(s0.amp[k]):.3e}")
