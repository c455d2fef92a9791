import numpy as np
import sys
sys.path.insert(0, "src")

from starkhhg import pulse as pls
from starkhhg import molecule as mol
from starkhhg import lewenstein as lew

params = mol.preset("CO")
w0 = pls.omega_au_from_wavelength_nm(800.0)
ip = params.ip_au
pp = pls.LaserPulse(peak_field_au=0.071, carrier_frequency_au=w0,
                    duration_cycles=2.0)

d_w = lew.dipole_time_series(pp, params, "first_order")
d_0 = lew.dipole_time_series(pp, params, "none")

# amplitude landscape and raw phase difference, windows compared
for win in ("cos8", "hann"):
    s_w = lew.spectrum(d_w, window=win)
    s_0 = lew.spectrum(d_0, window=win)
    h = s_w.omega_au / w0
    raw = np.angle(s_w.amp * np.conj(s_0.amp))
    amp = np.sqrt(np.abs(s_w.amp) * np.abs(s_0.amp))
    print(f"window={win}")
    for hv in (1, 3, 5, 7, 8, 9, 9.5, 10, 11, 12, 13, 15, 17, 21):
        i = np.argmin(np.abs(h - hv))
        print("  H%-5.1f amp=%.3e  raw_dphi=%+.3f" % (hv, amp[i], raw[i]))
    print()

# high-pass the complex dipole before windowing: zero-phase FFT filter
def highpass(sig, cut_au, width_au):
    n = sig.data.size
    om = 2 * np.pi * np.fft.fftfreq(n, d=sig.dt_au)
    x = np.abs(om)
    tr = np.clip((x - (cut_au - width_au)) / width_au, 0.0, 1.0)
    hmask = 0.5 * (1 - np.cos(np.pi * tr))
    out = lew.DipoleSignal(t_au=sig.t_au,
                           data=np.fft.ifft(np.fft.fft(sig.data) * hmask),
                           pulse=sig.pulse, params=sig.params,
                           stark_mode=sig.stark_mode, settings=sig.settings)
    return out

for cut in (0.85, 1.0):
    hw = highpass(d_w, cut * ip, 0.5 * w0)
    h0 = highpass(d_0, cut * ip, 0.5 * w0)
    s_w = lew.spectrum(hw)
    s_0 = lew.spectrum(h0)
    h = s_w.omega_au / w0
    raw = np.angle(s_w.amp * np.conj(s_0.amp))
    amp = np.sqrt(np.abs(s_w.amp) * np.abs(s_0.amp))
    above = h * w0 > ip
    floor = 0.02 * np.max(amp[above])
    rel = amp >= floor
    seed = int(np.nonzero(rel & above)[0][0])
    print(f"highpass cut={cut}*Ip: seed raw=%+.3f at H%.2f" % (raw[seed], h[seed]))
    for hv in (9.5, 10, 11, 12, 13, 15, 17, 21):
        i = np.argmin(np.abs(h - hv))
        print("  H%-5.1f amp=%.3e  raw_dphi=%+.3f" % (hv, amp[i], raw[i]))
    print()
