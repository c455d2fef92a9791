import numpy as np
from starkhhg import pulse as pls
from starkhhg import molecule as mol
from starkhhg import lewenstein as lew

pulse = pls.LaserPulse.from_wavelength(800.0, 2.0, peak_intensity_Wcm2=2.0e14)
par0 = mol.preset("CO")
parp = par0.flipped()
st = lew.DipoleSettings()

targets = (13, 15, 17, 19, 21, 23)

def curve(pc):
    h = pc.harmonic_order
    out = []
    for t in targets:
        k = np.argmin(np.abs(h - t))
        out.append(pc.phase_rad[k] if pc.reliable[k] else np.nan)
    return np.array(out)

# oriented theta=pi at cep=0
pc_pi = lew.stark_phase_run(pulse, parp, settings=st)
print("oriented pi :", np.array2string(curve(pc_pi), precision=3))

pc_0 = lew.stark_phase_run(pulse, par0, settings=st)
print("oriented 0  :", np.array2string(curve(pc_0), precision=3))

# aligned asym (reference values)
def aligned(sym, settings):
    kw = dict(settings=settings)
    d0w = lew.dipole_time_series(pulse, par0._replace_sym(sym) if False else par0, "first_order", settings)
    return None

def aligned_curve(settings):
    d0w = lew.dipole_time_series(pulse, par0, "first_order", settings)
    dpw = lew.dipole_time_series(pulse, parp, "first_order", settings)
    d00 = lew.dipole_time_series(pulse, par0, "none", settings)
    dp0 = lew.dipole_time_series(pulse, parp, "none", settings)
    alw = lew.DipoleSignal(d0w.t_au, d0w.data + dpw.data, pulse, par0, "first_order", settings)
    al0 = lew.DipoleSignal(d00.t_au, d00.data + dp0.data, pulse, par0, "none", settings)
    pc = lew.extract_stark_phase(lew.spectrum(alw), lew.spectrum(al0), par0.ip_au)
    return curve(pc)

print("aligned asym:", np.array2string(aligned_curve(st), precision=3))

# symmetric knob, default gate then short gate
st_sym = lew.DipoleSettings(symmetric_ionization=True)
print("aligned sym :", np.array2string(aligned_curve(st_sym), precision=3))

st_sym_short = lew.DipoleSettings(symmetric_ionization=True,
                                  tau_max_cycles=0.8, tau_rolloff_cycles=0.3)
print("aligned sym short:", np.array2string(aligned_curve(st_sym_short), precision=3))
