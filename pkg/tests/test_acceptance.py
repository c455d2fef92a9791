"""End-to-end acceptance suite.

Ten numbered criteria, each printing one PASS/FAIL line with the measured
numbers (run pytest with -s to see the lines for passing tests too).  The
macroscopic criteria (C8, C9a) share a session fixture that propagates four
jet maps on reduced grids; that build takes on the order of twenty minutes.

Two criteria are asserted at their stated gates even though the model does
not reach them; the analysis behind both is summarized next to the asserts:
C5 (square-root frequency scaling of the extracted phase) and C9b
(symmetric-ionization cancellation below 0.05 rad).
"""

import dataclasses
import math

import numpy as np
import pytest

from starkhhg import hankel as hk
from starkhhg import lewenstein as lew
from starkhhg import macroprop as mp
from starkhhg import molecule as mol
from starkhhg import pulse as pls
from starkhhg import starkphase as sp
from starkhhg import trajectories as trj

FAST = lew.DipoleSettings(samples_per_cycle=4096, tau_max_cycles=0.5,
                          tau_rolloff_cycles=0.1)


def _report(cid, ok, detail):
    print(f"{cid} {'PASS' if ok else 'FAIL'}: {detail}", flush=True)
    assert ok, f"{cid}: {detail}"


def _nearest_reliable(curve, carrier, target_h):
    h = curve.omega_au / carrier
    masked = np.where(curve.reliable, h, -1e9)
    return int(np.argmin(np.abs(masked - target_h)))


@pytest.fixture(scope="session")
def extracted_2e14(pulse2t, co):
    """First-order extraction on the reference two-cycle pulse (C4, C5)."""
    return lew.stark_phase_run(pulse2t, co)


@pytest.fixture(scope="session")
def jet_geometry():
    focus = pls.FocusGeometry(confocal_cm=2.0, focus_z_cm=-0.70,
                              peak_intensity_Wcm2=3.0e14)
    medium = mp.MediumSpec(length_cm=0.5, number_density_cm3=5.0e14,
                           n_slices=21)
    return focus, medium


@pytest.fixture(scope="session")
def macro_maps(pulse2t, co, jet_geometry):
    """Four jet propagations (both orientations, with and without the
    Stark phase) on the reduced intensity ladder; minutes each."""
    focus, medium = jet_geometry
    num = mp.MacroNumerics(intensity_step_frac=0.02)
    out = {}
    for key, params, mode in (("0w", co, "first_order"),
                              ("0n", co, "none"),
                              ("pw", co.flipped(), "first_order"),
                              ("pn", co.flipped(), "none")):
        out[key] = mp.propagate_jet(pulse2t, focus, medium, params, mode,
                                    numerics=num)
    return out


def _averaged_curve(map_with, map_without, ip_au, filt=None):
    fw = mp.filtered_refocused(map_with, filt)
    f0 = mp.filtered_refocused(map_without, filt)
    phase, reliable = mp.extract_map_phase(fw, f0, ip_au)
    return mp.radial_average_phase(phase, fw, reliable)


def test_c01_classical_cutoff_law(co):
    pulse = pls.LaserPulse.from_wavelength(800.0, 8.0,
                                           peak_intensity_Wcm2=2.0e14,
                                           envelope="flat")
    table = trj.trajectory_table(pulse, co, samples_per_cycle=512,
                                 field_free_ip=True)
    ratio = float(np.max(table.omega - co.ip_au)) / pulse.ponderomotive_energy_au
    dev = abs(ratio - 3.17) / 3.17
    _report("C1 classical cutoff law", dev <= 0.02,
            f"max return energy = {ratio:.4f} Up vs 3.17 "
            f"(deviation {100 * dev:.2f}%, gate 2%)")


def test_c02_phase_route_identity(pulse2t, co):
    rng = np.random.default_rng(20260822)
    td = pulse2t.duration_au
    period = pulse2t.period_au
    worst = 0.0
    for _ in range(1000):
        t_ion = rng.uniform(0.0, 0.9 * td)
        tau = rng.uniform(1e-3, min(1.5 * period, td - t_ion))
        quad = sp.phase1_time_integral(pulse2t, co, t_ion, t_ion + tau)
        impulse = sp.phase1_return_velocity(pulse2t, co, t_ion, t_ion + tau)
        worst = max(worst, abs(quad - impulse))
    _report("C2 phase route identity", worst < 1e-8,
            f"max |quadrature - return velocity| = {worst:.2e} rad "
            f"over 1000 random excursions (gate 1e-8)")


def test_c03_analytic_overestimate_trend(co):
    bands = {1.5e14: (4.0, 12.0), 2.0e14: (6.0, 14.0), 2.5e14: (8.0, 16.0)}
    overs = []
    for inten, (lo, hi) in bands.items():
        pulse = pls.LaserPulse.from_wavelength(800.0, 2.0,
                                               peak_intensity_Wcm2=inten)
        curve = lew.stark_phase_run(pulse, co)
        k = _nearest_reliable(curve, pulse.carrier_frequency_au, 21.0)
        ex = abs(curve.phase_rad[k])
        closed = abs(sp.phase1_analytic(co, curve.omega_au[k])[0])
        over = 100.0 * (closed - ex) / ex
        overs.append((inten, over, lo, hi))
    in_band = all(lo <= ov <= hi for _, ov, lo, hi in overs)
    monotone = overs[0][1] < overs[1][1] < overs[2][1]
    detail = ", ".join(f"{i:.1e}: {ov:+.1f}% (gate {lo:.0f}..{hi:.0f})"
                       for i, ov, lo, hi in overs)
    _report("C3 closed-form overestimate at H21", in_band and monotone,
            detail + ("; monotone" if monotone else "; NOT monotone"))


def test_c04_plateau_phase_magnitude(extracted_2e14, pulse2t, co):
    table = trj.trajectory_table(pulse2t, co)
    h_cut = float(np.max(table.harmonic_order))
    k = _nearest_reliable(extracted_2e14, pulse2t.carrier_frequency_au, h_cut)
    val = abs(extracted_2e14.phase_rad[k])
    target = 0.5 * math.pi
    ok = 0.75 * target <= val <= 1.25 * target
    _report("C4 plateau-end phase magnitude", ok,
            f"|phase| = {val:.3f} rad at H{h_cut:.1f} "
            f"(gate 0.5 pi +- 25% = {0.75 * target:.3f}..{1.25 * target:.3f})")


def test_c05_square_root_scaling(extracted_2e14, pulse2t, co):
    # The fitted exponent sits near 0.8 for every honest choice of fit
    # window, weighting, observable, window function, and excursion gate
    # (0.69..0.83 measured); quantum-path interference suppresses the
    # extracted phase at the plateau onset, and even the classical
    # short-branch curve fits ~0.63 on this band.  The gate is asserted
    # as stated rather than widened to match the model.
    h = extracted_2e14.omega_au / pulse2t.carrier_frequency_au
    table = trj.trajectory_table(pulse2t, co)
    h_cut = float(np.max(table.harmonic_order))
    sel = extracted_2e14.reliable & (h >= 11.0) & (h <= min(h_cut, 23.0))
    x = np.log(extracted_2e14.omega_au[sel] - co.ip_au)
    y = np.log(np.abs(extracted_2e14.phase_rad[sel]))
    slope = float(np.polyfit(x, y, 1)[0])
    _report("C5 square-root frequency scaling", abs(slope - 0.50) <= 0.10,
            f"fitted exponent = {slope:.3f} over H11-{min(h_cut, 23.0):.0f} "
            f"({int(sel.sum())} bins, gate 0.50 +- 0.10)")


def test_c06_second_order_sign_and_trend(pulse2t, co):
    long_gate = lew.DipoleSettings(tau_min_cycles=0.55,
                                   tau_min_rolloff_cycles=0.3,
                                   tau_max_cycles=1.5)
    runs = {}
    for tag, settings in (("short", lew.DipoleSettings()),
                          ("long", long_gate)):
        runs[tag] = lew.stark_phase_run(pulse2t, co,
                                        mode_with="first_and_second",
                                        mode_without="first_order",
                                        settings=settings)
    w0 = pulse2t.carrier_frequency_au
    neg_ok = True
    for curve in runs.values():
        h = curve.omega_au / w0
        plateau = curve.reliable & (h >= 11.0) & (h <= 23.0)
        neg_ok &= np.mean(curve.phase_rad[plateau] <= 1e-3) >= 0.95
    mags = {tag: [abs(c.phase_rad[_nearest_reliable(c, w0, t)])
                  for t in (13.0, 15.0, 17.0, 19.0, 21.0)]
            for tag, c in runs.items()}
    trend_ok = all(lg > sh for lg, sh in zip(mags["long"], mags["short"]))
    floor_ok = all(v >= 0.15 for v in mags["long"][2:])
    _report("C6 second-order sign and excursion trend",
            neg_ok and trend_ok and floor_ok,
            "long |phase2| H13-21 = ["
            + ", ".join(f"{v:.3f}" for v in mags["long"])
            + "] vs short ["
            + ", ".join(f"{v:.3f}" for v in mags["short"])
            + f"]; sign<=0 {neg_ok}, long>short {trend_ok}, "
            f">=0.15 rad at H17-21 {floor_ok}")


def test_c07_wavelength_scaling_identity(pulse2t, co):
    w0 = pulse2t.carrier_frequency_au
    ok = True
    details = []
    for field in (0.08, 0.06):
        p1 = dataclasses.replace(pulse2t, peak_field_au=field)
        p2 = dataclasses.replace(pulse2t, peak_field_au=0.5 * field,
                                 carrier_frequency_au=0.5 * w0)
        i1, i2 = sp.cutoff_and_scaling(p1, co), sp.cutoff_and_scaling(p2, co)
        same_up = i2.up_au == i1.up_au
        halved = (i2.phase2_cutoff_estimate_rad
                  == 0.5 * i1.phase2_cutoff_estimate_rad)
        ok &= same_up and halved
        details.append(f"F={field}: Up fixed {same_up}, "
                       f"estimate halved {halved}")
    _report("C7 wavelength scaling identity", ok,
            "; ".join(details) + " (bitwise)")


def test_c08_macroscopic_survival(macro_maps, jet_geometry, pulse2t, co):
    focus, _ = jet_geometry
    lam = pls.wavelength_cm_from_omega_au(pulse2t.carrier_frequency_au)
    mid = float(focus.intensity_at(lam, 0.0, 0.0))
    pulse_mid = pls.LaserPulse.from_wavelength(800.0, 2.0,
                                               peak_intensity_Wcm2=mid)
    table = trj.trajectory_table(pulse_mid, co)

    h = macro_maps["0w"].harmonic_order
    band = (h >= 13.0) & (h <= 23.0)
    omega = macro_maps["0w"].omega_au[band]
    ref = np.empty(omega.size)
    ok_ref = np.ones(omega.size, dtype=bool)
    for i, om in enumerate(omega):
        val, below = sp.phase1_frequency_timedep(pulse_mid, co, table, om,
                                                 branch="short")
        ref[i] = val
        ok_ref[i] = not below

    ratios = []
    for scale in (1.0, 0.5, 2.0):
        filt = mp.FilterSpec(cutoff_scale=scale)
        avg, defined = _averaged_curve(macro_maps["0w"], macro_maps["0n"],
                                       co.ip_au, filt)
        m = defined[band] & ok_ref & np.isfinite(ref)
        diff = avg[band][m] - ref[m]
        ratios.append(math.sqrt(np.mean(diff ** 2) / np.mean(ref[m] ** 2)))
    ok = all(r <= 0.30 for r in ratios)
    _report("C8 macroscopic survival", ok,
            "RMS deviation from the single-molecule short-branch curve "
            f"(H13-23, mid-jet {mid:.2e}) = "
            + "/".join(f"{r:.3f}" for r in ratios)
            + " at filter scales 1.0/0.5/2.0 (gate 0.30 each)")


def test_c09a_aligned_noncancellation(macro_maps, co):
    al_w = dataclasses.replace(macro_maps["0w"],
                               amp=macro_maps["0w"].amp
                               + macro_maps["pw"].amp)
    al_n = dataclasses.replace(macro_maps["0n"],
                               amp=macro_maps["0n"].amp
                               + macro_maps["pn"].amp)
    avg_al, def_al = _averaged_curve(al_w, al_n, co.ip_au)
    avg_or, def_or = _averaged_curve(macro_maps["pw"], macro_maps["pn"],
                                     co.ip_au)
    h = macro_maps["0w"].harmonic_order
    m = (h >= 13.0) & (h <= 23.0) & def_al & def_or
    rms_al = math.sqrt(np.mean(avg_al[m] ** 2))
    rms_or = math.sqrt(np.mean(avg_or[m] ** 2))
    ratio = math.sqrt(np.mean((avg_al[m] - avg_or[m]) ** 2)) / rms_or
    ok = ratio <= 0.50 and rms_al > 0.10
    _report("C9a aligned-ensemble non-cancellation", ok,
            f"aligned RMS {rms_al:.3f} rad (floor 0.10), deviation from the "
            f"dominant orientation {100 * ratio:.0f}% (gate 50%) over H13-23")


def test_c09b_symmetric_knob_cancellation(pulse2t, co):
    # With centered matrix elements the two orientations differ only through
    # the bound-state phase factors exp(+-i Phi1), so their coherent sum is
    # reweighted by cos(Phi1) per path: real, hence no first-order phase.
    # What remains is the second-order interference residual, O(Phi1^2),
    # and C4 requires Phi1 ~ 0.5 pi at the plateau end, which makes a
    # sub-0.05 rad residual unreachable wherever paths mix (about 1 rad
    # measured).  Asserted as stated.
    settings = lew.DipoleSettings(symmetric_ionization=True)
    d_up = lew.dipole_time_series(pulse2t, co, "first_order", settings)
    d_dn = lew.dipole_time_series(pulse2t, co.flipped(), "first_order",
                                  settings)
    d_ref = lew.dipole_time_series(pulse2t, co, "none", settings)
    d_ref_dn = lew.dipole_time_series(pulse2t, co.flipped(), "none", settings)
    assert np.array_equal(d_ref.data, d_ref_dn.data), \
        "symmetric field-free reference must be orientation independent"

    aligned = dataclasses.replace(d_up, data=d_up.data + d_dn.data)
    doubled = dataclasses.replace(d_ref, data=2.0 * d_ref.data)
    pc = lew.extract_stark_phase(lew.spectrum(aligned), lew.spectrum(doubled),
                                 co.ip_au)
    h = pc.omega_au / pulse2t.carrier_frequency_au
    m = pc.reliable & (h >= 11.0) & (h <= 23.0)
    worst = float(np.max(np.abs(pc.phase_rad[m])))
    at = float(h[m][np.argmax(np.abs(pc.phase_rad[m]))])
    _report("C9b symmetric-ionization cancellation", worst < 0.05,
            f"max |aligned phase| = {worst:.3f} rad at H{at:.1f} "
            f"over H11-23 (gate 0.05)")


def test_c10_property_suite(pulse2t, co, monkeypatch):
    # Hankel round trip on a smooth random profile
    rng = np.random.default_rng(7)
    grid = hk.hankel_grid(128, 0.02)
    f = np.zeros(grid.r.size)
    for _ in range(3):
        w = rng.uniform(0.002, 0.006)
        f = f + rng.uniform(0.5, 2.0) * np.exp(-(grid.r / w) ** 2)
    back = hk.inverse(grid, hk.forward(grid, f))
    hankel_err = float(np.max(np.abs(back - f)) / np.max(np.abs(f)))

    # energy conservation of the unwindowed, unpadded transform
    d = lew.dipole_time_series(pulse2t, co, "none", FAST)
    s = lew.spectrum(d, window="rect", pad_factor=1, two_sided=True)
    dw = s.omega_au[1] - s.omega_au[0]
    e_time = float(np.sum(np.abs(d.data) ** 2) * d.dt_au)
    e_freq = float(np.sum(np.abs(s.amp) ** 2) * abs(dw) / (2.0 * math.pi))
    parseval_err = abs(e_freq - e_time) / e_time

    # density linearity and thread-count determinism on a small jet
    focus = pls.FocusGeometry(confocal_cm=1.0, peak_intensity_Wcm2=1.2e14)
    num = mp.MacroNumerics(n_radial=1, r_max_waists=2.0,
                           intensity_step_frac=0.25,
                           band_min_harmonic=8.0, band_max_harmonic=16.0)
    med = mp.MediumSpec(length_cm=0.05, number_density_cm3=1.0, n_slices=1)
    kw = dict(numerics=num, settings=FAST)
    monkeypatch.setenv("STARKHHG_WORKERS", "1")
    m1 = mp.propagate_jet(pulse2t, focus, med, co, **kw)
    m2 = mp.propagate_jet(pulse2t, focus,
                          dataclasses.replace(med, number_density_cm3=2.0),
                          co, **kw)
    linear = np.array_equal(m2.amp, 2.0 * m1.amp)
    monkeypatch.setenv("STARKHHG_WORKERS", "3")
    m3 = mp.propagate_jet(pulse2t, focus, med, co, **kw)
    deterministic = m1.amp.tobytes() == m3.amp.tobytes()

    # the radially averaged phase is a convex combination per frequency
    hgrid = hk.hankel_grid(16, 0.02)
    amp = np.exp(-(hgrid.r / 0.004) ** 2)[None, :] * np.ones((5, 1))
    fmap = mp.FieldMap(omega_au=np.linspace(0.5, 1.5, 5), radial=hgrid.r,
                       amp=amp.astype(complex), plane="near",
                       carrier_frequency_au=0.057, window="cos8",
                       observable="dipole", pad_factor=8,
                       radial_weights=hgrid.weights_r, r_max_cm=0.02)
    col = np.linspace(-0.3, 0.8, hgrid.r.size)
    avg, defined = mp.radial_average_phase(
        np.broadcast_to(col, amp.shape).copy(), fmap)
    convex = bool(np.all(defined)
                  and np.all(avg >= col.min() - 1e-12)
                  and np.all(avg <= col.max() + 1e-12))

    ok = (hankel_err <= 1e-6 and parseval_err <= 1e-10 and linear
          and deterministic and convex)
    _report("C10 property suite", ok,
            f"hankel round trip {hankel_err:.1e} (gate 1e-6), "
            f"energy conservation {parseval_err:.1e} (gate 1e-10), "
            f"density linearity exact {linear}, "
            f"worker-count determinism {deterministic}, "
            f"radial average convex {convex}")
