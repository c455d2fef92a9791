"""Tests for macroscopic jet propagation and far-field analysis."""

import dataclasses
import math

import numpy as np
import pytest

from starkhhg import hankel as hk
from starkhhg import lewenstein as lew
from starkhhg import macroprop as mp
from starkhhg import molecule as mol
from starkhhg import pulse as pls

TINY = lew.DipoleSettings(samples_per_cycle=4096, tau_max_cycles=0.5,
                          tau_rolloff_cycles=0.1)


def _point_numerics(**kw):
    base = dict(n_radial=1, r_max_waists=2.0, intensity_step_frac=0.25,
                band_min_harmonic=8.0, band_max_harmonic=16.0)
    base.update(kw)
    return mp.MacroNumerics(**base)


# ---------------------------------------------------------------------------
# dataclass validation


def test_medium_validation():
    with pytest.raises(ValueError, match="length"):
        mp.MediumSpec(length_cm=0.0, number_density_cm3=1.0)
    with pytest.raises(ValueError, match="density"):
        mp.MediumSpec(length_cm=0.1, number_density_cm3=-1.0)
    with pytest.raises(ValueError, match="n_slices"):
        mp.MediumSpec(length_cm=0.1, number_density_cm3=1.0, n_slices=0)


def test_slice_positions_are_midpoints():
    med = mp.MediumSpec(length_cm=0.4, number_density_cm3=1.0, n_slices=4,
                        center_z_cm=0.1)
    np.testing.assert_allclose(med.slice_positions(),
                               [-0.05, 0.05, 0.15, 0.25], atol=1e-15)
    one = mp.MediumSpec(length_cm=0.2, number_density_cm3=1.0, n_slices=1,
                        center_z_cm=-0.3)
    np.testing.assert_allclose(one.slice_positions(), [-0.3], atol=1e-15)


def test_numerics_validation():
    with pytest.raises(ValueError, match="n_radial"):
        mp.MacroNumerics(n_radial=0)
    with pytest.raises(ValueError, match="r_max"):
        mp.MacroNumerics(r_max_waists=0.0)
    with pytest.raises(ValueError, match="step"):
        mp.MacroNumerics(intensity_step_frac=0.6)
    with pytest.raises(ValueError, match="floor"):
        mp.MacroNumerics(intensity_floor_frac=1.0)
    with pytest.raises(ValueError, match="band"):
        mp.MacroNumerics(band_min_harmonic=30.0, band_max_harmonic=4.0)
    with pytest.raises(ValueError, match="source"):
        mp.MacroNumerics(dipole_source="oracle")


def test_filter_validation():
    with pytest.raises(ValueError, match="shape"):
        mp.FilterSpec(shape="gauss")
    with pytest.raises(ValueError, match="cutoff_rad"):
        mp.FilterSpec(cutoff_rad=0.0)
    with pytest.raises(ValueError, match="cutoff_scale"):
        mp.FilterSpec(cutoff_scale=0.0)
    with pytest.raises(ValueError, match="order"):
        mp.FilterSpec(order=0)
    with pytest.raises(ValueError, match="reference"):
        mp.FilterSpec(reference_harmonic=-21.0)


def test_fieldmap_validation():
    om = np.array([0.5, 0.6])
    rad = np.array([0.0, 1.0, 2.0])
    ok = dict(omega_au=om, radial=rad, amp=np.zeros((2, 3), complex),
              plane="near", carrier_frequency_au=0.057, window="cos8",
              observable="dipole", pad_factor=8,
              radial_weights=np.ones(3), r_max_cm=2.0)
    m = mp.FieldMap(**ok)
    np.testing.assert_allclose(m.harmonic_order, om / 0.057, rtol=1e-15)
    with pytest.raises(ValueError, match="plane"):
        mp.FieldMap(**{**ok, "plane": "mid"})
    with pytest.raises(ValueError, match="shape"):
        mp.FieldMap(**{**ok, "amp": np.zeros((3, 2), complex)})
    with pytest.raises(ValueError, match="weights"):
        mp.FieldMap(**{**ok, "radial_weights": np.ones(2)})
    with pytest.raises(ValueError, match="increasing"):
        mp.FieldMap(**{**ok, "radial": rad[::-1].copy()})
    with pytest.raises(ValueError, match="non-negative"):
        mp.FieldMap(**{**ok, "radial": rad - 1.0})
    bad = np.zeros((2, 3), complex)
    bad[1, 1] = np.nan
    with pytest.raises(ValueError, match="finite"):
        mp.FieldMap(**{**ok, "amp": bad})


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("STARKHHG_WORKERS", "3")
    assert mp.worker_count() == 3
    monkeypatch.setenv("STARKHHG_WORKERS", "0")
    with pytest.raises(ValueError):
        mp.worker_count()
    monkeypatch.delenv("STARKHHG_WORKERS")
    assert mp.worker_count() >= 1


# ---------------------------------------------------------------------------
# propagation


def test_zero_density_map_is_zero(pulse2t, co):
    """An empty jet radiates nothing but still defines the working grids."""
    focus = pls.FocusGeometry(confocal_cm=1.0, peak_intensity_Wcm2=1.2e14)
    med = mp.MediumSpec(length_cm=0.05, number_density_cm3=0.0, n_slices=3)
    num = _point_numerics(n_radial=8)
    m = mp.propagate_jet(pulse2t, focus, med, co, numerics=num, settings=TINY)
    assert m.plane == "near"
    assert m.amp.shape == (m.omega_au.size, 8)
    assert np.all(m.amp == 0)
    h = m.harmonic_order
    assert h.size >= 8
    assert h[0] >= num.band_min_harmonic - 1e-9
    assert h[-1] <= num.band_max_harmonic + 1e-9
    assert np.all(np.diff(m.omega_au) > 0)


def test_density_scaling_is_exact(pulse2t, co):
    """Doubling the number density doubles every amplitude bitwise."""
    focus = pls.FocusGeometry(confocal_cm=1.0, peak_intensity_Wcm2=1.2e14)
    num = _point_numerics()
    kw = dict(numerics=num, settings=TINY)
    med1 = mp.MediumSpec(length_cm=0.05, number_density_cm3=1.0, n_slices=1)
    med2 = dataclasses.replace(med1, number_density_cm3=2.0)
    m1 = mp.propagate_jet(pulse2t, focus, med1, co, **kw)
    m2 = mp.propagate_jet(pulse2t, focus, med2, co, **kw)
    assert np.array_equal(m2.amp, 2.0 * m1.amp)


@pytest.mark.parametrize("source", mp.SOURCES)
def test_single_point_jet_matches_single_molecule(pulse2t, co, source):
    """A one-slice, on-axis jet reduces to the single-molecule spectrum."""
    peak = 1.2e14
    focus = pls.FocusGeometry(confocal_cm=1.0, peak_intensity_Wcm2=peak)
    med = mp.MediumSpec(length_cm=1e-4, number_density_cm3=1.0, n_slices=1)
    num = _point_numerics(dipole_source=source)
    m = mp.propagate_jet(pulse2t, focus, med, co, numerics=num, settings=TINY)

    p = dataclasses.replace(pulse2t,
                            peak_field_au=float(pls.field_au_from_intensity(peak)))
    d = lew.dipole_time_series(p, co, "first_order", TINY)
    s = lew.spectrum(d, window="cos8", observable="dipole", pad_factor=8)
    i0 = int(np.searchsorted(s.omega_au, m.omega_au[0]))
    sl = slice(i0, i0 + m.omega_au.size)
    assert np.array_equal(s.omega_au[sl], m.omega_au)
    expect = s.amp[sl] * med.number_density_cm3 * med.length_cm
    scale = np.max(np.abs(expect))
    if source == "direct":
        assert np.array_equal(m.amp[:, 0], expect)
    else:
        np.testing.assert_allclose(m.amp[:, 0], expect, rtol=1e-10,
                                   atol=1e-13 * scale)


def test_aligned_ensemble_doubles_symmetric_molecule(pulse2t):
    """With no permanent dipole the two orientations radiate identically."""
    sym = mol.StarkParameters(e0_au=-0.515, mu_au=0.0, alpha_par_au=3.2,
                              alpha_perp_au=2.8)
    focus = pls.FocusGeometry(confocal_cm=1.0, peak_intensity_Wcm2=1.2e14)
    med = mp.MediumSpec(length_cm=0.05, number_density_cm3=1.0, n_slices=1)
    kw = dict(numerics=_point_numerics(), settings=TINY)
    up = mp.propagate_jet(pulse2t, focus, med, sym, **kw)
    al = mp.aligned_ensemble(pulse2t, focus, med, sym, **kw)
    assert np.array_equal(al.amp, 2.0 * up.amp)


def test_propagate_rejects_unbinding_focus(pulse2t):
    rigid = mol.StarkParameters(e0_au=-0.5, mu_au=1.2, alpha_par_au=0.0,
                                alpha_perp_au=0.0)
    focus = pls.FocusGeometry(confocal_cm=1.0, peak_intensity_Wcm2=7e15)
    med = mp.MediumSpec(length_cm=0.05, number_density_cm3=1.0, n_slices=1)
    with pytest.raises(mol.UnboundStateError):
        mp.propagate_jet(pulse2t, focus, med, rigid,
                         numerics=_point_numerics(), settings=TINY)


# ---------------------------------------------------------------------------
# plane transforms and filtering on synthetic maps


def _synthetic_near_map(n_radial=64, r_max=0.02, waist=0.004, carrier=0.057,
                        orders=None):
    if orders is None:
        orders = np.linspace(10.0, 26.0, 9)
    grid = hk.hankel_grid(n_radial, r_max)
    omega = carrier * np.asarray(orders)
    k = np.arange(omega.size)
    profile = np.exp(-(grid.r / waist) ** 2)
    amp = ((1.0 + 0.1 * k)[:, None] * profile[None, :]
           * np.exp(1j * 0.2 * k)[:, None])
    return mp.FieldMap(omega_au=omega, radial=grid.r, amp=amp, plane="near",
                       carrier_frequency_au=carrier, window="cos8",
                       observable="dipole", pad_factor=8,
                       radial_weights=grid.weights_r, r_max_cm=r_max)


def test_far_near_round_trip():
    m = _synthetic_near_map()
    far = mp.to_far_field(m)
    assert far.plane == "far"
    back = mp.to_near_field(far)
    assert back.plane == "refocused"
    np.testing.assert_allclose(back.amp, m.amp,
                               atol=1e-8 * np.max(np.abs(m.amp)))
    np.testing.assert_allclose(back.radial, m.radial, rtol=1e-12)


def test_plane_mismatch_errors():
    m = _synthetic_near_map()
    far = mp.to_far_field(m)
    with pytest.raises(ValueError, match="near"):
        mp.to_far_field(far)
    with pytest.raises(ValueError, match="far"):
        mp.to_near_field(m)
    with pytest.raises(ValueError, match="far"):
        mp.divergence_rad(m, m.omega_au[0])
    with pytest.raises(ValueError, match="far"):
        mp.apply_filter(m)


def test_divergence_angles():
    far = mp.to_far_field(_synthetic_near_map())
    om = float(far.omega_au[3])
    lam = pls.wavelength_cm_from_omega_au(om)
    np.testing.assert_allclose(mp.divergence_rad(far, om),
                               far.radial * lam / (2.0 * math.pi), rtol=1e-15)


def test_half_energy_divergence_gaussian():
    """A Gaussian near field has a closed-form half-energy divergence.

    |F| = exp(-r^2/w^2) transforms to a far-field intensity
    exp(-q^2 w^2 / 2), whose encircled energy reaches one half at
    q = sqrt(2 ln 2) / w.
    """
    w = 7.5e-4
    m = _synthetic_near_map(n_radial=512, r_max=0.02, waist=w,
                            orders=np.array([15.0, 21.0, 27.0]))
    far = mp.to_far_field(m)
    k21 = int(np.argmin(np.abs(far.harmonic_order - 21.0)))
    lam = pls.wavelength_cm_from_omega_au(float(far.omega_au[k21]))
    expect = math.sqrt(2.0 * math.log(2.0)) / w * lam / (2.0 * math.pi)
    got = mp.half_energy_divergence(far, harmonic=21.0)
    np.testing.assert_allclose(got, expect, rtol=0.05)


def _row_energy(fmap):
    return (fmap.radial_weights[None, :] * np.abs(fmap.amp) ** 2).sum(axis=1)


def test_filter_limits():
    far = mp.to_far_field(_synthetic_near_map())
    wide = mp.apply_filter(far, mp.FilterSpec(cutoff_rad=1.0))
    assert np.array_equal(wide.amp, far.amp)
    narrow = mp.apply_filter(far, mp.FilterSpec(cutoff_rad=1e-12))
    assert np.all(narrow.amp == 0)


def test_filter_energy_never_increases():
    far = mp.to_far_field(_synthetic_near_map())
    for spec in (mp.FilterSpec(), mp.FilterSpec(shape="supergauss", order=2)):
        filt = mp.apply_filter(far, spec)
        assert np.all(_row_energy(filt) <= _row_energy(far) + 1e-30)


def test_auto_cutoff_passes_half_the_reference_energy():
    w = 7.5e-4
    m = _synthetic_near_map(n_radial=512, r_max=0.02, waist=w,
                            orders=np.array([15.0, 21.0, 27.0]))
    far = mp.to_far_field(m)
    filt = mp.apply_filter(far, mp.FilterSpec(reference_harmonic=21.0))
    k21 = int(np.argmin(np.abs(far.harmonic_order - 21.0)))
    frac = _row_energy(filt)[k21] / _row_energy(far)[k21]
    # the hard edge truncates at the grid node below the interpolated
    # half-energy radius, so the passed fraction sits a little under 1/2
    assert 0.40 <= frac <= 0.55
    wider = mp.apply_filter(far, mp.FilterSpec(reference_harmonic=21.0,
                                               cutoff_scale=2.0))
    assert _row_energy(wider)[k21] > _row_energy(filt)[k21]


def test_filtered_refocused_chain_matches_steps():
    m = _synthetic_near_map()
    spec = mp.FilterSpec(shape="supergauss", cutoff_rad=5e-4)
    chain = mp.filtered_refocused(m, spec)
    steps = mp.to_near_field(mp.apply_filter(mp.to_far_field(m), spec))
    assert chain.plane == "refocused"
    assert np.array_equal(chain.amp, steps.amp)


# ---------------------------------------------------------------------------
# phase extraction on maps


def _synthetic_phase_pair(ip_harmonic=13.0, carrier=0.057):
    orders = np.linspace(10.0, 26.0, 161)
    base = _synthetic_near_map(n_radial=6, orders=orders, carrier=carrier)
    col = np.arange(base.radial.size)
    x = (orders - orders[0]) / (orders[-1] - orders[0])
    phi = (1.5 + 0.5 * col)[None, :] * x[:, None] ** 2 * 3.0
    withmap = dataclasses.replace(base, amp=base.amp * np.exp(1j * phi))
    return base, withmap, phi, ip_harmonic * carrier


def test_extract_map_phase_recovers_known_shifts():
    base, withmap, phi, ip = _synthetic_phase_pair()
    phase, reliable = mp.extract_map_phase(withmap, base, ip)
    assert phase.shape == base.amp.shape
    above = base.omega_au > ip
    assert np.all(reliable[above, :])
    assert not np.any(reliable[~above, :])
    np.testing.assert_allclose(phase[reliable],
                               phi[np.broadcast_to(above[:, None],
                                                   phi.shape) & reliable],
                               atol=1e-9)


def test_extract_map_phase_mismatch_errors():
    base, withmap, _, ip = _synthetic_phase_pair()
    far = dataclasses.replace(withmap, plane="far")
    with pytest.raises(ValueError, match="plane"):
        mp.extract_map_phase(far, base, ip)
    other = dataclasses.replace(withmap, window="hann")
    with pytest.raises(ValueError, match="convention"):
        mp.extract_map_phase(other, base, ip)
    shifted = dataclasses.replace(withmap, omega_au=withmap.omega_au * 1.001)
    with pytest.raises(ValueError, match="grid"):
        mp.extract_map_phase(shifted, base, ip)


def test_radial_average_constant_phase():
    base, _, _, _ = _synthetic_phase_pair()
    phase = np.full(base.amp.shape, 0.7)
    avg, defined = mp.radial_average_phase(phase, base)
    assert np.all(defined)
    np.testing.assert_allclose(avg, 0.7, atol=1e-12)


def test_radial_average_stays_within_bounds():
    base, _, _, _ = _synthetic_phase_pair()
    col_phase = np.linspace(-0.4, 0.9, base.radial.size)
    phase = np.broadcast_to(col_phase, base.amp.shape).copy()
    avg, defined = mp.radial_average_phase(phase, base)
    assert np.all(defined)
    assert np.all(avg >= col_phase.min() - 1e-12)
    assert np.all(avg <= col_phase.max() + 1e-12)


def test_radial_average_respects_mask():
    base, _, _, _ = _synthetic_phase_pair()
    phase = np.zeros(base.amp.shape)
    reliable = np.ones(base.amp.shape, dtype=bool)
    reliable[3, :] = False
    avg, defined = mp.radial_average_phase(phase, base, reliable)
    assert not defined[3]
    assert np.isnan(avg[3])
    assert np.all(defined[4:])
    with pytest.raises(ValueError, match="shape"):
        mp.radial_average_phase(phase[:, :2], base)


# ---------------------------------------------------------------------------
# intensity table


def _linear_log_runner(slope_mag, slope_phase, n_freq=4):
    """Response whose magnitude and phase are linear in log intensity.

    The table interpolates exactly such responses, so interpolation error
    reduces to floating point noise.
    """

    def run(field_au):
        x = math.log(field_au)
        val = (3.0 + slope_mag * x) * np.exp(1j * slope_phase * x)
        return np.full(n_freq, val, dtype=complex)

    return run


def test_table_source_interpolates_log_linear_exactly():
    run = _linear_log_runner(0.5, 0.7)
    src = mp._TableSource(run, np.array([1.0e14, 1.0e15]), 0.1)
    for inten in (1.0e14, 2.3e14, 5.0e14, 9.99e14, 1.0e15):
        field = float(pls.field_au_from_intensity(inten))
        np.testing.assert_allclose(src(inten), run(field), rtol=1e-9)


def test_table_source_clips_out_of_range():
    run = _linear_log_runner(0.5, 0.7)
    src = mp._TableSource(run, np.array([1.0e14, 1.0e15]), 0.1)
    np.testing.assert_allclose(src(1.0e13), src(1.0e14), rtol=1e-12)


def test_table_source_unwraps_fast_phase():
    """Phase spanning many turns over the ladder still interpolates cleanly."""
    run = _linear_log_runner(0.0, 10.0)
    src = mp._TableSource(run, np.array([1.0e14, 1.0e16]), 0.05)
    for inten in (3.0e14, 1.0e15, 4.0e15):
        field = float(pls.field_au_from_intensity(inten))
        np.testing.assert_allclose(src(inten), run(field), rtol=1e-6)


def test_table_source_independent_of_worker_count(monkeypatch):
    run = _linear_log_runner(0.4, 3.0)
    monkeypatch.setenv("STARKHHG_WORKERS", "1")
    a = mp._TableSource(run, np.array([1.0e14, 6.0e14]), 0.1)
    monkeypatch.setenv("STARKHHG_WORKERS", "4")
    b = mp._TableSource(run, np.array([1.0e14, 6.0e14]), 0.1)
    assert np.array_equal(a.mag, b.mag)
    assert np.array_equal(a.phase, b.phase)
