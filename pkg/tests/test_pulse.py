import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from starkhhg import pulse as pls


def test_wavelength_conversion_round_trip():
    w = pls.omega_au_from_wavelength_nm(800.0)
    assert_allclose(w, 0.056954, rtol=1e-4)
    assert_allclose(pls.wavelength_cm_from_omega_au(w), 800.0e-7, rtol=1e-12)


def test_intensity_field_conversion():
    # one atomic unit of field corresponds to the atomic intensity unit
    assert_allclose(pls.field_au_from_intensity(pls.ATOMIC_INTENSITY_WCM2), 1.0,
                    rtol=1e-12)
    assert_allclose(pls.field_au_from_intensity(2.0e14), 0.075498, rtol=1e-4)
    f = 0.0631
    assert_allclose(pls.field_au_from_intensity(pls.intensity_from_field_au(f)),
                    f, rtol=1e-12)


def test_pulse_validation():
    with pytest.raises(ValueError):
        pls.LaserPulse(peak_field_au=-0.1, carrier_frequency_au=0.057,
                       duration_cycles=2.0)
    with pytest.raises(ValueError):
        pls.LaserPulse(peak_field_au=0.07, carrier_frequency_au=0.057,
                       duration_cycles=2.0, envelope="gauss")
    with pytest.raises(ValueError):
        pls.LaserPulse(peak_field_au=0.07, carrier_frequency_au=0.057,
                       duration_cycles=2.0, carrier_type="cosine")
    with pytest.raises(ValueError):
        pls.LaserPulse(peak_field_au=0.07, carrier_frequency_au=0.057,
                       duration_cycles=2.0, polarization_axis=(0.0, 0.0, 0.0))


def test_from_wavelength_amplitude_handling():
    with pytest.raises(ValueError):
        pls.LaserPulse.from_wavelength(800.0, 2.0)
    p = pls.LaserPulse.from_wavelength(800.0, 2.0, peak_intensity_Wcm2=2.0e14)
    q = pls.LaserPulse.from_wavelength(800.0, 2.0,
                                       peak_field_au=p.peak_field_au,
                                       peak_intensity_Wcm2=2.0e14)
    assert p == q
    with pytest.raises(ValueError):
        pls.LaserPulse.from_wavelength(800.0, 2.0, peak_field_au=0.071,
                                       peak_intensity_Wcm2=2.0e14)


def test_periods_and_up(pulse2t):
    assert_allclose(pulse2t.period_au,
                    2.0 * math.pi / pulse2t.carrier_frequency_au, rtol=1e-15)
    assert_allclose(pulse2t.duration_au, 2.0 * pulse2t.period_au, rtol=1e-15)
    up = pulse2t.peak_field_au ** 2 / (4.0 * pulse2t.carrier_frequency_au ** 2)
    assert_allclose(pulse2t.ponderomotive_energy_au, up, rtol=1e-15)


def test_envelope_shape(pulse2t):
    td = pulse2t.duration_au
    assert pulse2t.envelope_at(0.0) == 0.0
    assert pulse2t.envelope_at(td) < 1e-30
    assert_allclose(pulse2t.envelope_at(0.5 * td), 1.0, rtol=1e-14)
    t = np.linspace(-0.2 * td, 1.2 * td, 1001)
    env = pulse2t.envelope_at(t)
    assert np.all(env >= 0.0) and np.all(env <= 1.0)
    assert np.all(env[(t < 0) | (t > td)] == 0.0)
    # intensity FWHM of the squared-sine field envelope, derived directly
    frac = 1.0 - 2.0 * math.asin(2.0 ** -0.25) / math.pi
    assert_allclose(pls.COS2_FWHM_FRACTION, frac, rtol=1e-14)
    assert_allclose(pulse2t.envelope_fwhm_cycles, 2.0 * frac, rtol=1e-14)


def test_flat_envelope():
    p = pls.LaserPulse(peak_field_au=0.05, carrier_frequency_au=0.057,
                       duration_cycles=4.0, envelope="flat")
    td = p.duration_au
    t = np.linspace(0.01 * td, 0.99 * td, 57)
    assert np.all(p.envelope_at(t) == 1.0)
    assert p.envelope_fwhm_cycles == 4.0


def test_field_antisymmetry_integer_cycles(pulse2t):
    """sin carrier with cep 0: F(T_dur - t) = -F(t) for whole-cycle pulses."""
    td = pulse2t.duration_au
    t = np.linspace(0.0, td, 601)
    assert_allclose(pulse2t.field_scalar(td - t), -pulse2t.field_scalar(t),
                    atol=1e-15)


def test_field_vector_along_axis(pulse2t):
    t = np.linspace(0.0, pulse2t.duration_au, 11)
    vec = pulse2t.field_at(t)
    assert vec.shape == (11, 3)
    assert_allclose(vec[:, 2], pulse2t.field_scalar(t), rtol=1e-15)
    assert np.all(vec[:, :2] == 0.0)


def _analytic_vector_potential(pulse, t):
    """Closed-form A(t) = -int F for the squared-sine envelope, sine carrier.

    F = F0 sin^2(a t) sin(w t) splits into three sine lines at w and
    w +/- 2a, each integrating to (1 - cos)/k.
    """
    f0 = pulse.peak_field_au
    w = pulse.carrier_frequency_au
    a = math.pi / pulse.duration_au
    out = -f0 / 2.0 * (1.0 - np.cos(w * t)) / w
    for k in (w + 2.0 * a, w - 2.0 * a):
        out += f0 / 4.0 * (1.0 - np.cos(k * t)) / k
    return out


def test_vector_potential_against_closed_form(pulse2t):
    g = pls.grids(pulse2t)
    t = np.linspace(0.0, pulse2t.duration_au, 773)
    ref = _analytic_vector_potential(pulse2t, t)
    assert_allclose(g.a(t), ref, atol=1e-10)
    assert g.a_pot[0] == 0.0
    assert g.net_area_residual_au < 1e-10
    # physical-pulse requirement: residual area well under 1e-3 F0/w0
    assert g.net_area_residual_au < 1e-3 * (pulse2t.peak_field_au
                                            / pulse2t.carrier_frequency_au)


def test_grid_antiderivative_consistency(pulse2t):
    g = pls.grids(pulse2t)
    for integral, integrand in ((g.int_a, g.a_pot),
                                (g.int_a2, g.a_pot ** 2),
                                (g.int_f2, g.field ** 2)):
        assert integral[0] == 0.0
        mid = np.gradient(integral, g.dt)[2:-2]
        assert_allclose(mid, integrand[2:-2],
                        atol=1e-6 * max(1.0, np.max(np.abs(integrand))))


def test_grid_promotion_and_cache(pulse2t):
    g = pls.grids(pulse2t, 1024)
    assert g.samples_per_cycle >= 8192  # promoted to keep 2^14 total points
    assert g.t.size == g.samples_per_cycle * 2 + 1
    assert pls.grids(pulse2t, 1024) is g
    assert pls.grids(pulse2t, 8192) is pls.grids(pulse2t)


def test_ia_linear_continuation(pulse2t):
    g = pls.grids(pulse2t)
    td = pulse2t.duration_au
    base = g.ia(td)
    assert_allclose(g.ia(td + 50.0), base + 50.0 * g.a_pot[-1], atol=1e-12)


def test_focus_geometry_basics():
    lam = pls.wavelength_cm_from_omega_au(
        pls.omega_au_from_wavelength_nm(800.0))
    foc = pls.FocusGeometry(confocal_cm=2.0, focus_z_cm=-0.70,
                            peak_intensity_Wcm2=3.0e14)
    assert_allclose(foc.rayleigh_cm, 1.0, rtol=1e-15)
    w0 = foc.waist_cm(lam)
    assert_allclose(w0, math.sqrt(lam * foc.rayleigh_cm / math.pi), rtol=1e-12)
    # waist grows as sqrt(1 + zeta^2) away from the focus
    assert_allclose(foc.waist_cm(lam, foc.focus_z_cm + 1.0),
                    w0 * math.sqrt(2.0), rtol=1e-12)
    # jet center sits 0.70 cm past the focus: intensity drops by 1 + 0.7^2
    assert_allclose(foc.intensity_at(lam, 0.0, 0.0), 3.0e14 / 1.49,
                    rtol=1e-12)


def test_gaussian_beam_factor():
    lam = 800.0e-7
    foc = pls.FocusGeometry(confocal_cm=2.0, focus_z_cm=0.0,
                            peak_intensity_Wcm2=1.0e14)
    g0 = foc.gaussian_beam_factor(lam, 0.0, 0.0)
    assert_allclose(g0, 1.0 + 0.0j, atol=1e-15)
    # on-axis phase is the Gouy term, -atan(z/zr)
    z = 0.63
    gz = foc.gaussian_beam_factor(lam, z, 0.0)
    assert_allclose(np.angle(gz), -math.atan(z / foc.rayleigh_cm), atol=1e-12)
    assert_allclose(abs(gz), 1.0 / math.sqrt(1.0 + (z / foc.rayleigh_cm) ** 2),
                    rtol=1e-12)
    # transverse amplitude profile at the focus is exp(-r^2 / w0^2)
    r = 0.8 * foc.waist_cm(lam)
    gr = foc.gaussian_beam_factor(lam, 0.0, r)
    assert_allclose(abs(gr), math.exp(-(r / foc.waist_cm(lam)) ** 2),
                    rtol=1e-12)
    assert_allclose(foc.intensity_at(lam, 0.0, r),
                    1.0e14 * abs(gr) ** 2, rtol=1e-12)
