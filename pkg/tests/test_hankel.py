import numpy as np
import pytest
from numpy.testing import assert_allclose

from starkhhg import hankel as hk


def test_grid_validation():
    with pytest.raises(ValueError):
        hk.hankel_grid(2, 1.0)
    with pytest.raises(ValueError):
        hk.hankel_grid(64, -1.0)


def test_grid_layout():
    g = hk.hankel_grid(64, 0.3)
    assert g.r.shape == (64,)
    assert g.q.shape == (64,)
    assert np.all(np.diff(g.r) > 0)
    assert np.all(g.r > 0) and np.all(g.r < 0.3)
    assert np.all(g.weights_r > 0) and np.all(g.weights_q > 0)
    # cached: the same (n, r_max) returns the same object
    assert hk.hankel_grid(64, 0.3) is g


def test_gaussian_transform_pair():
    """exp(-r^2/2s^2) maps to s^2 exp(-q^2 s^2 / 2) under this convention."""
    g = hk.hankel_grid(256, 1.0)
    s = 0.08
    f = np.exp(-g.r ** 2 / (2.0 * s * s))
    expect = s * s * np.exp(-g.q ** 2 * s * s / 2.0)
    assert_allclose(hk.forward(g, f), expect, atol=1e-10)


def test_round_trip():
    g = hk.hankel_grid(128, 2.0)
    rng = np.random.default_rng(7)
    # band-limited random field: a few smooth radial lobes
    f = np.zeros(g.n)
    for k in range(1, 6):
        f += rng.normal() * np.exp(-(g.r * k / 2.0) ** 2)
    back = hk.inverse(g, hk.forward(g, f))
    assert_allclose(back, f, atol=1e-6 * np.max(np.abs(f)))


def test_parseval():
    g = hk.hankel_grid(192, 1.5)
    f = np.exp(-g.r ** 2 / 0.02) * (1.0 + 0.3 * np.cos(3.0 * g.r))
    fq = hk.forward(g, f)
    e_r = np.sum(g.weights_r * np.abs(f) ** 2)
    e_q = np.sum(g.weights_q * np.abs(fq) ** 2)
    assert_allclose(e_q, e_r, rtol=1e-10)
    assert_allclose(hk.radial_energy(g, f), e_r, rtol=1e-15)


def test_point_source_is_spectrally_flat():
    """Mass concentrated at the innermost node transforms to a flat profile."""
    g = hk.hankel_grid(128, 1.0)
    f = np.zeros(g.n)
    f[0] = 1.0 / g.weights_r[0]
    fq = hk.forward(g, f)
    # J0(q r0) with r0 the first node: flat at low q to a few percent
    low = fq[g.q < 0.2 * g.q.max()]
    assert np.std(low) / np.mean(low) < 0.05


def test_batched_last_axis():
    g = hk.hankel_grid(96, 1.0)
    f = np.exp(-np.outer(np.array([1.0, 2.0, 4.0]), g.r ** 2) / 0.1)
    fq = hk.forward(g, f)
    assert fq.shape == (3, 96)
    for i in range(3):
        assert_allclose(fq[i], hk.forward(g, f[i]), atol=1e-15)
    assert_allclose(hk.inverse(g, fq), f, atol=1e-8)
