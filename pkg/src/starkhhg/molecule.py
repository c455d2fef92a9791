"""Bound-state response of a polar molecule to a quasi-static field.

The level shift is quadratic in the instantaneous field,

    E(F) = E0 - mu . F - (1/2) F . alpha . F,

with a permanent dipole mu along the molecular axis and an axially symmetric
polarizability tensor (alpha_par along the axis, alpha_perp across it).  The
lab frame is fixed by the laser: polarization along z, the molecular axis
rotated by theta about the lab y axis.  Orientation reversal is theta ->
theta + pi, which flips the dipole but leaves the polarizability unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np


class UnboundStateError(ValueError):
    """The quasi-static level shift pushed the bound energy to E >= 0."""


@dataclass(frozen=True)
class StarkParameters:
    """Field-free energy, permanent dipole, polarizability, orientation."""

    e0_au: float
    mu_au: float
    alpha_par_au: float
    alpha_perp_au: float
    theta_rad: float = 0.0

    def __post_init__(self):
        if not (self.e0_au < 0):
            raise ValueError("e0_au must be negative (bound state)")
        if self.mu_au < 0:
            raise ValueError("mu_au must be non-negative; use theta for orientation")
        if self.alpha_par_au < 0 or self.alpha_perp_au < 0:
            raise ValueError("polarizabilities must be non-negative")
        if not math.isfinite(self.theta_rad):
            raise ValueError("theta_rad must be finite")

    @property
    def ip_au(self):
        """Field-free ionization potential, -E0."""
        return -self.e0_au

    @property
    def mu_parallel_au(self):
        """Dipole component along the lab polarization axis, mu cos(theta)."""
        return self.mu_au * math.cos(self.theta_rad)

    @property
    def alpha_parallel_au(self):
        """alpha_zz in the lab frame: alpha_par cos^2 + alpha_perp sin^2."""
        c = math.cos(self.theta_rad)
        s = math.sin(self.theta_rad)
        return self.alpha_par_au * c * c + self.alpha_perp_au * s * s

    def flipped(self):
        """The same molecule with reversed orientation (mu -> -mu)."""
        return replace(self, theta_rad=self.theta_rad + math.pi)


CO_PRESET = StarkParameters(e0_au=-0.5150, mu_au=1.1,
                            alpha_par_au=3.2, alpha_perp_au=2.8)

_PRESETS = {"CO": CO_PRESET}


def preset(name):
    try:
        return _PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown molecule preset {name!r}; "
                         f"known: {sorted(_PRESETS)}") from None


def mu_lab(params):
    """Permanent dipole vector in the lab frame."""
    s = math.sin(params.theta_rad)
    c = math.cos(params.theta_rad)
    return params.mu_au * np.array([s, 0.0, c])


def alpha_lab(params):
    """Polarizability tensor rotated into the lab frame."""
    s = math.sin(params.theta_rad)
    c = math.cos(params.theta_rad)
    rot = np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    alpha_mol = np.diag([params.alpha_perp_au, params.alpha_perp_au,
                         params.alpha_par_au])
    return rot @ alpha_mol @ rot.T


def stark_energy(params, field_vec):
    """Quasi-static level energy E(F) for a lab-frame field vector.

    ``field_vec`` may carry leading batch dimensions; the last axis is xyz.
    """
    f = np.asarray(field_vec, dtype=float)
    if f.shape[-1] != 3:
        raise ValueError("field_vec must have a trailing xyz axis")
    mu = mu_lab(params)
    alpha = alpha_lab(params)
    linear = f @ mu
    quad = np.einsum("...i,ij,...j->...", f, alpha, f)
    return params.e0_au - linear - 0.5 * quad


def stark_energy_z(params, field_z):
    """E(F) for a field along the lab z axis (the common case).

    Accepts scalars or arrays of the signed field amplitude.  This is the
    fast path used inside time integrals; it agrees with
    :func:`stark_energy` on vectors (0, 0, field_z).
    """
    fz = np.asarray(field_z, dtype=float)
    return (params.e0_au - params.mu_parallel_au * fz
            - 0.5 * params.alpha_parallel_au * fz * fz)


def ip_of_field(params, field_vec):
    """Field-dependent ionization potential -E(F); error if unbound."""
    e = stark_energy(params, field_vec)
    if np.any(e >= 0):
        raise UnboundStateError(
            "stark-shifted level reached E >= 0; the quasi-static bound-state "
            "model no longer applies at this field")
    return -e


def ip_of_field_z(params, field_z):
    """Like :func:`ip_of_field` for a field along lab z."""
    e = stark_energy_z(params, field_z)
    if np.any(e >= 0):
        raise UnboundStateError(
            "stark-shifted level reached E >= 0; the quasi-static bound-state "
            "model no longer applies at this field")
    return -e
