"""Stark phases accumulated by the bound state during the electron excursion.

Between ionization at t' and recombination at t the level shift
E(F) - E0 = -mu.F - (1/2) F.alpha.F adds to the usual field-free bound-state
evolution a first-order phase

    phi1(t, t') = -int_{t'}^{t} mu . F dt''

and a second-order phase

    phi2(t, t') = -(1/2) int_{t'}^{t} F . alpha . F dt''  (always <= 0).

Because the recolliding electron starts at rest, phi1 equals mu . rdot(t,t'):
the momentum it has gained is minus the field impulse.  Two frequency-domain
forms express phi1 directly against the emitted photon energy, using either
the field-dependent or the field-free ionization potential at recombination.
All phases here are plain (unwrapped) values in radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from . import molecule as mol
from . import pulse as pls
from . import trajectories as trj

FORMULATIONS = ("time_integral", "return_velocity", "frequency_field",
                "frequency_field_free")

_N_QUAD = 4097


def _local_grid(t_ion, t_rec, n):
    return np.linspace(float(t_ion), float(t_rec), int(n))


def phase1_time_integral(pulse, params, t_ion, t_rec, n_quad=_N_QUAD):
    """-int mu.F dt'' by direct quadrature of the sampled field.

    Deliberately does not touch the tabulated vector potential, so this route
    is independent of :func:`phase1_return_velocity`.
    """
    tt = _local_grid(t_ion, t_rec, n_quad)
    integrand = params.mu_parallel_au * pulse.field_scalar(tt)
    return -simpson(integrand, x=tt)


def phase2_time_integral(pulse, params, t_ion, t_rec, n_quad=_N_QUAD):
    """-(1/2) int F.alpha.F dt''; non-positive for any trajectory."""
    tt = _local_grid(t_ion, t_rec, n_quad)
    f = pulse.field_scalar(tt)
    return -0.5 * params.alpha_parallel_au * simpson(f * f, x=tt)


def phase1_return_velocity(pulse, params, t_ion, t_rec):
    """mu . rdot(t, t'): the impulse form of the first-order phase."""
    v = trj.return_velocity(pulse, t_ion, t_rec)
    return params.mu_parallel_au * np.asarray(v)


def phase1_frequency_timedep(pulse, params, table, omega_au, branch="short"):
    """First-order phase against photon energy, stark-shifted threshold.

    Resolves (t', t) for each energy on the requested branch of the dominant
    half-cycle, then evaluates
    sgn(mu.rdot) * mu |cos theta| * sqrt(2 (omega - Ip(F(t)))).
    Returns (phase, below_threshold); flagged energies get phase 0.
    """
    w = np.atleast_1d(np.asarray(omega_au, dtype=float))
    t_ion, t_rec = trj.frequency_to_pairs(table, w, branch=branch)
    v = trj.return_velocity(pulse, t_ion, t_rec)
    ip_rec = mol.ip_of_field_z(params, pulse.field_scalar(t_rec))
    arg = 2.0 * (w - ip_rec)
    below = arg <= 0.0
    mag = params.mu_au * abs(math.cos(params.theta_rad)) * np.sqrt(
        np.where(below, 0.0, arg))
    sgn = np.sign(params.mu_parallel_au * v)
    phase = np.where(below, 0.0, sgn * mag)
    if np.isscalar(omega_au):
        return float(phase[0]), bool(below[0])
    return phase, below


def phase1_analytic(params, omega_au, sign=1.0):
    """Trajectory-free first-order phase with the field-free threshold.

    ``sign`` fixes the recollision direction convention (the formula itself
    is direction-blind).  Below the field-free Ip the phase is reported as
    0 with the flag set.
    """
    w = np.atleast_1d(np.asarray(omega_au, dtype=float))
    arg = 2.0 * (w - params.ip_au)
    below = arg <= 0.0
    phase = np.where(below, 0.0,
                     sign * params.mu_parallel_au * np.sqrt(np.abs(arg)))
    if np.isscalar(omega_au):
        return float(phase[0]), bool(below[0])
    return phase, below


# quadrature constant: int_0^{2/3} cos^2(2 pi x) dx (closed form 1/3 + sqrt(3)/(16 pi))
_X_GRID = np.linspace(0.0, 2.0 / 3.0, 20001)
_COS2_WINDOW_QUAD = float(simpson(np.cos(2.0 * math.pi * _X_GRID) ** 2, x=_X_GRID))


@dataclass(frozen=True)
class CutoffInfo:
    up_au: float
    omega_max_au: float
    harmonic_max: float
    phase2_cutoff_estimate_rad: float


def cutoff_and_scaling(pulse, params):
    """Ponderomotive energy, classical cutoff, second-order phase scale.

    The second-order estimate integrates the quadratic shift over a
    two-thirds-period excursion starting at a carrier crest of the
    envelope-free carrier, so it is exactly proportional to F0^2 / w0
    (equivalently w0 * Up): halving w0 at fixed Up halves it.
    """
    up = pulse.ponderomotive_energy_au
    omega_max = 3.17 * up + params.ip_au
    estimate = (-0.5 * params.alpha_parallel_au * pulse.peak_field_au ** 2
                * pulse.period_au * _COS2_WINDOW_QUAD)
    return CutoffInfo(
        up_au=up,
        omega_max_au=omega_max,
        harmonic_max=omega_max / pulse.carrier_frequency_au,
        phase2_cutoff_estimate_rad=estimate,
    )


@dataclass
class StarkPhaseRecord:
    omega_au: float
    harmonic_order: float
    branch: str
    formulation: str
    phase1_rad: float
    phase2_rad: float
    below_threshold: bool


def stark_phase_curve(pulse, params, table, omega_au, formulation="frequency_field",
                      branch="short", analytic_sign=1.0):
    """Tabulate first- and second-order phases over an energy grid.

    The second-order phase always comes from the time integral along the
    resolved trajectory pair; ``formulation`` selects how the first-order
    phase is evaluated.  Energies that fall outside the branch's classical
    range are skipped.
    """
    if formulation not in FORMULATIONS:
        raise ValueError(f"formulation must be one of {FORMULATIONS}")
    w = np.atleast_1d(np.asarray(omega_au, dtype=float))
    records = []
    for wk in w:
        try:
            t_ion, t_rec = trj.frequency_to_pairs(table, wk, branch=branch)
        except ValueError:
            continue
        t_ion, t_rec = float(t_ion), float(t_rec)
        below = False
        if formulation == "time_integral":
            p1 = float(phase1_time_integral(pulse, params, t_ion, t_rec))
        elif formulation == "return_velocity":
            p1 = float(phase1_return_velocity(pulse, params, t_ion, t_rec))
        elif formulation == "frequency_field":
            p1, below = phase1_frequency_timedep(pulse, params, table, float(wk),
                                                 branch=branch)
        else:
            p1, below = phase1_analytic(params, float(wk), sign=analytic_sign)
        p2 = float(phase2_time_integral(pulse, params, t_ion, t_rec))
        records.append(StarkPhaseRecord(
            omega_au=float(wk),
            harmonic_order=float(wk / pulse.carrier_frequency_au),
            branch=branch,
            formulation=formulation,
            phase1_rad=p1,
            phase2_rad=p2,
            below_threshold=bool(below),
        ))
    return records
