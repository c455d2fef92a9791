"""Classical recollision trajectories in a linearly polarized pulse.

An electron released at rest at time t' moves one-dimensionally along the
polarization axis with velocity

    rdot(t, t') = A(t) - A(t') = -int_{t'}^{t} F dt''      (charge -1)

and excursion r(t, t') = int A - A(t') (t - t').  Recollisions are the later
zero crossings of r.  Emitted photon energy at a recollision is the kinetic
energy plus the (by default field-dependent) ionization potential at the
recombination instant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import molecule as mol
from . import pulse as pls

_MIN_TPRIME_PER_CYCLE = 512


def excursion(pulse, t_ion, t, samples_per_cycle=8192):
    """Displacement r(t, t') of an electron born at rest at t_ion."""
    g = pls.grids(pulse, samples_per_cycle)
    a_ion = g.a(t_ion)
    return (g.ia(t) - g.ia(t_ion)) - a_ion * (np.asarray(t, dtype=float) - t_ion)


def return_velocity(pulse, t_ion, t, samples_per_cycle=8192):
    """rdot(t, t') = A(t) - A(t')."""
    g = pls.grids(pulse, samples_per_cycle)
    return g.a(t) - g.a(t_ion)


def solve_returns(pulse, t_ion, max_returns=None, samples_per_cycle=8192,
                  r_tol=1e-8):
    """Zero crossings of the excursion after t_ion, inside the pulse support.

    Brackets sign changes of r on the pulse grid and refines each with Brent's
    method until |r| < r_tol.  Tangencies (touches without sign change) are
    not counted.  Returns an ascending array of recollision times; empty if
    the electron never comes back before the field ends.
    """
    t_ion = float(t_ion)
    if not math.isfinite(t_ion):
        raise ValueError("t_ion must be finite")
    if not (0.0 <= t_ion <= pulse.duration_au):
        raise ValueError("t_ion outside the pulse support")
    g = pls.grids(pulse, samples_per_cycle)
    i0 = int(np.searchsorted(g.t, t_ion, side="right"))
    if i0 >= g.t.size - 1:
        return np.empty(0)
    tt = g.t[i0:]
    a_ion = float(g.a(t_ion))
    ia_ion = float(g.ia(t_ion))
    r = (g.int_a[i0:] - ia_ion) - a_ion * (tt - t_ion)
    sign_change = np.nonzero(r[:-1] * r[1:] < 0.0)[0]
    if max_returns is not None:
        sign_change = sign_change[: int(max_returns)]

    def _r(t):
        return (g.ia(t) - ia_ion) - a_ion * (t - t_ion)

    out = []
    for j in sign_change:
        lo, hi = tt[j], tt[j + 1]
        root = brentq(_r, lo, hi, xtol=1e-12, rtol=8.9e-16)
        if abs(_r(root)) < r_tol:
            out.append(root)
    return np.asarray(out)


def photon_energy(pulse, params, t_ion, t_ret, field_free_ip=False,
                  samples_per_cycle=8192):
    """Emitted photon energy: kinetic energy at return plus the binding energy.

    With ``field_free_ip`` the field-free ionization potential is used instead
    of the stark-shifted one at the recombination instant.
    """
    v = return_velocity(pulse, t_ion, t_ret, samples_per_cycle)
    kin = 0.5 * np.asarray(v) ** 2
    if field_free_ip:
        return kin + params.ip_au
    f_rec = pulse.field_scalar(t_ret)
    return kin + mol.ip_of_field_z(params, f_rec)


@dataclass
class Trajectory:
    t_ion_au: float
    t_rec_au: float
    v_ret_au: float
    omega_au: float
    branch: str
    half_cycle: int


class TrajectoryTable:
    """First-return recollision map of one pulse/molecule combination.

    Column arrays are aligned and sorted by ionization time.  ``branch``
    labels short/long within each carrier half-cycle relative to that
    half-cycle's maximum-energy trajectory; the maximum itself counts as
    short.
    """

    def __init__(self, pulse, params, t_ion, t_rec, v_ret, kinetic, omega,
                 branch, half_cycle, field_free_ip):
        self.pulse = pulse
        self.params = params
        self.t_ion = t_ion
        self.t_rec = t_rec
        self.v_ret = v_ret
        self.kinetic = kinetic
        self.omega = omega
        self.branch = branch
        self.half_cycle = half_cycle
        self.field_free_ip = field_free_ip

    def __len__(self):
        return self.t_ion.size

    @property
    def harmonic_order(self):
        return self.omega / self.pulse.carrier_frequency_au

    @property
    def excursion_time(self):
        return self.t_rec - self.t_ion

    @property
    def dominant_half_cycle(self):
        """Half-cycle index of the globally maximum-energy trajectory."""
        if len(self) == 0:
            raise ValueError("empty trajectory table")
        return int(self.half_cycle[np.argmax(self.omega)])

    @property
    def cutoff_omega_au(self):
        return float(np.max(self.omega))

    def rows(self):
        for i in range(len(self)):
            yield Trajectory(float(self.t_ion[i]), float(self.t_rec[i]),
                             float(self.v_ret[i]), float(self.omega[i]),
                             str(self.branch[i]), int(self.half_cycle[i]))


def trajectory_table(pulse, params, samples_per_cycle=2048,
                     field_free_ip=False, grid_samples_per_cycle=8192,
                     min_birth_field_fraction=0.0):
    """Scan ionization times over the pulse and tabulate first returns.

    ``samples_per_cycle`` sets the t' scan density (at least 512 per cycle).
    Trajectories that never return inside the support are dropped.

    ``min_birth_field_fraction`` optionally drops births where |F(t')| is
    below that fraction of the pulse's field maximum.  Tunnel ionization is
    exponentially suppressed at weak field, so such rows carry no emission
    weight; the floor is off by default to keep the purely classical map
    complete (the short branch extends to zero birth field at threshold).
    """
    spc = int(samples_per_cycle)
    if spc < _MIN_TPRIME_PER_CYCLE:
        raise ValueError(
            f"samples_per_cycle={spc} too coarse; need >= {_MIN_TPRIME_PER_CYCLE}")
    if not (0.0 <= min_birth_field_fraction < 1.0):
        raise ValueError("min_birth_field_fraction must be in [0, 1)")
    g = pls.grids(pulse, grid_samples_per_cycle)
    n_ion = int(round(spc * pulse.duration_cycles))
    t_ion_grid = np.linspace(0.0, pulse.duration_au, n_ion, endpoint=False)
    if min_birth_field_fraction > 0.0:
        floor = min_birth_field_fraction * np.max(np.abs(g.field))
        keep = np.abs(pulse.field_scalar(t_ion_grid)) >= floor
        t_ion_grid = t_ion_grid[keep]

    rows_ion, rows_rec = [], []
    for tp in t_ion_grid:
        rets = solve_returns(pulse, tp, max_returns=1,
                             samples_per_cycle=grid_samples_per_cycle)
        if rets.size:
            rows_ion.append(tp)
            rows_rec.append(rets[0])
    t_ion = np.asarray(rows_ion)
    t_rec = np.asarray(rows_rec)

    v_ret = g.a(t_rec) - g.a(t_ion)
    kinetic = 0.5 * v_ret ** 2
    if field_free_ip:
        omega = kinetic + params.ip_au
    else:
        omega = kinetic + mol.ip_of_field_z(params, pulse.field_scalar(t_rec))
    half_cycle = np.floor(
        (pulse.carrier_frequency_au * t_ion + pulse.cep_rad) / math.pi
    ).astype(int)

    branch = np.full(t_ion.size, "long", dtype="<U5")
    excur = t_rec - t_ion
    for hc in np.unique(half_cycle):
        sel = np.nonzero(half_cycle == hc)[0]
        top = sel[np.argmax(omega[sel])]
        short = sel[excur[sel] <= excur[top]]
        branch[short] = "short"

    return TrajectoryTable(pulse, params, t_ion, t_rec, v_ret, kinetic, omega,
                           branch, half_cycle, field_free_ip)


def frequency_to_pairs(table, omega_au, branch="short", half_cycle=None):
    """Invert the energy map: photon energy -> (t_ion, t_rec) on one branch.

    Uses the dominant half-cycle unless one is named.  Linear interpolation
    on the branch's monotone omega sequence; energies outside the branch
    range raise.
    """
    if branch not in ("short", "long"):
        raise ValueError("branch must be 'short' or 'long'")
    hc = table.dominant_half_cycle if half_cycle is None else int(half_cycle)
    sel = (table.half_cycle == hc) & (table.branch == branch)
    if not np.any(sel):
        raise ValueError(f"no {branch}-branch trajectories in half-cycle {hc}")
    om = table.omega[sel]
    ti = table.t_ion[sel]
    tr = table.t_rec[sel]
    order = np.argsort(om)
    om, ti, tr = om[order], ti[order], tr[order]

    w = np.asarray(omega_au, dtype=float)
    if np.any(w < om[0]) or np.any(w > om[-1]):
        raise ValueError(
            f"omega outside the {branch}-branch range "
            f"[{om[0]:.6g}, {om[-1]:.6g}] au")
    return np.interp(w, om, ti), np.interp(w, om, tr)
