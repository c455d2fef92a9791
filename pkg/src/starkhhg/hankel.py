"""Quasi-discrete Hankel transform of order zero on Bessel nodes.

Used for cylindrically symmetric near-field <-> far-field conversion.  The
convention is

    g(q) = int_0^inf f(r) J0(q r) r dr,

which is its own inverse (f(r) = int g(q) J0(q r) q dq).  Sampling f on the
scaled Bessel zeros r_k = j_k R / S (S the (N+1)-th zero of J0) and using the
Dini quadrature weights

    w_k = 2 R^2 / (S^2 J1(j_k)^2)

makes the forward and inverse matrices near-exact mutual inverses for fields
band-limited to q < S / R.  The same weights serve as the radial quadrature
for energy integrals int |f|^2 r dr.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.special import j0, j1, jn_zeros


@dataclass(frozen=True, eq=False)
class HankelGrid:
    """Node set and transform matrices for a fixed (n, r_max)."""

    n: int
    r_max: float
    r: np.ndarray
    q: np.ndarray
    weights_r: np.ndarray
    weights_q: np.ndarray
    fwd: np.ndarray
    inv: np.ndarray


@functools.lru_cache(maxsize=32)
def _grid_cached(n, r_max):
    zeros = jn_zeros(0, n + 1)
    alpha = zeros[:n]
    big_s = zeros[n]
    r = alpha * (r_max / big_s)
    q = alpha / r_max
    j1sq = j1(alpha) ** 2
    w_r = 2.0 * r_max ** 2 / (big_s ** 2 * j1sq)
    w_q = 2.0 / (r_max ** 2 * j1sq)
    core = j0(np.outer(alpha, alpha) / big_s)
    fwd = core * w_r[np.newaxis, :]
    inv = core * w_q[np.newaxis, :]
    for arr in (r, q, w_r, w_q, fwd, inv):
        arr.setflags(write=False)
    return HankelGrid(n=n, r_max=float(r_max), r=r, q=q,
                      weights_r=w_r, weights_q=w_q, fwd=fwd, inv=inv)


def hankel_grid(n, r_max):
    """Cached :class:`HankelGrid` with ``n`` nodes on [0, r_max]."""
    if n < 4:
        raise ValueError("need at least 4 radial nodes for the transform")
    if not (r_max > 0):
        raise ValueError("r_max must be positive")
    return _grid_cached(int(n), float(r_max))


def forward(grid, f):
    """Hankel transform along the last axis (r nodes -> q nodes)."""
    f = np.asarray(f)
    if f.shape[-1] != grid.n:
        raise ValueError("last axis must match the grid node count")
    return f @ grid.fwd.T


def inverse(grid, g):
    """Inverse transform along the last axis (q nodes -> r nodes)."""
    g = np.asarray(g)
    if g.shape[-1] != grid.n:
        raise ValueError("last axis must match the grid node count")
    return g @ grid.inv.T


def radial_energy(grid, f):
    """int |f|^2 r dr by the Dini quadrature, along the last axis."""
    f = np.asarray(f)
    return np.abs(f) ** 2 @ grid.weights_r
