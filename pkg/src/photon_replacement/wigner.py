"""Wigner functions of pure truncated Fock states.

Convention: x = (a + a+)/sqrt2, p = (a - a+)/(i sqrt2), hbar = 1, so the
vacuum is exp(-(x^2 + p^2))/pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .fock import NORM_TOL, FockVector, _genlaguerre


@dataclass(frozen=True)
class WignerGrid:
    x: np.ndarray
    p: np.ndarray
    values: np.ndarray = field(repr=False)  # values[i, j] = W(x[j], p[i])

    def integral(self) -> float:
        dx = self.x[1] - self.x[0] if self.x.size > 1 else 1.0
        dp = self.p[1] - self.p[0] if self.p.size > 1 else 1.0
        return float(self.values.sum() * dx * dp)

    def to_json(self) -> dict:
        return {"x": self.x.tolist(), "p": self.p.tolist(), "values": self.values.tolist()}


def wigner_values(state: FockVector, x, p) -> np.ndarray:
    """W at matching arrays of phase-space points (broadcast together)."""
    x, p = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(p, dtype=float))
    c = state.amplitudes
    r2 = x**2 + p**2
    lag_arg = 2.0 * r2
    z = x - 1j * p
    gauss = np.exp(-r2) / math.pi
    total = np.zeros(x.shape)
    dim = state.dim
    for d in range(dim):
        # sum over n of c_{n+d} conj(c_n) W_{n+d, n}, with
        # W_{m,n} = (-1)^n sqrt(n!/m!) (sqrt2 z)^(m-n) L_n^(m-n)(2 r^2) e^{-r^2} / pi
        acc = np.zeros(x.shape, dtype=complex)
        for n in range(dim - d):
            coef = c[n + d] * np.conj(c[n])
            if coef == 0:
                continue
            scale = math.exp(0.5 * (gammaln(n + 1) - gammaln(n + d + 1)))
            acc += coef * (-1) ** n * scale * _genlaguerre(n, d, lag_arg)
        if d == 0:
            total += acc.real
        else:
            # diagonal offset d and -d are complex conjugates of each other
            total += 2.0 * (acc * (math.sqrt(2.0) * z) ** d).real
    return total * gauss


def wigner_grid(state: FockVector, x_axis, p_axis, tol: float = NORM_TOL) -> WignerGrid:
    if not state.is_normalized(tol):
        raise ValueError(f"state norm^2 {state.norm() ** 2:.12g} is not 1")
    x = np.asarray(x_axis, dtype=float)
    p = np.asarray(p_axis, dtype=float)
    if x.size == 0 or p.size == 0 or not (np.all(np.isfinite(x)) and np.all(np.isfinite(p))):
        raise ValueError("grid axes must be finite and non-empty")
    xx, pp = np.meshgrid(x, p)
    return WignerGrid(x, p, wigner_values(state, xx, pp))


def parity_value(state: FockVector) -> float:
    """W(0, 0) from the photon-number parity, ``sum (-1)^n |c_n|^2 / pi``."""
    probs = state.photon_distribution()
    signs = np.where(np.arange(state.dim) % 2 == 0, 1.0, -1.0)
    return float(np.dot(signs, probs) / math.pi)
