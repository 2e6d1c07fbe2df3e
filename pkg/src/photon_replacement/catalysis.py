"""Beam-splitter photon replacement with photon-number heralding.

Mode ``a`` carries the input state, mode ``b`` the ``k`` ancilla photons.
The beam splitter maps creation operators as::

    a+ -> sqrt(T) c+ + sqrt(1-T) d+
    b+ -> sqrt(1-T) c+ - sqrt(T) d+

so the reflected ancilla picks up the minus sign. Mode ``d`` is measured
(``m`` photons) and the conditional state is left in mode ``c``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import comb, gammaln

from .fock import FockVector

ZERO_PROBABILITY = 1e-300
LEAKAGE_TOL = 1e-12


@dataclass(frozen=True)
class ReplacementSpec:
    k: int = 1
    m: int = 1
    T: float = 0.5

    def __post_init__(self):
        _check_T(self.T)
        if self.k < 0 or self.m < 0:
            raise ValueError("photon counts must be >= 0")


@dataclass(frozen=True)
class HeraldOutcome:
    """Conditional mode-``c`` state after heralding ``m`` photons in mode ``d``.

    ``state`` is ``None`` when the event has zero probability.
    """

    state: FockVector | None
    probability: float
    herald: int

    @property
    def undefined(self) -> bool:
        return self.state is None


@dataclass(frozen=True)
class TwoModeFockVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 2:
            raise ValueError("two-mode amplitudes must be a 2-D array")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dims(self) -> tuple[int, int]:
        return self.amplitudes.shape

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @classmethod
    def product(cls, u: FockVector, v: FockVector) -> TwoModeFockVector:
        return cls(np.outer(u.amplitudes, v.amplitudes))

    @classmethod
    def basis(cls, n1: int, n2: int, dims: tuple[int, int]) -> TwoModeFockVector:
        amps = np.zeros(dims, dtype=complex)
        amps[n1, n2] = 1.0
        return cls(amps)


def _check_T(T: float) -> None:
    if not (0.0 <= T <= 1.0) or math.isnan(T):
        raise ValueError(f"transmissivity T={T} outside [0, 1]")


def bs_amplitude(n: int, k: int, m: int, T: float) -> float:
    """Amplitude of ``|n+k-m>_c |m>_d`` for input ``|n>_a |k>_b``."""
    _check_T(T)
    if m < 0 or m > n + k:
        return 0.0
    pre = math.exp(0.5 * (math.lgamma(m + 1) + math.lgamma(n + k - m + 1) - math.lgamma(n + 1) - math.lgamma(k + 1)))
    st, sr = math.sqrt(T), math.sqrt(1.0 - T)
    total = 0.0
    for j in range(k + 1):
        if not 0 <= m - j <= n:
            continue
        total += math.comb(n, m - j) * math.comb(k, j) * (-1) ** j * st ** (n - m + 2 * j) * sr ** (m + k - 2 * j)
    return pre * total


def bs_column(dim: int, k: int, m: int, T: float) -> np.ndarray:
    """``bs_amplitude(n, k, m, T)`` for ``n = 0 .. dim-1`` as one array."""
    _check_T(T)
    n = np.arange(dim)
    valid = n + k - m >= 0
    logpre = 0.5 * (gammaln(m + 1) + gammaln(np.maximum(n + k - m, 0) + 1) - gammaln(n + 1) - gammaln(k + 1))
    st, sr = math.sqrt(T), math.sqrt(1.0 - T)
    total = np.zeros(dim)
    # j > m has no weight and would put sqrt(1-T) at a negative power
    for j in range(min(k, m) + 1):
        binom = comb(n, m - j) * math.comb(k, j)
        live = binom != 0
        exp_t = np.where(live, n - m + 2 * j, 0)
        term = binom * np.power(st, exp_t) * sr ** (m + k - 2 * j)
        total += (-1) ** j * np.where(live, term, 0.0)
    return np.where(valid, np.exp(logpre) * total, 0.0)


def replace_unnormalized(state: FockVector, k: int, m: int, T: float) -> np.ndarray:
    """Unnormalised conditional amplitudes in mode ``c`` (length ``dim + k``)."""
    col = bs_column(state.dim, k, m, T)
    out = np.zeros(state.dim + k, dtype=complex)
    n = np.arange(state.dim)
    keep = n + k - m >= 0
    out[(n + k - m)[keep]] = state.amplitudes[keep] * col[keep]
    return out


def apply_replacement(state: FockVector, spec: ReplacementSpec) -> HeraldOutcome:
    raw = replace_unnormalized(state, spec.k, spec.m, spec.T)
    prob = float(np.vdot(raw, raw).real)
    if prob < ZERO_PROBABILITY:
        return HeraldOutcome(None, 0.0, spec.m)
    return HeraldOutcome(FockVector(raw / math.sqrt(prob)), prob, spec.m)


def herald_distribution(state: FockVector, k: int, T: float) -> list[tuple[int, float]]:
    """Probability of each herald count ``m = 0 .. dim-1+k``."""
    out = []
    for m in range(state.dim + k):
        raw = replace_unnormalized(state, k, m, T)
        out.append((m, float(np.vdot(raw, raw).real)))
    return out


def _hopping_block(total: int) -> np.ndarray:
    """Generator ``a+ b - a b+`` on the span of ``|j, total-j>``, ``j = 0..total``."""
    g = np.zeros((total + 1, total + 1))
    for j in range(total):
        # a+ b |j, total-j> = sqrt((j+1)(total-j)) |j+1, total-j-1>
        amp = math.sqrt((j + 1) * (total - j))
        g[j + 1, j] = amp
        g[j, j + 1] = -amp
    return g


def dense_bs_oracle(state: TwoModeFockVector, T: float, out_dims: tuple[int, int] | None = None) -> TwoModeFockVector:
    """Beam splitter built from the matrix exponential of the hopping generator.

    Works block by block in fixed total photon number; independent of
    :func:`bs_amplitude`. ``exp(theta G)`` maps ``a+ -> cos a+ - sin b+`` and
    ``b+ -> cos b+ + sin a+``; a ``(-1)^{n_b}`` phase on the input fixes the
    ancilla sign convention.
    """
    _check_T(T)
    theta = -math.acos(math.sqrt(T))
    na, nb = state.dims
    max_total = na + nb - 2
    full = np.zeros((max_total + 1, max_total + 1), dtype=complex)
    amps = state.amplitudes
    for total in range(max_total + 1):
        js = np.arange(total + 1)
        inside = (js < na) & (total - js < nb)
        if not inside.any():
            continue
        vec = np.zeros(total + 1, dtype=complex)
        vec[inside] = amps[js[inside], total - js[inside]]
        if not vec.any():
            continue
        vec *= np.where((total - js) % 2 == 0, 1.0, -1.0)
        rotated = expm(theta * _hopping_block(total)) @ vec
        full[js, total - js] = rotated
    if out_dims is None:
        return TwoModeFockVector(full)
    nc, nd = out_dims
    kept = np.zeros(out_dims, dtype=complex)
    rc, rd = min(nc, full.shape[0]), min(nd, full.shape[1])
    kept[:rc, :rd] = full[:rc, :rd]
    leak = state.norm() ** 2 - np.linalg.norm(kept) ** 2
    if leak > LEAKAGE_TOL:
        raise ValueError(f"truncation leakage {leak:.3e} exceeds {LEAKAGE_TOL:.0e}")
    return TwoModeFockVector(kept)
