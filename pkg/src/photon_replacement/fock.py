"""Truncated single-mode Fock-basis states.

States are stored as complex amplitude arrays indexed by photon number.
All constructors return immutable :class:`FockVector` values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammainc, gammaln

from .errors import DegenerateStateError, TruncationError

TAIL_TOL = 1e-12
NORM_TOL = 1e-10

# 1 dB of power squeezing corresponds to r = 1 / (20 log10 e)
_DB_PER_NEPER = 20.0 * math.log10(math.e)


@dataclass(frozen=True)
class FockVector:
    """Pure single-mode state, ``amplitudes[n]`` is the coefficient of ``|n>``."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).ravel()
        if amps.size == 0:
            raise ValueError("FockVector needs at least one amplitude")
        if not np.all(np.isfinite(amps)):
            raise ValueError("FockVector amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() ** 2 - 1.0) <= tol

    def normalized(self) -> FockVector:
        nrm = self.norm()
        if nrm == 0.0:
            raise DegenerateStateError("cannot normalise the zero vector")
        return FockVector(self.amplitudes / nrm)

    def padded(self, dim: int) -> FockVector:
        if dim < self.dim:
            raise ValueError(f"cannot pad dim {self.dim} down to {dim}")
        out = np.zeros(dim, dtype=complex)
        out[: self.dim] = self.amplitudes
        return FockVector(out)

    def parity_flipped(self) -> FockVector:
        """Apply ``(-1)^n``, i.e. the phase-space rotation by pi."""
        signs = np.where(np.arange(self.dim) % 2 == 0, 1.0, -1.0)
        return FockVector(self.amplitudes * signs)

    def photon_distribution(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def mean_photon_number(self) -> float:
        p = self.photon_distribution()
        return float(np.dot(np.arange(self.dim), p) / p.sum())

    def __add__(self, other: FockVector) -> FockVector:
        u, v = _common(self, other)
        return FockVector(u + v)

    def __sub__(self, other: FockVector) -> FockVector:
        u, v = _common(self, other)
        return FockVector(u - v)

    def __mul__(self, scalar: complex) -> FockVector:
        return FockVector(self.amplitudes * scalar)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_json(cls, data: dict) -> FockVector:
        amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
        if amps.size != int(data["dim"]):
            raise ValueError("dim does not match number of amplitudes")
        return cls(amps)


@dataclass(frozen=True)
class CatSpec:
    """Coherent-state superposition ``|alpha> + exp(i phi) |-alpha>``."""

    alpha: complex
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "phi", float(self.phi) % (2 * math.pi))


def _common(u: FockVector, v: FockVector) -> tuple[np.ndarray, np.ndarray]:
    dim = max(u.dim, v.dim)
    return u.padded(dim).amplitudes, v.padded(dim).amplitudes


def default_dim(alpha: complex, extra_photons: int = 0) -> int:
    """Truncation giving a Poisson tail far below 1e-12 for ``|alpha>``."""
    mean = abs(alpha) ** 2
    return max(20, math.ceil(mean + 10.0 * math.sqrt(mean + 1.0))) + int(extra_photons)


def coherent_tail(alpha: complex, dim: int) -> float:
    """Probability weight of ``|alpha>`` on photon numbers ``>= dim``."""
    mean = abs(alpha) ** 2
    if mean == 0.0:
        return 0.0
    # P(N >= dim) for N ~ Poisson(mean) is the regularised lower gamma function
    return float(gammainc(dim, mean))


def coherent(alpha: complex, dim: int | None = None, tail_tol: float | None = TAIL_TOL) -> FockVector:
    """Coherent state ``exp(-|alpha|^2/2) sum alpha^n / sqrt(n!) |n>``.

    Raises :class:`TruncationError` if the discarded tail exceeds ``tail_tol``;
    pass ``tail_tol=None`` to accept any truncation.
    """
    alpha = complex(alpha)
    if dim is None:
        dim = default_dim(alpha)
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if tail_tol is not None:
        tail = coherent_tail(alpha, dim)
        if tail > tail_tol:
            raise TruncationError(
                f"dim={dim} leaves tail weight {tail:.3e} > {tail_tol:.1e} for |alpha|={abs(alpha):.4g}"
            )
    amps = np.empty(dim, dtype=complex)
    amps[0] = math.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    return FockVector(amps)


def fock(n: int, dim: int) -> FockVector:
    if not 0 <= n < dim:
        raise ValueError(f"photon number {n} outside truncation dim {dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[n] = 1.0
    return FockVector(amps)


def cat_norm(spec: CatSpec) -> float:
    """Norm of ``|alpha> + e^{i phi}|-alpha>`` before renormalisation."""
    return math.sqrt(2.0 * (1.0 + math.cos(spec.phi) * math.exp(-2.0 * abs(spec.alpha) ** 2)))


def cat(spec: CatSpec, dim: int | None = None) -> FockVector:
    if dim is None:
        dim = default_dim(spec.alpha)
    nrm = cat_norm(spec)
    if nrm < 1e-12:
        raise DegenerateStateError("odd cat state at alpha=0 vanishes")
    plus = coherent(spec.alpha, dim)
    minus = coherent(-spec.alpha, dim)
    amps = (plus.amplitudes + np.exp(1j * spec.phi) * minus.amplitudes) / nrm
    # |alpha> and |-alpha> differ only by (-1)^n; zero the cancelled parity exactly
    n = np.arange(dim)
    if math.isclose(spec.phi, 0.0, abs_tol=1e-15):
        amps[n % 2 == 1] = 0.0
    elif math.isclose(spec.phi, math.pi, abs_tol=1e-15):
        amps[n % 2 == 0] = 0.0
    return FockVector(amps)


def squeezing_parameter(squeezing_db: float) -> float:
    return squeezing_db / _DB_PER_NEPER


def squeezed_vacuum(squeezing_db: float, dim: int = 40, orientation: int = 1) -> FockVector:
    """Squeezed vacuum with squeezing parameter ``orientation * r``.

    ``orientation=+1`` squeezes the x quadrature, ``-1`` the p quadrature.
    """
    if squeezing_db < 0:
        raise ValueError("squeezing_db must be >= 0")
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    r = orientation * squeezing_parameter(squeezing_db)
    amps = np.zeros(dim, dtype=complex)
    half = np.arange((dim + 1) // 2)
    if r == 0.0:
        amps[0] = 1.0
        return FockVector(amps)
    t = math.tanh(abs(r))
    sign = np.where(half % 2 == 0, 1.0, -1.0) if r > 0 else np.ones_like(half, dtype=float)
    log_mag = 0.5 * gammaln(2 * half + 1) - half * math.log(2.0) - gammaln(half + 1) + half * math.log(t)
    amps[2 * half] = sign * np.exp(log_mag) / math.sqrt(math.cosh(r))
    return FockVector(amps)


def inner(u: FockVector, v: FockVector) -> complex:
    """``<u|v>``, antilinear in ``u``; shorter vectors are zero-padded."""
    a, b = _common(u, v)
    return complex(np.vdot(a, b))


def fidelity(u: FockVector, v: FockVector) -> float:
    """Pure-state fidelity ``|<u|v>|^2`` of the normalised states."""
    return root_fidelity(u, v) ** 2


def root_fidelity(u: FockVector, v: FockVector) -> float:
    """Modulus ``|<u|v>|`` of the normalised states."""
    return min(1.0, abs(inner(u, v)) / (u.norm() * v.norm()))


def normalized_overlap(u: FockVector, v: FockVector) -> complex:
    """``<u|v> / (|u| |v|)`` with sign and phase kept."""
    return inner(u, v) / (u.norm() * v.norm())


def displacement_matrix(beta: complex, dim: int) -> np.ndarray:
    """Matrix elements ``<m|D(beta)|n>`` for ``m, n < dim``.

    Uses the closed-form Laguerre expression, so the truncated block is exact
    (no truncation of the generator before exponentiation).
    """
    beta = complex(beta)
    x = abs(beta) ** 2
    out = np.zeros((dim, dim), dtype=complex)
    for m in range(dim):
        for n in range(dim):
            lo, hi = min(m, n), max(m, n)
            d = hi - lo
            lag = _genlaguerre(lo, d, x)
            logpre = 0.5 * (gammaln(lo + 1) - gammaln(hi + 1)) - x / 2
            base = beta if m >= n else -beta.conjugate()
            out[m, n] = math.exp(logpre) * base**d * lag
    return out


def displace(state: FockVector, beta: complex, dim: int | None = None) -> FockVector:
    dim = dim or state.dim
    mat = displacement_matrix(beta, dim)
    return FockVector(mat @ state.padded(dim).amplitudes)


def _genlaguerre(n: int, a: int, x):
    """Generalised Laguerre ``L_n^{(a)}(x)`` by the three-term recurrence."""
    prev = np.ones_like(x, dtype=float)
    if n == 0:
        return prev
    cur = 1.0 + a - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur
