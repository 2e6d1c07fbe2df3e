"""Single-stage orthogonalisation of ``{|alpha>, |-alpha>}``.

One ancilla photon, herald on one photon. Analytic expressions (overlap,
success probability, closed-form transmissivity) sit next to the numerical
route through :mod:`catalysis` so each can check the other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .catalysis import HeraldOutcome, ReplacementSpec, apply_replacement
from .errors import BranchError, DegenerateStateError, NoRootError
from .fock import (
    CatSpec,
    FockVector,
    cat,
    coherent,
    default_dim,
    displace,
    fidelity,
    fock,
    normalized_overlap,
    root_fidelity,
    squeezed_vacuum,
)

# Uniform scan plus a log-spaced tail toward T -> 0, where roots of
# later cascade stages and of very weak amplitudes live.
T_SCAN = np.concatenate([np.logspace(-10, -4, 48, endpoint=False), np.linspace(1e-4, 1 - 1e-4, 512)])
ROOT_XTOL = 1e-15


@dataclass(frozen=True)
class OrthogonalisationResult:
    alpha: complex
    T_opt: float
    overlap_residual: float
    success_probability: float
    psi_plus: FockVector = field(repr=False)
    psi_minus: FockVector = field(repr=False)


def _require_alpha(alpha) -> None:
    if abs(alpha) == 0:
        raise DegenerateStateError("alpha = 0: |alpha> and |-alpha> coincide and cannot be orthogonalised")


def overlap_after(alpha: float, T: float) -> float:
    """Unnormalised ``<Psi+|Psi->`` for k = m = 1 (sign kept)."""
    a = abs(alpha) ** 2
    return math.exp(-(T + 1) * a) * ((1 - T) ** 2 * T * a**2 - (1 - 3 * T) * (1 - T) * a + T)


def success_probability(alpha: float, T: float) -> float:
    """Probability of the one-photon herald for a coherent input."""
    a = abs(alpha) ** 2
    return math.exp(-(1 - T) * a) * (T + (1 - T) * (1 - 3 * T) * a + (1 - T) ** 2 * T * a**2)


def analytic_normalized_overlap(alpha: float, T: float) -> float:
    """Signed overlap of the normalised pair, from the closed forms."""
    _require_alpha(alpha)
    return overlap_after(alpha, T) / success_probability(alpha, T)


def replacement_coefficients(alpha: complex, T: float, dim: int | None = None) -> np.ndarray:
    """Unnormalised output amplitudes ``e^{-|a|^2/2} a^n/sqrt(n!) sqrt(T)^(n-1) [T - n(1-T)]``.

    Indexed by the input photon number n, which equals the output photon
    number for k = m = 1. Differs from the channel output by a global sign.
    """
    dim = dim or default_dim(alpha)
    coh = coherent(alpha, dim).amplitudes
    n = np.arange(dim)
    if T == 0.0:
        # sqrt(T)^(n-1) [T - n(1-T)] -> -1 at n = 1 and 0 elsewhere
        factor = np.where(n == 1, -1.0, 0.0)
    else:
        factor = math.sqrt(T) ** (n - 1.0) * (T - n * (1 - T))
    return coh * factor


def heralded_pair(alpha: complex, T: float, dim: int | None = None) -> tuple[HeraldOutcome, HeraldOutcome]:
    """Replacement outcomes for inputs ``|alpha>`` and ``|-alpha>`` (k = m = 1)."""
    _require_alpha(alpha)
    dim = dim or default_dim(alpha)
    spec = ReplacementSpec(k=1, m=1, T=T)
    return apply_replacement(coherent(alpha, dim), spec), apply_replacement(coherent(-alpha, dim), spec)


def pair_overlap(alpha: complex, T: float, dim: int | None = None) -> float:
    """``|<Psi+|Psi->|`` of the normalised heralded pair, computed numerically."""
    plus, minus = heralded_pair(alpha, T, dim)
    if plus.undefined or minus.undefined:
        return math.nan
    return abs(normalized_overlap(plus.state, minus.state))


def find_orthogonal_T(
    overlap: Callable[[float], float],
    probability: Callable[[float], float],
    tol: float = 1e-10,
    grid: Sequence[float] = T_SCAN,
) -> float:
    """Root of a signed branch-overlap function on (0, 1).

    Scans ``grid`` for sign changes, refines each bracket with Brent's method,
    and returns the root with the largest ``probability``.
    """
    values = np.array([overlap(t) for t in grid])
    roots = []
    for i in range(len(grid) - 1):
        lo, hi = values[i], values[i + 1]
        if not (np.isfinite(lo) and np.isfinite(hi)):
            continue
        if lo == 0.0:
            roots.append(float(grid[i]))
        elif lo * hi < 0:
            roots.append(brentq(overlap, grid[i], grid[i + 1], xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps))
    if not roots:
        raise NoRootError("no sign change of the branch overlap on (0, 1)")
    best = max(roots, key=probability)
    residual = abs(overlap(best))
    if residual > tol:
        raise NoRootError(f"root at T={best:.6g} leaves overlap {residual:.3e} > {tol:.1e}")
    return best


def solve_T(alpha: float, tol: float = 1e-10) -> float:
    """Transmissivity that orthogonalises the heralded pair, found numerically."""
    _require_alpha(alpha)
    dim = default_dim(alpha)
    plus_in, minus_in = coherent(alpha, dim), coherent(-alpha, dim)

    def signed(T):
        spec = ReplacementSpec(1, 1, T)
        p, q = apply_replacement(plus_in, spec), apply_replacement(minus_in, spec)
        if p.undefined or q.undefined:
            return math.nan
        return normalized_overlap(p.state, q.state).real

    def prob(T):
        return apply_replacement(plus_in, ReplacementSpec(1, 1, T)).probability

    return find_orthogonal_T(signed, prob, tol)


def closed_form_candidates(alpha: float) -> list[complex]:
    """All three cube-root branches of the closed-form transmissivity."""
    _require_alpha(alpha)
    a = abs(alpha) ** 2
    disc = a**3 * (27 - 2 * a * (9 + a**2)) + 3 * math.sqrt(3) * cmath.sqrt(-(a**6) * (5 + 4 * a * (9 + a + a**2)))
    root = disc ** (1 / 3)
    cbrt_m2 = (-2 + 0j) ** (1 / 3)
    out = []
    for k in range(3):
        c = root * cmath.exp(2j * math.pi * k / 3)
        t = (4 * a * (3 + 2 * a) - 4 * cbrt_m2 * a**2 * (6 + a**2) / c + 2 * cbrt_m2**2 * c) / (12 * a**2)
        out.append(t)
    return out


def closed_form_T(alpha: float, imag_tol: float = 1e-9) -> float:
    """Closed-form orthogonalising transmissivity (the unique branch in (0, 1))."""
    if abs(alpha) == 0:
        raise DegenerateStateError("closed form is singular at alpha = 0")
    candidates = closed_form_candidates(alpha)
    physical = [t.real for t in candidates if abs(t.imag) < imag_tol and 0.0 < t.real < 1.0]
    if len(physical) != 1:
        raise BranchError(f"expected one real root in (0,1) for alpha={alpha}, got candidates {candidates}")
    return physical[0]


def idp_bound(alpha: float) -> float:
    """Optimal unambiguous-discrimination success probability ``1 - |<alpha|-alpha>|``."""
    return 1.0 - math.exp(-2.0 * abs(alpha) ** 2)


def helstrom_error(alpha: float) -> float:
    """Minimum-error probability for equiprobable ``|alpha>``, ``|-alpha>``."""
    return 0.5 * (1.0 - math.sqrt(1.0 - math.exp(-4.0 * abs(alpha) ** 2)))


def orthogonalise(alpha: float, T: float | None = None, tol: float = 1e-10) -> OrthogonalisationResult:
    if T is None:
        T = solve_T(alpha, tol)
    plus, minus = heralded_pair(alpha, T)
    if plus.undefined or minus.undefined:
        raise DegenerateStateError(f"herald has zero probability at T={T}")
    return OrthogonalisationResult(
        alpha=complex(alpha),
        T_opt=T,
        overlap_residual=abs(normalized_overlap(plus.state, minus.state)),
        success_probability=plus.probability,
        psi_plus=plus.state,
        psi_minus=minus.state,
    )


def transformed_cat(alpha: float, T: float, phi: float, dim: int | None = None) -> HeraldOutcome:
    """Heralded output for the cat input ``|alpha> + e^{i phi}|-alpha>``."""
    _require_alpha(alpha)
    dim = dim or default_dim(alpha)
    return apply_replacement(cat(CatSpec(alpha, phi), dim), ReplacementSpec(1, 1, T))


def dv_superposition(sign: int, dim: int) -> FockVector:
    """``(|0> + sign |1>) / sqrt(2)``."""
    amps = np.zeros(dim, dtype=complex)
    amps[0], amps[1] = 1.0, sign
    return FockVector(amps / math.sqrt(2.0))


@dataclass(frozen=True)
class FidelityRow:
    output: str
    target: str
    fidelity: float
    root_fidelity: float


@dataclass(frozen=True)
class ConversionReport:
    alpha: float
    T: float
    rows: tuple[FidelityRow, ...]
    squeezing_db: float
    squeezing_orientation: int

    def get(self, output: str, target: str) -> FidelityRow:
        for row in self.rows:
            if row.output == output and row.target == target:
                return row
        raise KeyError((output, target))


def _row(output: str, target: str, u: FockVector, v: FockVector) -> FidelityRow:
    return FidelityRow(output, target, fidelity(u, v), root_fidelity(u, v))


def dv_conversion_report(alpha: float, T: float | None = None, squeezing_db: float = 2.4) -> ConversionReport:
    """Fidelities of the heralded outputs with their discrete-variable targets.

    Both ``|<u|v>|^2`` and ``|<u|v>|`` are reported for every pair. The
    squeezed-vacuum reference is tried in both quadrature orientations and
    the better one kept.
    """
    if T is None:
        T = solve_T(alpha)
    plus, minus = heralded_pair(alpha, T)
    even = transformed_cat(alpha, T, 0.0).state
    odd = transformed_cat(alpha, T, math.pi).state
    dim = even.dim
    sq = {o: squeezed_vacuum(squeezing_db, dim, o) for o in (1, -1)}
    best = max(sq, key=lambda o: fidelity(even, sq[o]))
    rows = (
        _row("psi+", "(|0>-|1>)/sqrt2", plus.state, dv_superposition(-1, dim)),
        _row("psi-", "(|0>+|1>)/sqrt2", minus.state, dv_superposition(+1, dim)),
        _row("even-cat-out", "|0>", even, fock(0, dim)),
        _row("even-cat-out", f"squeezed {squeezing_db:g} dB", even, sq[best]),
        _row("odd-cat-out", "|1>", odd, fock(1, dim)),
    )
    return ConversionReport(float(alpha), T, rows, squeezing_db, best)


@dataclass(frozen=True)
class DisplacementResult:
    beta: complex
    fidelity: float
    fidelity_undisplaced: float


def displacement_sweep(alpha: float, T: float, betas: Sequence[complex], branch: int = +1) -> DisplacementResult:
    """Best ``F(D(beta) psi, (|0> -+ |1>)/sqrt2)`` over a finite displacement grid.

    ``branch=+1`` uses ``psi+`` with target ``(|0>-|1>)/sqrt2``; ``-1`` the mirror pair.
    """
    betas = list(betas)
    if not betas:
        raise ValueError("displacement grid is empty")
    plus, minus = heralded_pair(alpha, T)
    psi = plus.state if branch > 0 else minus.state
    dim = psi.dim + 10
    target = dv_superposition(-branch, dim)
    scores = [fidelity(displace(psi, b, dim), target) for b in betas]
    i = int(np.argmax(scores))
    return DisplacementResult(complex(betas[i]), scores[i], fidelity(psi, target))
