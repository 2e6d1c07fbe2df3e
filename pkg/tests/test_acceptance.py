"""Acceptance criteria, one test each, with a pass/fail line per criterion.

Run directly (``python tests/test_acceptance.py``) or via pytest; pytest
prints the lines in its terminal summary.
"""

import math
import sys

import numpy as np
import pytest

from photon_replacement.cascade import build_strategy, failure_overlap, run_cascade, stage_input_overlap
from photon_replacement.catalysis import TwoModeFockVector, bs_amplitude, dense_bs_oracle
from photon_replacement.fock import FockVector, fock
from photon_replacement.orthogonalize import (
    closed_form_T,
    dv_conversion_report,
    heralded_pair,
    idp_bound,
    pair_overlap,
    replacement_coefficients,
    solve_T,
    success_probability,
)
from photon_replacement.wigner import parity_value, wigner_grid, wigner_values

from conftest import ACCEPTANCE_LINES

STRATEGIES = ["unadapted", "adapted-success", "adapted-both"]


def record(number: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] C{number:02d} {title}: {detail}")
    assert ok, f"C{number} {title}: {detail}"


@pytest.fixture(scope="module")
def cascades():
    out = {}
    for alpha in (0.5, 1.0):
        for name in STRATEGIES:
            out[alpha, name] = run_cascade(alpha, build_strategy(name, 8), strategy=name)
    return out


def test_c01_oracle_equivalence():
    worst = 0.0
    for T in (0.1, 0.13, 0.5, 0.9):
        for n in range(7):
            for k in range(7):
                out = dense_bs_oracle(TwoModeFockVector.basis(n, k, (7, 7)), T).amplitudes
                for m in range(n + k + 1):
                    worst = max(worst, abs(out[n + k - m, m] - bs_amplitude(n, k, m, T)))
    record(1, "beam-splitter formula vs dense unitary", worst <= 1e-12, f"max |diff| = {worst:.2e} (tol 1e-12)")


def test_c02_consistency_triangle():
    worst = 0.0
    for alpha in np.linspace(0.2, 2.0, 10):
        for T in (np.arange(10) + 0.5) / 10:
            closed = success_probability(alpha, T)
            summed = float(np.sum(np.abs(replacement_coefficients(alpha, T)) ** 2))
            channel = heralded_pair(alpha, T)[0].probability
            worst = max(worst, abs(closed - summed), abs(closed - channel), abs(summed - channel))
    record(2, "P_success closed form = sum c_n^2 = channel", worst <= 1e-10, f"max pairwise diff = {worst:.2e} (tol 1e-10)")


def test_c03_transmissivity_at_half():
    cf, num = closed_form_T(0.5), solve_T(0.5)
    grid = np.linspace(0.1, 2.0, 50)
    worst = max(abs(closed_form_T(a) - solve_T(a)) for a in grid)
    ok = abs(cf - 0.13) <= 0.005 and abs(num - 0.13) <= 0.005 and worst <= 1e-8
    record(3, "T(0.5) ~ 0.13 and closed form = solver", ok,
           f"closed {cf:.6f}, solver {num:.6f} (0.13 +- 0.005); max |diff| on [0.1,2] = {worst:.2e} (tol 1e-8)")


def test_c04_orthogonality():
    vals = {a: pair_overlap(a, solve_T(a)) for a in (0.3, 0.5, 1.0, 1.5)}
    worst = max(vals.values())
    record(4, "normalised overlap at solved T", worst <= 1e-8, f"max overlap = {worst:.2e} (tol 1e-8)")


def test_c05_overlap_endpoints():
    low = pair_overlap(0.5, 1e-6)
    high = pair_overlap(0.5, 1.0)
    ok = abs(low - 1) <= 1e-3 and abs(high - math.exp(-0.5)) <= 1e-10
    record(5, "overlap endpoints at alpha=0.5", ok,
           f"T=1e-6: {low:.6f} (1 +- 1e-3); T=1: |diff from e^-0.5| = {abs(high - math.exp(-0.5)):.2e} (tol 1e-10)")


def test_c06_idp_proximity():
    small = np.linspace(0.01, 0.2, 20)
    all_alpha = np.linspace(0.01, 2.0, 100)
    ratios_small = [success_probability(a, solve_T(a)) / idp_bound(a) for a in small]
    ratios_all = [success_probability(a, solve_T(a)) / idp_bound(a) for a in all_alpha]
    ok = min(ratios_small) > 0.9 and max(ratios_all) < 1
    record(6, "P_success / P_IDP", ok,
           f"min ratio for alpha<=0.2: {min(ratios_small):.4f} (need > 0.9, at alpha={small[int(np.argmin(ratios_small))]:.3f}); "
           f"max ratio on (0,2]: {max(ratios_all):.4f} (need < 1)")


def test_c07_dv_conversion():
    row = dv_conversion_report(0.5, solve_T(0.5)).get("psi+", "(|0>-|1>)/sqrt2")
    record(7, "F(psi+, (|0>-|1>)/sqrt2) at alpha=0.5", row.fidelity >= 0.98,
           f"F = |<u|v>|^2 = {row.fidelity:.5f} (need >= 0.98); |<u|v>| = {row.root_fidelity:.5f}")


def test_c08_cat_conversion():
    rep = dv_conversion_report(0.5, solve_T(0.5))
    vac = rep.get("even-cat-out", "|0>")
    sq = rep.get("even-cat-out", "squeezed 2.4 dB")
    one = rep.get("odd-cat-out", "|1>")
    ok = abs(vac.fidelity - 0.96) <= 0.01 and sq.fidelity >= 0.99 and one.fidelity >= 0.999
    record(8, "cat conversion fidelities at alpha=0.5", ok,
           f"F(even,|0>) = {vac.fidelity:.5f} (0.96 +- 0.01), F(even,sq 2.4 dB) = {sq.fidelity:.5f} (>= 0.99), "
           f"F(odd,|1>) = {one.fidelity:.5f} (>= 0.999); |<u|v>| = {vac.root_fidelity:.4f}, "
           f"{sq.root_fidelity:.4f}, {one.root_fidelity:.5f}")


def test_c09_cascade_ordering(cascades):
    un, su, both = (cascades[1.0, n].cumulative_at(8) for n in STRATEGIES)
    bound = 1 - math.exp(-2)
    pinned = {"unadapted": 0.379253549333, "adapted-success": 0.407374208043, "adapted-both": 0.456145602637}
    drift = max(abs(cascades[1.0, n].cumulative_at(8) - v) for n, v in pinned.items())
    ok = un < su < both < bound and drift <= 1e-9
    record(9, "cascade ordering at alpha=1, depth 8", ok,
           f"{un:.6f} < {su:.6f} < {both:.6f} < {bound:.4f}; drift from pinned values {drift:.1e}")


def test_c10_failure_overlaps():
    stage1 = np.linspace(0.05, 1.5, 30)
    vac_ok = all(failure_overlap(a, 1, 0) > math.exp(-2 * a**2) for a in stage1)
    vac_small = failure_overlap(0.05, 1, 0)
    small = np.linspace(0.05, 0.3, 6)
    two_ok = all(failure_overlap(a, 1, 2) < math.exp(-2 * a**2) for a in small)
    three_ok = all(failure_overlap(a, 2, 3) < stage_input_overlap(a, 2) for a in small)
    ok = vac_ok and vac_small > 0.99 and two_ok and three_ok
    record(10, "failure-branch overlaps", ok,
           f"vacuum > initial on (0,1.5]: {vac_ok}; vacuum at 0.05 = {vac_small:.5f} (> 0.99); "
           f"two-photon < initial for alpha<=0.3: {two_ok}; stage-2 three-photon < pre-stage: {three_ok}")


def test_c11_wigner_anchors():
    vac = wigner_values(fock(0, 1), 0.0, 0.0)
    one = wigner_values(fock(1, 2), 0.0, 0.0)
    axis = np.arange(-5.0, 5.0 + 1e-9, 0.05)
    psi = heralded_pair(0.5, solve_T(0.5))[0].state
    integral = wigner_grid(psi, axis, axis).integral()
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(20):
        amps = rng.normal(size=15) + 1j * rng.normal(size=15)
        state = FockVector(amps).normalized()
        worst = max(worst, abs(wigner_values(state, 0.0, 0.0) - parity_value(state)))
    ok = abs(vac - 1 / math.pi) <= 1e-10 and abs(one + 1 / math.pi) <= 1e-10 and abs(integral - 1) <= 1e-3 and worst <= 1e-10
    record(11, "Wigner anchors", ok,
           f"W_vac(0) err {abs(vac - 1 / math.pi):.1e}, W_1(0) err {abs(one + 1 / math.pi):.1e}, "
           f"grid integral {integral:.6f}, parity identity max err {worst:.1e}")


def test_c12_parity_symmetry(cascades):
    worst = 0.0
    for trace in cascades.values():
        for s in trace.stages:
            worst = max(worst, abs(s.p_success - s.p_success_minus), abs(s.p_fail - s.p_fail_minus))
    record(12, "+/- branch probabilities equal", worst <= 1e-12, f"max diff = {worst:.1e} (tol 1e-12)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-rN"]))
