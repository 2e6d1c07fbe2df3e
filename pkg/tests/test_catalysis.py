import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from photon_replacement.catalysis import (
    ReplacementSpec,
    TwoModeFockVector,
    apply_replacement,
    bs_amplitude,
    bs_column,
    dense_bs_oracle,
    herald_distribution,
)
from photon_replacement.fock import FockVector, coherent, fock, inner
from photon_replacement.orthogonalize import solve_T, success_probability

from conftest import random_state

T_VALUES = [0.1, 0.13, 0.5, 0.9]


def oracle_conditional(state: FockVector, k: int, m: int, T: float) -> np.ndarray:
    """Project the dense-unitary output on ``m`` photons in mode d."""
    joint = TwoModeFockVector.product(state, fock(k, k + 1))
    out = dense_bs_oracle(joint, T).amplitudes
    col = np.zeros(state.dim + k, dtype=complex)
    if m < out.shape[1]:
        rows = min(out.shape[0], col.size)
        col[:rows] = out[:rows, m]
    return col


def test_fully_transmitting():
    assert bs_amplitude(1, 0, 0, 1.0) == 1.0


@pytest.mark.parametrize("T", [0.13, 0.5, 0.87])
def test_unitarity_column_norm(T):
    for n in range(7):
        for k in range(7):
            total = sum(bs_amplitude(n, k, m, T) ** 2 for m in range(n + k + 1))
            assert total == pytest.approx(1.0, abs=1e-12)


def test_hong_ou_mandel():
    assert abs(bs_amplitude(1, 1, 1, 0.5)) < 1e-15


def test_out_of_range_herald_is_zero():
    assert bs_amplitude(1, 1, 3, 0.4) == 0.0


def test_invalid_transmissivity():
    with pytest.raises(ValueError):
        bs_amplitude(1, 1, 1, 1.2)
    with pytest.raises(ValueError):
        ReplacementSpec(1, 1, -0.1)


@pytest.mark.parametrize("T", T_VALUES)
def test_oracle_matches_formula(T):
    for n in range(7):
        for k in range(7):
            out = dense_bs_oracle(TwoModeFockVector.basis(n, k, (7, 7)), T).amplitudes
            for m in range(n + k + 1):
                assert abs(out[n + k - m, m] - bs_amplitude(n, k, m, T)) < 1e-12
            # photon number conservation: nothing outside the n+k shell
            shell = np.add.outer(np.arange(out.shape[0]), np.arange(out.shape[1])) == n + k
            assert np.all(out[~shell] == 0)


@pytest.mark.parametrize("T", [0.0, 0.37, 1.0])
def test_vectorised_column_matches_scalar(T):
    for k in range(4):
        for m in range(6):
            col = bs_column(10, k, m, T)
            for n in range(10):
                assert col[n] == pytest.approx(bs_amplitude(n, k, m, T), abs=1e-14)


def test_oracle_two_photon_interference():
    out = dense_bs_oracle(TwoModeFockVector.basis(1, 1, (2, 2)), 0.5).amplitudes
    assert abs(out[1, 1]) < 1e-14
    assert abs(out[2, 0]) == pytest.approx(1 / math.sqrt(2), abs=1e-14)
    assert out[2, 0] == pytest.approx(-out[0, 2], abs=1e-14)


def test_oracle_leakage_check():
    state = TwoModeFockVector.basis(2, 1, (3, 2))
    with pytest.raises(ValueError):
        dense_bs_oracle(state, 0.5, out_dims=(2, 2))
    assert dense_bs_oracle(state, 0.5, out_dims=(4, 4)).norm() == pytest.approx(1.0, abs=1e-14)


def test_oracle_unitarity(rng):
    for _ in range(10):
        amps = rng.normal(size=(5, 4)) + 1j * rng.normal(size=(5, 4))
        state = TwoModeFockVector(amps)
        T = rng.uniform()
        assert dense_bs_oracle(state, T).norm() == pytest.approx(state.norm(), abs=1e-12)


def test_transmitting_splitter_returns_input():
    state = coherent(0.5)
    out = apply_replacement(state, ReplacementSpec(1, 1, 1.0))
    assert out.probability == pytest.approx(1.0, abs=1e-12)
    assert abs(inner(out.state, state)) == pytest.approx(1.0, abs=1e-12)


def test_mirror_splitter_against_oracle():
    # T = 0: the input is reflected into the herald mode, the ancilla into c
    state = coherent(0.5)
    out = apply_replacement(state, ReplacementSpec(1, 1, 0.0))
    ref = oracle_conditional(state, 1, 1, 0.0)
    assert out.probability == pytest.approx(np.linalg.norm(ref) ** 2, abs=1e-14)
    assert out.probability == pytest.approx(0.25 * math.exp(-0.25), abs=1e-14)
    assert abs(inner(out.state, fock(1, out.state.dim))) == pytest.approx(1.0, abs=1e-12)


def test_probability_matches_closed_form():
    out = apply_replacement(coherent(0.5), ReplacementSpec(1, 1, 0.13))
    assert out.probability == pytest.approx(success_probability(0.5, 0.13), abs=1e-10)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_replacement_matches_oracle_on_random_inputs(rng, k):
    state = random_state(rng, 8)
    for m in range(8 + k):
        ref = oracle_conditional(state, k, m, 0.31)
        out = apply_replacement(state, ReplacementSpec(k, m, 0.31))
        assert out.probability == pytest.approx(np.linalg.norm(ref) ** 2, abs=1e-12)
        if not out.undefined:
            np.testing.assert_allclose(out.state.amplitudes * math.sqrt(out.probability), ref, atol=1e-12)


def test_zero_probability_is_flagged():
    out = apply_replacement(fock(0, 3), ReplacementSpec(1, 2, 0.5))
    assert out.undefined
    assert out.probability == 0.0


def test_herald_distribution_vacuum_input():
    dist = dict(herald_distribution(fock(0, 1), 1, 0.3))
    assert dist[1] == pytest.approx(0.3, abs=1e-15)
    assert dist[0] == pytest.approx(0.7, abs=1e-15)


def test_herald_distribution_complete():
    dist = herald_distribution(coherent(1.0), 1, 0.5)
    assert sum(p for _, p in dist) == pytest.approx(1.0, abs=1e-10)


def test_most_likely_herald_at_optimum():
    dist = herald_distribution(coherent(1.0), 1, solve_T(1.0))
    assert max(dist, key=lambda mp: mp[1])[0] in (0, 1)


@given(st.integers(0, 2**32 - 1), st.integers(0, 3), st.floats(0.0, 1.0))
def test_completeness_random_inputs(seed, k, T):
    state = random_state(np.random.default_rng(seed), 10)
    total = sum(p for _, p in herald_distribution(state, k, T))
    assert total == pytest.approx(1.0, abs=1e-10)


@given(st.integers(0, 2**32 - 1), st.integers(0, 3), st.integers(0, 5), st.floats(0.01, 0.99))
def test_parity_covariance(seed, k, m, T):
    state = random_state(np.random.default_rng(seed), 10)
    a = apply_replacement(state, ReplacementSpec(k, m, T))
    b = apply_replacement(state.parity_flipped(), ReplacementSpec(k, m, T))
    assert a.probability == pytest.approx(b.probability, abs=1e-12)
    if not a.undefined:
        assert abs(inner(a.state.parity_flipped(), b.state)) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("alpha,T", [(0.5, 0.13), (1.0, 0.2), (0.3 + 0.4j, 0.6), (-0.8, 0.05)])
def test_conditional_state_operator_form(alpha, T):
    # exp(alpha sqrt(T) c+) (alpha (1-T) c+ - sqrt(T)) |0>, built with a ladder matrix
    dim = 40
    create = np.diag(np.sqrt(np.arange(1, dim)), -1)
    n = np.arange(dim)
    beta = alpha * math.sqrt(T)
    gen = np.array([beta**j / math.sqrt(math.factorial(j)) for j in n], dtype=complex)
    expected = alpha * (1 - T) * (create @ gen) - math.sqrt(T) * gen
    # exp(beta c+) and c+ commute, so applying c+ first is the same state
    expected /= np.linalg.norm(expected)
    out = apply_replacement(coherent(alpha, dim), ReplacementSpec(1, 1, T)).state
    assert abs(np.vdot(expected, out.amplitudes[:dim])) == pytest.approx(1.0, abs=1e-10)
