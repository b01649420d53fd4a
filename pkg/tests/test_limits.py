"""Closed-form limits against the lattice spectra and against raw algebra."""

import math

import numpy as np
import pytest

from idrabi import (
    DivergentRegimeError,
    ModelParams,
    Parity,
    build_hamiltonian,
    deep_strong_energies,
    eigen_tridiagonal,
    squeeze_params,
    weak_limit_energies,
)


def test_squeeze_values():
    sq = squeeze_params(ModelParams(1.0, 0.0, 0.25, 0.5))
    assert sq.xi == math.atanh(0.5)
    assert sq.gap == math.sqrt(0.75)
    # near the boundary the gap closes
    sq_edge = squeeze_params(ModelParams(1.0, 0.0, 0.49999, 0.5))
    assert sq_edge.gap == math.sqrt(1.0 - 4.0 * 0.49999**2)
    assert sq_edge.gap < 7e-3


def test_squeeze_hyperbolic_identity():
    # gap * cosh(xi) = omega ties the angle and the spacing together
    for omega, g in [(1.0, 0.1), (1.0, 0.45), (2.5, 1.2), (0.7, 0.34)]:
        sq = squeeze_params(ModelParams(omega, 0.0, g, 0.5))
        assert abs(sq.gap * math.cosh(sq.xi) - omega) <= 1e-12 * omega
        assert abs(math.tanh(sq.xi) - 2.0 * g / omega) <= 1e-15


def test_squeeze_rejects_boundary_and_beyond():
    with pytest.raises(DivergentRegimeError):
        squeeze_params(ModelParams(1.0, 0.0, 0.5, 0.5))
    with pytest.raises(DivergentRegimeError):
        squeeze_params(ModelParams(1.0, 0.0, 0.75, 0.5))


def test_weak_limit_values():
    p = ModelParams(omega=1.0, omega0=0.75, g=0.0, k=0.5)
    assert np.array_equal(weak_limit_energies(p, Parity.POSITIVE, 3), [0.375, 0.625, 2.375])
    assert np.array_equal(weak_limit_energies(p, Parity.NEGATIVE, 2), [-0.375, 1.375])
    with pytest.raises(ValueError):
        weak_limit_energies(p, Parity.POSITIVE, 0)


def test_weak_limit_reorders_when_omega0_large():
    # omega0 > omega interleaves the two qubit ladders; the cutoff must not clip it
    p = ModelParams(omega=1.0, omega0=4.4, g=0.0, k=0.5)
    for parity in (Parity.POSITIVE, Parity.NEGATIVE):
        got = weak_limit_energies(p, parity, 6)
        big = np.sort(
            [float(v) for v in build_hamiltonian(p, parity, 40).diagonal]
        )[:6]
        assert np.array_equal(got, big)
        assert np.all(np.diff(got) >= 0.0)


def test_weak_limit_matches_solver_at_zero_coupling():
    p = ModelParams(omega=1.0, omega0=2.3, g=0.0, k=0.5)
    h = build_hamiltonian(p, Parity.POSITIVE, 30)
    solved = eigen_tridiagonal(h).lowest(10)
    assert np.array_equal(weak_limit_energies(p, Parity.POSITIVE, 10), solved)


def test_weak_limit_is_the_small_g_limit():
    # at g = 1e-5 the level shifts are O(g^2 * (j+1)^2 / spacing) <~ 4e-8 << 1e-6
    p = ModelParams(omega=1.0, omega0=0.75, g=1e-5, k=0.5)
    for parity in (Parity.POSITIVE, Parity.NEGATIVE):
        solved = eigen_tridiagonal(build_hamiltonian(p, parity, 60)).lowest(10)
        closed = weak_limit_energies(p, parity, 10)
        assert np.max(np.abs(solved - closed)) <= 1e-6 * p.omega


def test_deep_strong_values():
    p = ModelParams(1.0, 0.0, 0.2, 0.5)
    gap = math.sqrt(1.0 - 0.16)
    expected = gap * (np.arange(2) + 0.5) - 0.5
    assert np.array_equal(deep_strong_energies(p, 2), expected)
    assert abs(expected[0] - (-0.0417424)) < 5e-8
    assert abs(expected[1] - 0.8747727) < 5e-8


def test_deep_strong_reduces_to_free_ladder():
    p = ModelParams(omega=1.3, omega0=0.0, g=0.0, k=0.8)
    assert np.allclose(deep_strong_energies(p, 5), 1.3 * np.arange(5), rtol=0.0, atol=1e-15)


def test_deep_strong_matches_lattice():
    for g in (0.1, 0.3, 0.45):
        for k in (0.5, 1.0, 1.7):
            p = ModelParams(1.0, 0.0, g, k)
            h = build_hamiltonian(p, Parity.POSITIVE, 400)
            lattice = eigen_tridiagonal(h).lowest(10)
            closed = deep_strong_energies(p, 10)
            assert np.max(np.abs(lattice - closed)) <= 1e-6 * p.omega


def test_deep_strong_rejects_divergent_regime():
    with pytest.raises(DivergentRegimeError):
        deep_strong_energies(ModelParams(1.0, 0.0, 0.5, 0.5), 3)
    with pytest.raises(DivergentRegimeError):
        deep_strong_energies(ModelParams(1.0, 0.0, 2.0, 0.5), 3)
    with pytest.raises(ValueError):
        deep_strong_energies(ModelParams(1.0, 0.0, 0.2, 0.5), 0)
