"""Parameter validation, chain construction, and container behavior."""

import json

import numpy as np
import pytest

from idrabi import (
    ModelParams,
    Parity,
    TridiagonalHamiltonian,
    build_hamiltonian,
    coupling,
    onsite_energy,
)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(omega=0.0, omega0=0.0, g=0.1, k=0.5)
    with pytest.raises(ValueError):
        ModelParams(omega=-1.0, omega0=0.0, g=0.1, k=0.5)
    with pytest.raises(ValueError):
        ModelParams(omega=1.0, omega0=0.0, g=0.1, k=0.0)
    with pytest.raises(ValueError):
        ModelParams(omega=1.0, omega0=0.0, g=-0.1, k=0.5)
    with pytest.raises(ValueError):
        ModelParams(omega=1.0, omega0=-0.5, g=0.1, k=0.5)
    with pytest.raises(ValueError):
        ModelParams(omega=float("nan"), omega0=0.0, g=0.1, k=0.5)
    with pytest.raises(ValueError):
        ModelParams(omega=1.0, omega0=float("inf"), g=0.1, k=0.5)


def test_validity_window_boundary():
    assert ModelParams(1.0, 0.0, 0.49999, 0.5).is_valid_regime
    assert not ModelParams(1.0, 0.0, 0.5, 0.5).is_valid_regime
    assert not ModelParams(1.0, 0.0, 0.6, 0.5).is_valid_regime
    # the window scales with omega
    assert ModelParams(2.0, 0.0, 0.6, 0.5).is_valid_regime


def test_parity_labels():
    assert Parity.POSITIVE.sign == 1
    assert Parity.NEGATIVE.sign == -1
    assert Parity.from_label("+") is Parity.POSITIVE
    assert Parity.from_label("negative") is Parity.NEGATIVE
    assert Parity.from_label("POS") is Parity.POSITIVE
    with pytest.raises(ValueError):
        Parity.from_label("sideways")


def test_onsite_energy_values():
    p = ModelParams(omega=1.0, omega0=0.75, g=0.4, k=0.5)
    assert onsite_energy(p, Parity.POSITIVE, 0) == 0.375
    assert onsite_energy(p, Parity.POSITIVE, 1) == 0.625
    assert onsite_energy(p, Parity.NEGATIVE, 0) == -0.375
    assert onsite_energy(p, Parity.NEGATIVE, 1) == 1.375
    with pytest.raises(ValueError):
        onsite_energy(p, Parity.POSITIVE, -1)


def test_coupling_values():
    p = ModelParams(omega=1.0, omega0=0.75, g=0.4, k=0.5)
    assert coupling(p, 0) == 0.4
    assert coupling(p, 1) == 0.8  # 0.4 * sqrt(2 * 2)
    # k = 1/2 collapses the square root: e_j = g * (j + 1), exactly
    j = np.arange(50)
    assert np.array_equal(coupling(p, j), 0.4 * (j + 1.0))
    with pytest.raises(ValueError):
        coupling(p, -3)


def test_coupling_nonnegative_and_increasing():
    rng = np.random.default_rng(11)
    for _ in range(25):
        p = ModelParams(
            omega=rng.uniform(0.1, 3.0),
            omega0=rng.uniform(0.0, 3.0),
            g=rng.uniform(0.0, 1.5),
            k=rng.uniform(0.05, 4.0),
        )
        e = coupling(p, np.arange(40))
        assert np.all(e >= 0.0)
        if p.g > 0:
            assert np.all(np.diff(e) > 0.0)


def test_build_matches_entry_functions():
    rng = np.random.default_rng(12)
    for _ in range(25):
        p = ModelParams(
            omega=rng.uniform(0.1, 3.0),
            omega0=rng.uniform(0.0, 3.0),
            g=rng.uniform(0.0, 1.5),
            k=rng.uniform(0.05, 4.0),
        )
        parity = Parity.POSITIVE if rng.integers(2) else Parity.NEGATIVE
        n = int(rng.integers(1, 30))
        h = build_hamiltonian(p, parity, n)
        sites = np.arange(n)
        assert np.array_equal(h.diagonal, onsite_energy(p, parity, sites))
        assert np.array_equal(h.offdiagonal, coupling(p, sites[:-1]))
        assert h.size == n


def test_parity_sectors_differ_only_on_diagonal():
    p = ModelParams(omega=1.0, omega0=0.8, g=0.3, k=0.75)
    hp = build_hamiltonian(p, Parity.POSITIVE, 24)
    hn = build_hamiltonian(p, Parity.NEGATIVE, 24)
    assert np.array_equal(hp.offdiagonal, hn.offdiagonal)
    j = np.arange(24)
    expected = p.omega0 * (1.0 - 2.0 * (j % 2))
    # differencing the omega*j ramp leaves a few ulps at the high sites
    assert np.allclose(hp.diagonal - hn.diagonal, expected, rtol=0.0, atol=1e-13)


def test_hamiltonian_validation_and_immutability():
    p = ModelParams(1.0, 0.0, 0.1, 0.5)
    with pytest.raises(ValueError):
        TridiagonalHamiltonian([1.0, 2.0], [0.1, 0.2], p, Parity.POSITIVE)
    with pytest.raises(ValueError):
        TridiagonalHamiltonian([], [], p, Parity.POSITIVE)
    with pytest.raises(ValueError):
        TridiagonalHamiltonian([1.0, np.inf], [0.1], p, Parity.POSITIVE)
    with pytest.raises(ValueError):
        build_hamiltonian(p, Parity.POSITIVE, 0)

    h = build_hamiltonian(p, Parity.POSITIVE, 5)
    with pytest.raises(ValueError):
        h.diagonal[0] = 99.0

    single = build_hamiltonian(p, Parity.POSITIVE, 1)
    assert single.offdiagonal.size == 0


def test_dense_matvec_norm_agree():
    p = ModelParams(1.0, 0.6, 0.35, 1.25)
    h = build_hamiltonian(p, Parity.NEGATIVE, 9)
    dense = h.dense()
    assert np.array_equal(dense, dense.T)
    rng = np.random.default_rng(3)
    vec = rng.normal(size=9) + 1j * rng.normal(size=9)
    assert np.allclose(h.matvec(vec), dense @ vec, rtol=0.0, atol=1e-14)
    rowsum = np.abs(dense).sum(axis=1).max()
    assert abs(h.norm_inf - rowsum) <= 1e-14 * rowsum
    with pytest.raises(ValueError):
        h.matvec(np.ones(4))


def test_hamiltonian_json_round_trip():
    p = ModelParams(1.0, 0.75, 0.4, 0.5)
    h = build_hamiltonian(p, Parity.NEGATIVE, 6)
    data = json.loads(h.to_json())
    assert data["omega"] == 1.0
    assert data["omega0"] == 0.75
    assert data["g"] == 0.4
    assert data["k"] == 0.5
    assert data["parity"] == "negative"
    assert data["size"] == 6
    rebuilt = TridiagonalHamiltonian(
        data["diagonal"], data["offdiagonal"], p, Parity.from_label(data["parity"])
    )
    assert np.array_equal(rebuilt.diagonal, h.diagonal)
    assert np.array_equal(rebuilt.offdiagonal, h.offdiagonal)
