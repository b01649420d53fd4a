"""Tests for parameter sweeps, crossing analysis, and SVG rendering.

The g = 0 sweeps are fully solvable by hand (the chains are diagonal), which
pins every detector code path to exact arithmetic: zero same-parity gaps at
the level collision, an exact grid degeneracy when the crossing sits on a
grid point, and a bisected bracket when it does not.
"""

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from idrabi.model import ModelParams, Parity, build_hamiltonian
from idrabi.evolution import evolve, site_state
from idrabi.sweep import analyze_crossings, evolution_svg, sweep_spectrum, sweep_svg

DECOUPLED = ModelParams(omega=1.0, omega0=0.75, g=0.0, k=0.5)
FIG = ModelParams(omega=1.0, omega0=0.75, g=0.4, k=0.5)


def test_sweep_validation():
    with pytest.raises(ValueError, match="swept parameter"):
        sweep_spectrum(DECOUPLED, "k", [0.1, 0.2], levels=1, size=8)
    with pytest.raises(ValueError, match="increasing"):
        sweep_spectrum(DECOUPLED, "omega0", [0.2, 0.1], levels=1, size=8)
    with pytest.raises(ValueError, match="two points"):
        sweep_spectrum(DECOUPLED, "omega0", [0.2], levels=1, size=8)
    with pytest.raises(ValueError, match="negative"):
        sweep_spectrum(DECOUPLED, "g", [-0.1, 0.2], levels=1, size=8)
    with pytest.raises(ValueError, match="finite"):
        sweep_spectrum(DECOUPLED, "g", [0.1, np.inf], levels=1, size=8)
    with pytest.raises(ValueError, match="levels"):
        sweep_spectrum(DECOUPLED, "g", [0.1, 0.2], levels=0, size=8)
    with pytest.raises(ValueError, match="too small"):
        sweep_spectrum(DECOUPLED, "g", [0.1, 0.2], levels=9, size=8)


def test_decoupled_branches_by_hand():
    # diagonal chains: E = sorted {omega j +- omega0/2 (-1)^j}, all dyadic
    res = sweep_spectrum(DECOUPLED, "omega0", [0.5, 1.0, 1.5, 2.0, 2.5], levels=2, size=12)
    np.testing.assert_array_equal(
        res.branches_positive,
        [[0.25, 0.75], [0.5, 0.5], [0.25, 0.75], [0.0, 1.0], [-0.25, 1.25]],
    )
    np.testing.assert_array_equal(
        res.branches_negative,
        [[-0.25, 1.25], [-0.5, 1.5], [-0.75, 1.25], [-1.0, 1.0], [-1.25, 0.75]],
    )
    assert res.converged.all()
    assert res.points == 5
    assert res.params_at(3).omega0 == 2.0
    assert res.params_at(3).g == 0.0


def test_decoupled_level_collision_and_grid_degeneracy():
    res = sweep_spectrum(DECOUPLED, "omega0", [0.5, 1.0, 1.5, 2.0, 2.5], levels=2, size=12)
    report = analyze_crossings(res)

    by_key = {(w.parity, w.level): w for w in report.within_parity}
    collision = by_key[("positive", 0)]
    assert collision.min_gap == 0.0
    assert collision.parameter == 1.0
    assert not collision.avoided
    spectator = by_key[("negative", 0)]
    assert spectator.min_gap == 1.5
    assert spectator.avoided

    # E_pos[1] = E_neg[1] = 1 exactly at omega0 = 2, and 2.0 is a grid point
    assert len(report.between_parity) == 1
    cross = report.between_parity[0]
    assert cross.kind == "grid_degeneracy"
    assert (cross.level_positive, cross.level_negative) == (1, 1)
    assert cross.parameter == 2.0
    assert cross.parameter_low == cross.parameter_high == 2.0
    assert report.sign_change_count() == 0


def test_decoupled_crossing_is_bisected_off_grid():
    # same crossing, but 2.0 falls between grid points: the bracket must be
    # refined down to the analytic root
    res = sweep_spectrum(DECOUPLED, "omega0", [0.5, 1.1, 1.7, 2.3, 2.9], levels=2, size=12)
    report = analyze_crossings(res)
    assert report.sign_change_count() == 1
    cross = next(c for c in report.between_parity if c.kind == "sign_change")
    assert (cross.level_positive, cross.level_negative) == (1, 1)
    assert abs(cross.parameter - 2.0) <= 1e-8
    assert cross.parameter_high - cross.parameter_low <= 1e-8
    assert 1.7 <= cross.parameter_low <= cross.parameter_high <= 2.3


def test_convergence_flag_tracks_divergence_boundary():
    base = ModelParams(omega=1.0, omega0=0.4, g=0.1, k=0.75)
    res = sweep_spectrum(base, "g", [0.3, 0.45, 0.55], levels=2, size=300)
    assert res.converged.tolist() == [True, True, False]
    # diverging points still carry finite numbers for the truncated matrix
    assert np.all(np.isfinite(res.branches_positive))


def test_coupled_sweep_gaps_stay_open():
    res = sweep_spectrum(FIG, "omega0", np.linspace(0.5, 1.5, 7), levels=3, size=60)
    assert res.converged.all()
    report = analyze_crossings(res)
    assert len(report.within_parity) == 4
    for w in report.within_parity:
        assert w.avoided
        assert w.min_gap > 0.01
    for parity in (Parity.POSITIVE, Parity.NEGATIVE):
        branch = res.branches(parity)
        assert np.all(np.diff(branch, axis=1) > 0.0)


def test_gap_tol_flips_avoided_flag():
    res = sweep_spectrum(FIG, "omega0", np.linspace(0.5, 1.5, 7), levels=2, size=60)
    loose = analyze_crossings(res, gap_tol=10.0)
    assert all(not w.avoided for w in loose.within_parity)
    with pytest.raises(ValueError):
        analyze_crossings(res, gap_tol=0.0)


def test_rows_and_report_dict():
    res = sweep_spectrum(DECOUPLED, "omega0", [0.5, 1.0, 1.5, 2.0, 2.5], levels=2, size=12)
    rows = res.to_rows()
    assert len(rows) == 5 * 2 * 2
    assert rows[0] == (0.5, "positive", 0, 0.25, True)
    assert rows[3] == (0.5, "negative", 1, 1.25, True)
    d = analyze_crossings(res).to_dict()
    assert d["gap_tol"] == 1e-6
    assert d["within_parity"][0]["avoided"] is False
    assert d["between_parity"][0]["kind"] == "grid_degeneracy"


def svg_is_well_formed(text):
    root = ET.fromstring(text)
    assert root.tag.endswith("svg")
    return text


def test_sweep_svg_renders():
    res = sweep_spectrum(DECOUPLED, "omega0", [0.5, 1.0, 1.5, 2.0, 2.5], levels=2, size=12)
    svg = svg_is_well_formed(sweep_svg(res))
    assert "parity branches" in svg
    assert "#c0392b" in svg and "#2455a4" in svg
    assert 'stroke-dasharray="6,4"' in svg
    assert svg == sweep_svg(res)  # byte-stable rendering


def test_evolution_svg_renders():
    h = build_hamiltonian(FIG, Parity.POSITIVE, 60)
    trace = evolve(h, site_state(60), 8.0, 33)
    svg = svg_is_well_formed(evolution_svg(trace))
    assert svg.count("<polyline") == 3
    assert "sigma_z" in svg and "site-0 intensity" in svg
    assert svg == evolution_svg(trace)
