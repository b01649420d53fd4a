"""Closed-form spectra in the weak and deep-strong coupling limits.

At g = 0 the chain is already diagonal, so the weak limit is just the sorted
onsite ladder.  At omega0 = 0 the chain carries an su(1,1) structure
(K0 = n + k with the intensity-dependent ladder K+-) and a squeeze rotation
tanh(xi) = 2g/omega diagonalizes it exactly:

    E_j = sqrt(omega^2 - 4 g^2) * (j + k) - omega * k,        j = 0, 1, ...

with the constant chosen so the g = 0 ground state sits at 0, matching the
lattice convention d_j = omega*j.  The rotation is hyperbolic, hence only
normalizable for g < omega/2; beyond that the spectrum is unbounded below
and no discrete closed form exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentRegimeError
from .model import ModelParams, Parity, onsite_energy


@dataclass(frozen=True)
class SqueezeParams:
    """Hyperbolic rotation angle and the resulting level spacing."""

    xi: float
    gap: float


def squeeze_params(params: ModelParams) -> SqueezeParams:
    """xi = artanh(2g/omega) and gap = sqrt(omega^2 - 4g^2); needs g < omega/2."""
    if not params.is_valid_regime:
        raise DivergentRegimeError(
            f"squeeze rotation requires g < omega/2, got g={params.g}, omega={params.omega}"
        )
    ratio = 2.0 * params.g / params.omega
    xi = math.atanh(ratio)
    gap = math.sqrt(params.omega**2 - 4.0 * params.g**2)
    return SqueezeParams(xi=xi, gap=gap)


def weak_limit_energies(params: ModelParams, parity: Parity, count: int) -> np.ndarray:
    """Lowest `count` energies at g = 0: the sorted onsite ladder of one sector.

    Sites are scanned far enough past `count` that sorting cannot be affected
    by the cutoff (entries grow like omega*j, offset at most omega0/2).
    """
    count = int(count)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    reach = count + int(math.ceil(params.omega0 / params.omega)) + 2
    ladder = onsite_energy(params, parity, np.arange(reach))
    ladder.sort(kind="stable")
    return ladder[:count]


def deep_strong_energies(params: ModelParams, count: int) -> np.ndarray:
    """Lowest `count` closed-form energies gap*(j+k) - omega*k.

    Exact for omega0 = 0 at any g < omega/2 (the 'deep-strong' name refers to
    g approaching omega/2, where the gap closes).  Raises DivergentRegimeError
    at or beyond the boundary.
    """
    count = int(count)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    sq = squeeze_params(params)
    j = np.arange(count, dtype=np.float64)
    return sq.gap * (j + params.k) - params.omega * params.k
