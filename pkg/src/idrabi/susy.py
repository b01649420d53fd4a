"""Supersymmetric partner chains at zero qubit splitting.

With omega0 = 0 the chain Hamiltonian factorizes through a first-order
operator A built from the squeeze rotation, H_- = A_dag A up to the canonical
constant, and the partner H_+ = A A_dag shares its spectrum shifted by one
level (unbroken supersymmetry: H_- alone keeps a zero mode).  Concretely,

    H_-  diag  omega*(j+k)       - k*gap        hop  g*sqrt((j+1)(j+2k))
    H_+  diag  omega*(j+k+1/2) + (1/2-k)*gap    hop  g*sqrt((j+1)(j+2k+1))

with gap = sqrt(omega^2 - 4g^2), so the partner is the same model at
Bargmann index k + 1/2.  Closed-form spectra: gap*j and gap*(j+1).  The
verification here is numerical and works on the truncated matrices, so it
doubles as an end-to-end check of the eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigen import eigen_tridiagonal
from .errors import NonDegenerateQubitError
from .limits import squeeze_params
from .model import ModelParams, Parity, TridiagonalHamiltonian, coupling
from .serialize import json_dumps


def _require_susy_regime(params: ModelParams) -> float:
    """Return the gap after checking omega0 = 0 and g < omega/2."""
    if params.omega0 != 0.0:
        raise NonDegenerateQubitError(
            f"partner construction needs omega0 = 0, got omega0={params.omega0}"
        )
    return squeeze_params(params).gap


def alpha_parameter(params: ModelParams) -> float:
    """Normalization alpha = sqrt((omega + gap)/2) of the factorizing operator."""
    gap = _require_susy_regime(params)
    return math.sqrt(0.5 * (params.omega + gap))


@dataclass(frozen=True, eq=False)
class SusyPair:
    """Partner Hamiltonians truncated to the same size."""

    h_minus: TridiagonalHamiltonian
    h_plus: TridiagonalHamiltonian
    params: ModelParams
    alpha: float

    @property
    def size(self) -> int:
        return self.h_minus.size


def build_susy_pair(params: ModelParams, size: int) -> SusyPair:
    """Materialize H_- and H_+ on `size` sites (size >= 2).

    The H_+ metadata carries k + 1/2: its hopping is exactly the canonical
    coupling at the shifted Bargmann index.
    """
    size = int(size)
    if size < 2:
        raise ValueError(f"partner chains need size >= 2, got {size}")
    gap = _require_susy_regime(params)
    j = np.arange(size, dtype=np.float64)
    omega, k = params.omega, params.k

    diag_minus = omega * (j + k) - k * gap
    diag_plus = omega * (j + k + 0.5) + (0.5 - k) * gap
    off_minus = coupling(params, np.arange(size - 1))
    params_plus = params.replace(k=k + 0.5)
    off_plus = coupling(params_plus, np.arange(size - 1))

    h_minus = TridiagonalHamiltonian(diag_minus, off_minus, params, Parity.POSITIVE)
    h_plus = TridiagonalHamiltonian(diag_plus, off_plus, params_plus, Parity.POSITIVE)
    return SusyPair(h_minus, h_plus, params, alpha_parameter(params))


def closed_form_susy_energies(params: ModelParams, count: int):
    """(Omega_j, Omega_j_partner) = (gap*j, gap*(j+1)) for j < count."""
    count = int(count)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    gap = _require_susy_regime(params)
    j = np.arange(count, dtype=np.float64)
    return gap * j, gap * (j + 1.0)


@dataclass(frozen=True, eq=False)
class IsospectralityReport:
    """Numerical comparison of the two partner spectra.

    Unbroken supersymmetry means omega_minus[0] ~ 0 and
    omega_minus[i+1] ~ omega_plus[i]; `passed` requires every residual at or
    below `tol`.
    """

    levels: int
    omega_minus: np.ndarray
    omega_plus: np.ndarray
    ground_residual: float
    match_residuals: np.ndarray
    tol: float
    passed: bool

    def __post_init__(self):
        self.omega_minus.flags.writeable = False
        self.omega_plus.flags.writeable = False
        self.match_residuals.flags.writeable = False

    def to_rows(self):
        """CSV rows (level, omega_minus, omega_plus_shifted, residual).

        Level 0 has no partner image; its residual is the distance of the
        zero mode from 0.
        """
        rows = [(0, float(self.omega_minus[0]), None, self.ground_residual)]
        for i in range(1, self.levels):
            rows.append(
                (
                    i,
                    float(self.omega_minus[i]),
                    float(self.omega_plus[i - 1]),
                    float(self.match_residuals[i - 1]),
                )
            )
        return rows

    def to_dict(self) -> dict:
        return {
            "levels": self.levels,
            "omega_minus": self.omega_minus.tolist(),
            "omega_plus": self.omega_plus.tolist(),
            "ground_residual": self.ground_residual,
            "match_residuals": self.match_residuals.tolist(),
            "tol": self.tol,
            "passed": self.passed,
        }

    def to_json(self, **kwargs) -> str:
        return json_dumps(self.to_dict(), **kwargs)


def verify_isospectrality(pair: SusyPair, levels: int, tol: float) -> IsospectralityReport:
    """Diagonalize both partners and compare the lowest `levels` levels."""
    levels = int(levels)
    if not 1 <= levels <= pair.size:
        raise ValueError(f"need 1 <= levels <= {pair.size}, got {levels}")
    tol = float(tol)
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")

    omega_minus = eigen_tridiagonal(pair.h_minus).lowest(levels).copy()
    omega_plus = eigen_tridiagonal(pair.h_plus).lowest(levels).copy()
    ground_residual = float(abs(omega_minus[0]))
    match_residuals = np.abs(omega_minus[1:] - omega_plus[: levels - 1])
    passed = bool(ground_residual <= tol and np.all(match_residuals <= tol))
    return IsospectralityReport(
        levels=levels,
        omega_minus=omega_minus,
        omega_plus=omega_plus,
        ground_residual=ground_residual,
        match_residuals=match_residuals,
        tol=tol,
        passed=passed,
    )
