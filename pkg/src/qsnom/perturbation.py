"""Second-order energy corrections and their exact cross-check.

The engine works in the eigenbasis of the free Hamiltonian, which must
therefore arrive diagonal. For a reference level ``n`` coupled by a
Hermitian perturbation ``V`` the second-order shift is the sum over
intermediate levels ``m`` of ``|<m|V|n>|^2 / (E_n - E_m)``, and the
first-order state mixes in each ``|m>`` with coefficient
``<m|V|n> / (E_n - E_m)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousMatchingError, DegenerateGapError, NotHermitianError
from .tensor import OperatorMatrix, eigh

__all__ = [
    "PerturbationResult",
    "ExactComparison",
    "rs_pt2",
    "validate_against_exact",
]


@dataclass(frozen=True)
class PerturbationResult:
    """Energy corrections for one reference level.

    ``corrected_coefficients`` is the first-order ket in the free
    eigenbasis, unnormalized, with coefficient 1 on the reference level.
    ``gap_report`` lists ``(m, E_n - E_m)`` for every coupled level.
    """

    state_index: int
    e0: float
    e1: float
    e2: float
    corrected_coefficients: np.ndarray
    gap_report: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        coeffs = np.array(self.corrected_coefficients, dtype=complex)
        coeffs.setflags(write=False)
        object.__setattr__(self, "corrected_coefficients", coeffs)

    @property
    def normalized_coefficients(self) -> np.ndarray:
        return self.corrected_coefficients / np.linalg.norm(
            self.corrected_coefficients
        )


@dataclass(frozen=True)
class ExactComparison:
    """Perturbative energy against the matching exact eigenvalue."""

    pt2_energy: float
    exact_energy: float
    residual: float
    overlap: float


def _check_inputs(h0: OperatorMatrix, v: OperatorMatrix, state_index: int) -> None:
    if h0.dims != v.dims:
        raise ValueError(f"dims mismatch: h0 {h0.dims} vs v {v.dims}")
    if not 0 <= state_index < h0.side:
        raise ValueError(
            f"state_index {state_index} outside 0..{h0.side - 1}"
        )
    off = h0.entries - np.diag(np.diag(h0.entries))
    if np.any(off != 0):
        raise ValueError("h0 must be diagonal (engine works in its eigenbasis)")
    if not h0.is_hermitian():
        raise NotHermitianError("h0 diagonal must be real")
    if not v.is_hermitian():
        raise NotHermitianError("perturbation v must be Hermitian")


def rs_pt2(
    h0: OperatorMatrix,
    v: OperatorMatrix,
    state_index: int,
    degeneracy_tol_scale: float = 1e-12,
) -> PerturbationResult:
    """Second-order correction of level ``state_index`` under ``v``.

    Raises
    ------
    DegenerateGapError
        If a coupled level sits within ``degeneracy_tol_scale * max|H0|``
        of the reference level.
    """
    _check_inputs(h0, v, state_index)
    energies = np.real(np.diag(h0.entries))
    n = state_index
    column = v.entries[:, n]
    coupled = [m for m in range(h0.side) if m != n and column[m] != 0]
    tol_deg = degeneracy_tol_scale * float(np.max(np.abs(h0.entries)))

    gaps: list[tuple[int, float]] = []
    for m in coupled:
        gap = float(energies[n] - energies[m])
        if abs(gap) <= tol_deg:
            raise DegenerateGapError(
                f"level {m} is degenerate with reference level {n}"
                f" (gap {gap:.3e} eV within tolerance {tol_deg:.3e} eV)"
                f" while coupled by v"
            )
        gaps.append((m, gap))

    coeffs = np.zeros(h0.side, dtype=complex)
    coeffs[n] = 1.0
    e2 = 0.0
    for m, gap in gaps:
        coeffs[m] = column[m] / gap
        e2 += float(abs(column[m]) ** 2 / gap)

    return PerturbationResult(
        state_index=n,
        e0=float(energies[n]),
        e1=float(np.real(v.entries[n, n])),
        e2=e2,
        corrected_coefficients=coeffs,
        gap_report=tuple(gaps),
    )


def validate_against_exact(
    h0: OperatorMatrix,
    v: OperatorMatrix,
    state_index: int,
    overlap_threshold: float = 0.5,
) -> ExactComparison:
    """Compare the second-order energy against exact diagonalization.

    The exact level is the eigenvector of ``H0 + V`` with the largest
    squared overlap against the reference basis state; the match must
    exceed ``overlap_threshold`` or the pairing is ambiguous. The
    residual is ``|exact - (e0 + e1 + e2)|``; it shrinks like the fourth
    power of the coupling in the perturbative regime.
    """
    result = rs_pt2(h0, v, state_index)
    total = OperatorMatrix(h0.dims, h0.entries + v.entries)
    decomposition = eigh(total)
    weights = np.abs(decomposition.eigenvectors[state_index, :]) ** 2
    best = int(np.argmax(weights))
    if weights[best] < overlap_threshold:
        raise AmbiguousMatchingError(
            f"largest overlap {weights[best]:.3f} with basis state"
            f" {state_index} is below threshold {overlap_threshold}"
        )
    exact = float(decomposition.eigenvalues[best])
    pt2 = result.e0 + result.e1 + result.e2
    return ExactComparison(
        pt2_energy=pt2,
        exact_energy=exact,
        residual=abs(exact - pt2),
        overlap=float(weights[best]),
    )
