"""Hamiltonians for the tip dipole, its image, and one photon mode.

The composite register is (tip, image, photon) with the tip most
significant: basis index ``(i_a * 2 + i_b) * (n_max + 1) + n`` for tip
level ``i_a``, image level ``i_b`` and photon number ``n``; level 0 is
the ground state. The free part is diagonal; the dipole-dipole coupling
flips both two-level systems at once and leaves the photon register
untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dipole import DielectricSample, ImageDipole, TipDipole, derive_image
from .tensor import OperatorMatrix

__all__ = [
    "ModelConfig",
    "HamiltonianPair",
    "basis_index",
    "coupling_constant",
    "build_h0",
    "build_delta_h",
    "build_hamiltonian_pair",
    "regime_warnings",
]

SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class ModelConfig:
    """Photon register size and coupling prefactor.

    ``photon_energy`` of ``None`` means resonant with the tip gap.
    ``kappa`` collects the product of transition moments, the vacuum
    permittivity, and the fixed tip-image geometry into one scalar with
    units eV nm^3.
    """

    n_max: int = 1
    photon_energy: float | None = None
    kappa: float = 0.05

    def __post_init__(self) -> None:
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError(f"n_max must be an integer >= 1, got {self.n_max!r}")
        object.__setattr__(self, "n_max", int(self.n_max))
        if self.photon_energy is not None and not self.photon_energy > 0:
            raise ValueError(
                f"photon_energy must be positive, got {self.photon_energy!r}"
            )
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa!r}")

    def resolved_photon_energy(self, tip: TipDipole) -> float:
        return tip.omega if self.photon_energy is None else self.photon_energy


@dataclass(frozen=True)
class HamiltonianPair:
    """Free Hamiltonian, coupling term, and the coupling strength."""

    h0: OperatorMatrix
    delta_h: OperatorMatrix
    g: float
    warnings: tuple[str, ...] = field(default=())


def basis_index(i_a: int, i_b: int, n: int, photon_levels: int) -> int:
    """Flat index of |tip level, image level, photon number>."""
    if i_a not in (0, 1) or i_b not in (0, 1):
        raise ValueError(f"dipole levels must be 0 or 1, got ({i_a}, {i_b})")
    if not 0 <= n < photon_levels:
        raise ValueError(f"photon number {n} outside 0..{photon_levels - 1}")
    return (i_a * 2 + i_b) * photon_levels + n


def coupling_constant(
    tip: TipDipole,
    sample: DielectricSample,
    cfg: ModelConfig,
) -> float:
    """Dipole-dipole coupling g = kappa * alpha / (2R)^3 in eV."""
    return cfg.kappa * sample.alpha / tip.separation**3


def _h0_energies(
    tip: TipDipole,
    image: ImageDipole,
    cfg: ModelConfig | None,
) -> np.ndarray:
    levels = 1 if cfg is None else cfg.n_max + 1
    e_photon = 0.0 if cfg is None else cfg.resolved_photon_energy(tip)
    out = np.empty(4 * levels, dtype=float)
    for i_a in (0, 1):
        for i_b in (0, 1):
            pair = (
                tip.ground_energy
                + i_a * tip.omega
                + image.energies[0]
                + i_b * image.omega_image
            )
            for n in range(levels):
                out[(i_a * 2 + i_b) * levels + n] = pair + n * e_photon
    return out


def build_h0(
    tip: TipDipole,
    image: ImageDipole,
    cfg: ModelConfig | None,
) -> OperatorMatrix:
    """Diagonal free Hamiltonian of the composite register.

    With ``cfg=None`` the photon register is omitted and the result acts
    on the dipole pair alone (dims ``(2, 2)``).
    """
    energies = _h0_energies(tip, image, cfg)
    dims = (2, 2) if cfg is None else (2, 2, cfg.n_max + 1)
    return OperatorMatrix(dims, np.diag(energies.astype(complex)))


def build_delta_h(g: float, cfg: ModelConfig | None = None) -> OperatorMatrix:
    """Dipole-dipole coupling term.

    The interaction is ``-g`` times the sum of the four products of
    raising/lowering operators on the two dipoles (both raised, both
    lowered, and the two exchange terms), tensored with the identity on
    the photon register. Its diagonal is zero and it conserves the
    parity of the total dipole excitation number.
    """
    flip = SIGMA_PLUS + SIGMA_MINUS
    pair = -g * (np.kron(flip, flip))
    if cfg is None:
        return OperatorMatrix((2, 2), pair)
    levels = cfg.n_max + 1
    return OperatorMatrix((2, 2, levels), np.kron(pair, np.eye(levels)))


def regime_warnings(
    tip: TipDipole,
    image: ImageDipole,
    cfg: ModelConfig | None,
    g: float,
) -> tuple[str, ...]:
    """Advisory check that g is small against the level spacing.

    Returns a warning when ``g`` exceeds a tenth of the smallest
    positive gap of the free spectrum; the build itself never fails on
    this.
    """
    energies = _h0_energies(tip, image, cfg)
    diffs = np.abs(energies[:, None] - energies[None, :])
    positive = diffs[diffs > 0]
    if positive.size == 0:
        if g > 0:
            return ("perturbative regime: free spectrum is fully degenerate",)
        return ()
    min_gap = float(positive.min())
    if g > 0.1 * min_gap:
        return (
            f"perturbative regime: g={g:.6g} eV exceeds 0.1 x smallest "
            f"positive level spacing {min_gap:.6g} eV",
        )
    return ()


def build_hamiltonian_pair(
    tip: TipDipole,
    sample: DielectricSample,
    cfg: ModelConfig,
) -> HamiltonianPair:
    """Derive the image dipole and assemble (H0, coupling) for it."""
    image = derive_image(tip, sample)
    g = coupling_constant(tip, sample, cfg)
    h0 = build_h0(tip, image, cfg)
    delta_h = build_delta_h(g, cfg)
    warns = regime_warnings(tip, image, cfg, g)
    return HamiltonianPair(h0=h0, delta_h=delta_h, g=g, warnings=warns)
