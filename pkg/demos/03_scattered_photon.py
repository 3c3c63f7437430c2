"""State of the scattered photon after interacting with the coupled system.

A single photon resonant with the bare tip comes back red-shifted: the
image interaction lowers the dressed gap. The dipole pair ends in a
slightly contracted copy of its initial state, and tracing it out
leaves the photon in a pure one-photon projector at the shifted
frequency.
"""

from __future__ import annotations

import numpy as np

from qsnom.closedform import (
    InitialCoefficients,
    beta_coefficients,
    density_matrix,
    photon_report,
)
from qsnom.tensor import StateVector, outer, partial_trace

HEIGHT_NM = 0.5
ALPHA = 0.5
OMEGA = 1.0
KAPPA = 1.0

print("= ground-state preparation, strong coupling for visibility =")
report = photon_report(InitialCoefficients.ground_state(), HEIGHT_NM, ALPHA, OMEGA, KAPPA)
print(f"  dressed-gap shift    {report.delta_e:+.6f} eV")
print(f"  incoming frequency   {OMEGA:.6f} eV")
print(f"  scattered frequency  {report.omega_s:.6f} eV")
print(f"  scattering amplitude {report.amplitude:.6f}")
print(f"  probability weight   {report.probability_weight:.6f}")

print()
print("= perturbed dipole-pair coefficients from a mixed start =")
start = InitialCoefficients(0.5, 0.5, 0.5, 0.5)
beta = beta_coefficients(start, HEIGHT_NM, ALPHA, OMEGA, KAPPA)
for name, before, after in zip(
    ("gg", "ge", "eg", "ee"), start.as_array(), beta.as_array()
):
    print(f"  |{name}>  {before:.4f} -> {after:.6f}")

rho_pair = density_matrix(beta)
print()
print("= dipole-pair density matrix (pure, renormalized) =")
print(np.array_str(rho_pair.entries.real, precision=4, suppress_small=True))
print(f"  trace  {rho_pair.trace.real:.6f}")

pair_state = beta.normalized()
full = StateVector((2, 2, 2), np.kron(pair_state, [0.0, 1.0]))
photon = partial_trace(outer(full), keep=(2,))
print()
print("= reduced photon state after tracing out both dipoles =")
print(np.array_str(photon.entries.real, precision=6, suppress_small=True))
