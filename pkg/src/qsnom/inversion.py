"""Forward map and permittivity recovery from the emitted frequency.

The forward map takes a permittivity to the emitted frequency of the
scattered photon; it is strictly decreasing in the permittivity, so a
measured frequency inside the attainable band pins the permittivity
down uniquely. Recovery uses a bracketed derivative-free root search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import brentq

from . import closedform
from .dipole import DielectricSample, TipDipole, derive_image, near_field_check
from .errors import NoConvergenceError, OutOfBracketError
from .hamiltonian import ModelConfig, basis_index, build_hamiltonian_pair
from .perturbation import rs_pt2

__all__ = [
    "ForwardResult",
    "InversionProblem",
    "InversionResult",
    "SweepSpec",
    "SWEEP_AXES",
    "SWEEP_OUTPUTS",
    "forward",
    "invert_permittivity",
    "run_sweep",
]

SWEEP_AXES = ("epsilon_d", "R", "omega", "kappa")
SWEEP_OUTPUTS = (
    "alpha",
    "g_eV",
    "delta_e_closed_eV",
    "delta_e_oracle_eV",
    "omega_s",
    "amplitude",
    "near_field_ratio",
)


@dataclass(frozen=True)
class ForwardResult:
    """Scattered-photon observables at one parameter point."""

    epsilon_d: float
    alpha: float
    g: float
    delta_e: float
    omega_s: float
    amplitude: float
    near_field_ratio: float
    near_field_passed: bool
    warnings: tuple[str, ...]


@dataclass(frozen=True)
class InversionProblem:
    """Measured frequency plus the fixed geometry to invert under."""

    observed_omega_s: float
    height_nm: float
    omega: float
    kappa: float
    bracket: tuple[float, float] = (1.0 + 1e-9, 1e6)
    tol_rel: float = 1e-10
    max_iter: int = 200
    method: str = "closed"

    def __post_init__(self) -> None:
        lo, hi = self.bracket
        if not (lo > 1.0 and hi > lo):
            raise ValueError(
                f"bracket must satisfy 1 < lo < hi, got ({lo!r}, {hi!r})"
            )
        if not self.tol_rel > 0:
            raise ValueError(f"tol_rel must be positive, got {self.tol_rel!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(
                f"max_iter must be an integer >= 1, got {self.max_iter!r}"
            )
        object.__setattr__(self, "max_iter", int(self.max_iter))
        if self.method not in ("closed", "oracle"):
            raise ValueError(f"method must be 'closed' or 'oracle', got {self.method!r}")
        if not self.observed_omega_s > 0:
            raise ValueError(
                f"observed_omega_s must be positive, got {self.observed_omega_s!r}"
            )


@dataclass(frozen=True)
class InversionResult:
    """Recovered permittivity with the search diagnostics."""

    epsilon_d: float
    iterations: int
    residual: float


def forward(
    epsilon_d: float,
    height_nm: float,
    omega: float,
    kappa: float,
    near_field_factor: float = 0.1,
    n_max: int = 1,
    photon_energy: float | None = None,
    method: str = "closed",
) -> ForwardResult:
    """Map a permittivity to the scattered-photon observables.

    ``method`` selects the closed-form route (default) or the numeric
    second-order route for comparison studies. Regime and near-field
    violations are returned as warnings, never raised.
    """
    if method not in ("closed", "oracle"):
        raise ValueError(f"method must be 'closed' or 'oracle', got {method!r}")
    sample = DielectricSample(epsilon_d)
    tip = TipDipole(omega=omega, height_nm=height_nm)
    image = derive_image(tip, sample)
    cfg = ModelConfig(n_max=n_max, photon_energy=photon_energy, kappa=kappa)
    pair = build_hamiltonian_pair(tip, sample, cfg)

    warnings = list(pair.warnings)
    field_report = near_field_check(tip, image, near_field_factor)
    if not field_report.passed:
        warnings.append(
            f"near-field check failed: separation/wavelength ratio "
            f"{field_report.ratio:.6g} is not below factor {field_report.factor:g}"
        )

    if method == "closed":
        report = closedform.photon_report(
            closedform.InitialCoefficients.ground_state(),
            height_nm,
            sample.alpha,
            omega,
            kappa,
        )
        delta_e = report.delta_e
        omega_s = report.omega_s
        amplitude = report.amplitude
    else:
        index = basis_index(0, 0, 1, cfg.n_max + 1)
        result = rs_pt2(pair.h0, pair.delta_h, index)
        delta_e = result.e2
        omega_s = closedform.scattered_frequency(omega, delta_e)
        amplitude = float(np.real(result.normalized_coefficients[index]))

    return ForwardResult(
        epsilon_d=sample.epsilon_d,
        alpha=sample.alpha,
        g=pair.g,
        delta_e=delta_e,
        omega_s=omega_s,
        amplitude=amplitude,
        near_field_ratio=field_report.ratio,
        near_field_passed=field_report.passed,
        warnings=tuple(warnings),
    )


def invert_permittivity(problem: InversionProblem) -> InversionResult:
    """Recover the permittivity whose emitted frequency matches.

    The attainable frequency band on the bracket is checked first; a
    measurement within tolerance of a band edge returns that edge, one
    outside raises :class:`OutOfBracketError` with the band in the
    message. Inside the band a bracketed root search runs with a hard
    iteration budget.
    """
    lo, hi = problem.bracket

    def emitted(eps: float) -> float:
        return forward(
            eps,
            problem.height_nm,
            problem.omega,
            problem.kappa,
            method=problem.method,
        ).omega_s

    top = emitted(lo)
    bottom = emitted(hi)
    observed = problem.observed_omega_s
    tol_abs = problem.tol_rel * problem.omega

    if observed > top:
        if observed - top < tol_abs:
            return InversionResult(epsilon_d=lo, iterations=0, residual=observed - top)
        raise OutOfBracketError(
            f"observed omega_s {observed!r} above attainable band"
            f" [{bottom!r}, {top!r}] on bracket ({lo:g}, {hi:g})"
        )
    if observed < bottom:
        if bottom - observed < tol_abs:
            return InversionResult(
                epsilon_d=hi, iterations=0, residual=bottom - observed
            )
        raise OutOfBracketError(
            f"observed omega_s {observed!r} below attainable band"
            f" [{bottom!r}, {top!r}] on bracket ({lo:g}, {hi:g})"
        )
    # an exact band-edge hit would short-circuit brentq and leave its
    # iteration counter unset
    if observed == top:
        return InversionResult(epsilon_d=lo, iterations=0, residual=0.0)
    if observed == bottom:
        return InversionResult(epsilon_d=hi, iterations=0, residual=0.0)

    root, info = brentq(
        lambda eps: emitted(eps) - observed,
        lo,
        hi,
        xtol=1e-12,
        rtol=1e-15,
        maxiter=problem.max_iter,
        full_output=True,
        disp=False,
    )
    residual = abs(emitted(float(root)) - observed)
    if not info.converged or residual >= tol_abs:
        raise NoConvergenceError(
            f"root search used {info.iterations} iterations (budget"
            f" {problem.max_iter}) and left residual {residual:.3e} eV"
            f" against tolerance {tol_abs:.3e} eV"
        )
    return InversionResult(
        epsilon_d=float(root),
        iterations=int(info.iterations),
        residual=float(residual),
    )


@dataclass(frozen=True)
class SweepSpec:
    """One-axis parameter sweep with fixed remaining parameters.

    ``fixed`` must supply exactly the other members of
    {epsilon_d, R, omega, kappa} (R in nm). ``outputs`` selects row
    columns from :data:`SWEEP_OUTPUTS`; the axis value, warnings, and
    error columns are always present.
    """

    axis: str
    values: tuple[float, ...]
    fixed: Mapping[str, float]
    outputs: tuple[str, ...] = SWEEP_OUTPUTS
    near_field_factor: float = 0.1

    def __post_init__(self) -> None:
        if self.axis not in SWEEP_AXES:
            raise ValueError(f"axis must be one of {SWEEP_AXES}, got {self.axis!r}")
        values = tuple(float(v) for v in self.values)
        if len(values) < 2:
            raise ValueError(f"sweep needs at least 2 values, got {len(values)}")
        steps = np.diff(values)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError("sweep values must be strictly monotone")
        object.__setattr__(self, "values", values)
        expected = set(SWEEP_AXES) - {self.axis}
        got = set(self.fixed)
        if got != expected:
            raise ValueError(
                f"fixed parameters must be exactly {sorted(expected)},"
                f" got {sorted(got)}"
            )
        outputs = tuple(self.outputs)
        if not outputs:
            raise ValueError("outputs selection must not be empty")
        unknown = [c for c in outputs if c not in SWEEP_OUTPUTS]
        if unknown:
            raise ValueError(
                f"unknown output column {unknown[0]!r};"
                f" valid columns: {SWEEP_OUTPUTS}"
            )
        object.__setattr__(self, "outputs", outputs)

    @classmethod
    def from_range(
        cls,
        axis: str,
        start: float,
        stop: float,
        count: int,
        spacing: str = "linear",
        fixed: Mapping[str, float] | None = None,
        outputs: Sequence[str] | None = None,
        near_field_factor: float = 0.1,
    ) -> SweepSpec:
        if spacing not in ("linear", "log"):
            raise ValueError(f"spacing must be 'linear' or 'log', got {spacing!r}")
        if count < 2:
            raise ValueError(f"count must be >= 2, got {count}")
        if spacing == "log":
            if start <= 0 or stop <= 0:
                raise ValueError("log spacing needs positive endpoints")
            values = np.geomspace(start, stop, count)
        else:
            values = np.linspace(start, stop, count)
        return cls(
            axis=axis,
            values=tuple(float(v) for v in values),
            fixed=dict(fixed or {}),
            outputs=tuple(outputs) if outputs is not None else SWEEP_OUTPUTS,
            near_field_factor=near_field_factor,
        )


def _sweep_point(spec: SweepSpec, value: float) -> dict[str, object]:
    params = dict(spec.fixed)
    params[spec.axis] = value
    row: dict[str, object] = {"axis_value": value, "warnings": "", "error": ""}
    for name in spec.outputs:
        row[name] = None
    try:
        fr = forward(
            params["epsilon_d"],
            params["R"],
            params["omega"],
            params["kappa"],
            near_field_factor=spec.near_field_factor,
        )
        oracle = forward(
            params["epsilon_d"],
            params["R"],
            params["omega"],
            params["kappa"],
            near_field_factor=spec.near_field_factor,
            method="oracle",
        )
        available: dict[str, object] = {
            "alpha": fr.alpha,
            "g_eV": fr.g,
            "delta_e_closed_eV": fr.delta_e,
            "delta_e_oracle_eV": oracle.delta_e,
            "omega_s": fr.omega_s,
            "amplitude": fr.amplitude,
            "near_field_ratio": fr.near_field_ratio,
        }
        for name in spec.outputs:
            row[name] = available[name]
        row["warnings"] = "; ".join(fr.warnings)
    except Exception as exc:  # per-point capture keeps the sweep going
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(spec: SweepSpec) -> list[dict[str, object]]:
    """Evaluate the forward map on every axis value.

    Each row carries the axis value, the selected outputs, a joined
    warnings string, and an error column; a failing point fills the
    error column and leaves its outputs empty instead of aborting the
    sweep.
    """
    return [_sweep_point(spec, v) for v in spec.values]
