"""Model parameters, solution families, and parameter validation.

The fluid model is the radially symmetric compressible Navier-Stokes
system with gamma-law pressure P = K*rho**gamma (switchable via delta)
and density-dependent viscosity mu(rho) = kappa*rho**theta.  Each
solution family couples a density shape y(z), z = r/a(t), to a scaling
function a(t); the admissible (gamma, theta) combinations are family
specific and enforced by :func:`validate`.
"""

from dataclasses import dataclass
from typing import Union

from .errors import DomainError

#: relative tolerance for the two closed forms of the similarity exponent
S_IDENTITY_RTOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Physical and dimensional constants of the fluid model.

    Attributes
    ----------
    N : int
        Spatial dimension, integer >= 1.
    gamma : float
        Adiabatic exponent, >= 1.
    theta : float
        Viscosity exponent, > 0.
    K : float
        Pressure constant, > 0.
    kappa : float
        Viscosity constant, > 0.
    delta : int
        Pressure switch: 1 with pressure, 0 pressureless.
    """

    N: int
    gamma: float
    theta: float
    K: float = 1.0
    kappa: float = 1.0
    delta: int = 1


@dataclass(frozen=True)
class WithPressureIsothermal:
    """Exponential-quadratic density family, requires theta = gamma = 1.

    Density shape A*exp(B*z**2 + C); a(t) solves a second-order ODE from
    the initial data (a0, a1).  A >= 0; B and C are free reals (B < 0
    gives a Gaussian-decaying density).
    """

    A: float
    B: float
    C: float
    a0: float
    a1: float

    tag = "with_pressure_isothermal"
    delta = 1


@dataclass(frozen=True)
class WithPressurePolytropic:
    """Power-root density family, requires theta = gamma > 1."""

    alpha: float
    a0: float
    a1: float

    tag = "with_pressure_polytropic"
    delta = 1


@dataclass(frozen=True)
class WithPressurePowerLaw:
    """Power-law scaling family, requires theta = gamma/2 + 1/2 - 1/N.

    a(t) = sigma*(m*t + n)**s with the similarity exponent s derived
    from (N, gamma); the density shape solves an implicit ODE with
    y(0) = alpha.  m may be negative (collapsing scaling, finite-time
    blowup at t* = -n/m); n > 0, sigma > 0, alpha > 0.
    """

    m: float
    n: float
    sigma: float
    alpha: float

    tag = "with_pressure_power_law"
    delta = 1


@dataclass(frozen=True)
class PressurelessTheta1:
    """Pressureless family for theta = 1.

    Density shape exp(lam/(2*N*kappa)*z**2 + alpha); lam and alpha are
    free reals.
    """

    lam: float
    alpha: float
    a0: float
    a1: float

    tag = "pressureless_theta1"
    delta = 0


@dataclass(frozen=True)
class PressurelessThetaNot1:
    """Pressureless family for theta != 1, power-root density shape."""

    lam: float
    alpha: float
    a0: float
    a1: float

    tag = "pressureless_theta_not1"
    delta = 0


Family = Union[
    WithPressureIsothermal,
    WithPressurePolytropic,
    WithPressurePowerLaw,
    PressurelessTheta1,
    PressurelessThetaNot1,
]

FAMILY_TAGS = {
    cls.tag: cls
    for cls in (
        WithPressureIsothermal,
        WithPressurePolytropic,
        WithPressurePowerLaw,
        PressurelessTheta1,
        PressurelessThetaNot1,
    )
}


@dataclass(frozen=True)
class DerivedConstants:
    """Quantities derived from (N, gamma) for the power-law family.

    s is the similarity exponent 2/(gamma*N - N + 2), which must equal
    1/((gamma - theta)*N) when theta sits at its required value
    gamma/2 + 1/2 - 1/N.
    """

    s: float
    theta_required: float


@dataclass(frozen=True)
class ValidationOutcome:
    """Result of :func:`validate`: ok flag plus the full violation list."""

    ok: bool
    violations: tuple
    derived: DerivedConstants | None = None


def derived_s(params: ModelParams) -> float:
    """Similarity exponent s = 2/(gamma*N - N + 2).

    When theta equals gamma/2 + 1/2 - 1/N this coincides with the
    second closed form 1/((gamma - theta)*N); the agreement is asserted
    to 1e-12 relative.  Raises DomainError if gamma*N - N + 2 <= 0
    (cannot happen for gamma >= 1, N >= 1, guarded anyway).
    """
    denom = params.gamma * params.N - params.N + 2.0
    if denom <= 0.0:
        raise DomainError(
            f"gamma*N - N + 2 = {denom} must be positive (N={params.N}, "
            f"gamma={params.gamma})"
        )
    s = 2.0 / denom
    theta_req = params.gamma / 2.0 + 0.5 - 1.0 / params.N
    if abs(params.theta - theta_req) <= 1e-12 * max(1.0, abs(theta_req)):
        if params.gamma > params.theta:
            s_alt = 1.0 / ((params.gamma - params.theta) * params.N)
            assert abs(s - s_alt) <= S_IDENTITY_RTOL * abs(s), (
                f"similarity exponent closed forms disagree: {s} vs {s_alt}"
            )
    return s


def theta_required(params: ModelParams) -> float:
    """The viscosity exponent forced by the power-law family."""
    return params.gamma / 2.0 + 0.5 - 1.0 / params.N


def _check_params(params: ModelParams, bad: list):
    if not isinstance(params.N, int) or params.N < 1:
        bad.append(f"N must be an integer >= 1, got {params.N!r}")
    if params.gamma < 1.0:
        bad.append(f"gamma must be >= 1, got {params.gamma}")
    if params.theta <= 0.0:
        bad.append(f"theta must be > 0, got {params.theta}")
    if params.K <= 0.0:
        bad.append(f"K must be > 0, got {params.K}")
    if params.kappa <= 0.0:
        bad.append(f"kappa must be > 0, got {params.kappa}")
    if params.delta not in (0, 1):
        bad.append(f"delta must be 0 or 1, got {params.delta!r}")


def validate(params: ModelParams, family: Family) -> ValidationOutcome:
    """Check all model invariants and family-selection constraints.

    Total: never raises on bad input, and never stops at the first
    failure; every violated constraint is reported with the offending
    values.  For the power-law family a successful outcome carries the
    derived constants (s, theta_required).
    """
    bad = []
    _check_params(params, bad)

    if family.delta != params.delta:
        bad.append(
            f"family {family.tag!r} requires delta={family.delta}, "
            f"params have delta={params.delta}"
        )

    derived_pair = None
    if isinstance(family, WithPressureIsothermal):
        if not (params.theta == 1.0 and params.gamma == 1.0):
            bad.append(
                "theta=gamma=1 required for the isothermal family, got "
                f"gamma={params.gamma}, theta={params.theta}"
            )
        if family.A < 0.0:
            bad.append(f"A must be >= 0, got {family.A}")
        if family.a0 <= 0.0:
            bad.append(f"a0 must be > 0, got {family.a0}")
    elif isinstance(family, WithPressurePolytropic):
        if not (params.theta == params.gamma and params.gamma > 1.0):
            bad.append(
                "theta=gamma>1 required for the polytropic family, got "
                f"gamma={params.gamma}, theta={params.theta}"
            )
        if family.alpha <= 0.0:
            bad.append(f"alpha must be > 0, got {family.alpha}")
        if family.a0 <= 0.0:
            bad.append(f"a0 must be > 0, got {family.a0}")
    elif isinstance(family, WithPressurePowerLaw):
        if isinstance(params.N, int) and params.N >= 1 and params.gamma >= 1.0:
            theta_req = theta_required(params)
            if abs(params.theta - theta_req) > 1e-12 * max(1.0, abs(theta_req)):
                bad.append(
                    f"theta must equal gamma/2 + 1/2 - 1/N = {theta_req} for "
                    f"the power-law family, got theta={params.theta}"
                )
            floor = 1.0 - 1.0 / params.N
            if params.theta < floor - 1e-12:
                bad.append(
                    f"theta must be >= 1 - 1/N = {floor}, got {params.theta}"
                )
            s = derived_s(params)
            if not (0.0 < s <= 1.0):
                bad.append(f"similarity exponent s={s} outside (0, 1]")
            derived_pair = (s, theta_req)
        if family.n <= 0.0:
            bad.append(f"n must be > 0, got {family.n}")
        if family.sigma <= 0.0:
            bad.append(f"sigma must be > 0, got {family.sigma}")
        if family.alpha <= 0.0:
            bad.append(f"alpha must be > 0, got {family.alpha}")
    elif isinstance(family, PressurelessTheta1):
        if params.theta != 1.0:
            bad.append(
                f"theta=1 required for this pressureless family, got "
                f"theta={params.theta}"
            )
        if family.a0 <= 0.0:
            bad.append(f"a0 must be > 0, got {family.a0}")
    elif isinstance(family, PressurelessThetaNot1):
        if params.theta == 1.0:
            bad.append("theta != 1 required for this pressureless family")
        if family.alpha <= 0.0:
            bad.append(f"alpha must be > 0, got {family.alpha}")
        if family.a0 <= 0.0:
            bad.append(f"a0 must be > 0, got {family.a0}")
    else:
        bad.append(f"unknown family type {type(family).__name__}")

    derived = None
    if not bad and derived_pair is not None:
        derived = DerivedConstants(s=derived_pair[0], theta_required=derived_pair[1])
    return ValidationOutcome(ok=not bad, violations=tuple(bad), derived=derived)
