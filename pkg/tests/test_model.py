"""Parameter and family validation."""

import numpy as np
import pytest

from nssol import (
    DomainError,
    ModelParams,
    PressurelessTheta1,
    PressurelessThetaNot1,
    WithPressureIsothermal,
    WithPressurePolytropic,
    WithPressurePowerLaw,
    derived_s,
    theta_required,
    validate,
)


def test_powerlaw_ok_with_derived_constants():
    params = ModelParams(N=3, gamma=5.0 / 3.0, theta=1.0, K=1.0, kappa=1.0,
                         delta=1)
    family = WithPressurePowerLaw(m=1.0, n=1.0, sigma=1.0, alpha=1.0)
    out = validate(params, family)
    assert out.ok
    assert out.derived is not None
    assert out.derived.s == pytest.approx(0.5, abs=1e-15)
    # gamma/2 + 1/2 - 1/N = 5/6 + 1/2 - 1/3 = 1
    assert out.derived.theta_required == pytest.approx(1.0, abs=1e-15)


def test_powerlaw_gamma1_gives_s_equal_one():
    params = ModelParams(N=2, gamma=1.0, theta=0.5, delta=1)
    family = WithPressurePowerLaw(m=1.0, n=1.0, sigma=1.0, alpha=1.0)
    out = validate(params, family)
    assert out.ok
    assert out.derived.s == 1.0  # 2/(2 - 2 + 2)


def test_isothermal_requires_theta_gamma_one():
    params = ModelParams(N=3, gamma=2.0, theta=1.0, delta=1)
    family = WithPressureIsothermal(A=1.0, B=1.0, C=0.0, a0=1.0, a1=0.0)
    out = validate(params, family)
    assert not out.ok
    assert any("theta=gamma=1" in v for v in out.violations)


def test_derived_s_values():
    assert derived_s(ModelParams(N=3, gamma=5.0 / 3.0, theta=1.0)) == pytest.approx(0.5)
    assert derived_s(ModelParams(N=1, gamma=1.0, theta=1.0)) == 1.0
    # N=3, gamma=3: s = 2/(9-3+2) = 0.25, and the second closed form with
    # theta = 2 - 1/3 gives 1/((3 - 5/3)*3) = 0.25 as well
    s = derived_s(ModelParams(N=3, gamma=3.0, theta=2.0 - 1.0 / 3.0))
    assert s == pytest.approx(0.25, rel=1e-14)
    assert 1.0 / ((3.0 - (2.0 - 1.0 / 3.0)) * 3) == pytest.approx(s, rel=1e-14)


def test_derived_s_domain_guard():
    bad = ModelParams(N=3, gamma=-2.0, theta=1.0)  # gamma*N - N + 2 = -7
    with pytest.raises(DomainError):
        derived_s(bad)


def test_s_identity_sweep():
    # both closed forms of s agree to 1e-12 relative once theta sits at
    # its required value
    for N in range(1, 7):
        for gamma in np.linspace(1.0, 3.0, 41):
            theta = gamma / 2.0 + 0.5 - 1.0 / N
            s = 2.0 / (gamma * N - N + 2.0)
            s_alt = 1.0 / ((gamma - theta) * N)
            assert abs(s - s_alt) < 1e-12 * s


def test_validate_is_pure_and_idempotent():
    params = ModelParams(N=3, gamma=2.0, theta=1.0, delta=1)
    family = WithPressureIsothermal(A=1.0, B=1.0, C=0.0, a0=1.0, a1=0.0)
    first = validate(params, family)
    second = validate(params, family)
    assert first == second


def test_bad_params_all_reported():
    params = ModelParams(N=0, gamma=0.5, theta=-1.0, K=-1.0, kappa=0.0, delta=2)
    family = PressurelessTheta1(lam=1.0, alpha=0.0, a0=1.0, a1=0.0)
    out = validate(params, family)
    assert not out.ok
    joined = "\n".join(out.violations)
    for needle in ("N must be", "gamma must be", "theta must be",
                   "K must be", "kappa must be", "delta must be"):
        assert needle in joined


def test_delta_mismatch_reported():
    params = ModelParams(N=3, gamma=1.0, theta=1.0, delta=1)
    family = PressurelessTheta1(lam=1.0, alpha=0.0, a0=1.0, a1=0.0)
    out = validate(params, family)
    assert not out.ok
    assert any("delta" in v for v in out.violations)


def test_powerlaw_constraint_bounds():
    params = ModelParams(N=3, gamma=5.0 / 3.0, theta=1.0, delta=1)
    ok = validate(params, WithPressurePowerLaw(m=-2.0, n=1.0, sigma=1.0, alpha=1.0))
    assert ok.ok  # m < 0 is legitimate (collapsing scaling)
    assert 0.0 < ok.derived.s <= 1.0
    assert params.theta >= 1.0 - 1.0 / params.N

    for bad_family in (
            WithPressurePowerLaw(m=1.0, n=-1.0, sigma=1.0, alpha=1.0),
            WithPressurePowerLaw(m=1.0, n=1.0, sigma=0.0, alpha=1.0),
            WithPressurePowerLaw(m=1.0, n=1.0, sigma=1.0, alpha=0.0)):
        out = validate(params, bad_family)
        assert not out.ok
        assert out.derived is None


def test_powerlaw_wrong_theta_reported():
    params = ModelParams(N=3, gamma=5.0 / 3.0, theta=1.2, delta=1)
    out = validate(params, WithPressurePowerLaw(m=1.0, n=1.0, sigma=1.0, alpha=1.0))
    assert not out.ok
    assert any("gamma/2 + 1/2 - 1/N" in v for v in out.violations)


def test_polytropic_requires_gamma_above_one():
    params = ModelParams(N=2, gamma=1.0, theta=1.0, delta=1)
    out = validate(params, WithPressurePolytropic(alpha=1.0, a0=1.0, a1=0.0))
    assert not out.ok


def test_pressureless_theta_split():
    p1 = ModelParams(N=3, gamma=1.0, theta=2.0, delta=0)
    out = validate(p1, PressurelessTheta1(lam=1.0, alpha=0.0, a0=1.0, a1=0.0))
    assert not out.ok  # needs theta = 1

    p2 = ModelParams(N=3, gamma=1.0, theta=1.0, delta=0)
    out = validate(p2, PressurelessThetaNot1(lam=1.0, alpha=1.0, a0=1.0, a1=0.0))
    assert not out.ok  # needs theta != 1


def test_theta_required_helper():
    assert theta_required(ModelParams(N=3, gamma=5.0 / 3.0, theta=1.0)) == pytest.approx(1.0)
    assert theta_required(ModelParams(N=2, gamma=1.0, theta=0.5)) == pytest.approx(0.5)
