import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate as sp_integrate

from eikhelix.curves import (
    ArcLengthCurve,
    CurveSpec,
    GradientConvention,
    NullLiftCurve,
    ScalarFieldSpec,
    curve_point_data,
    eikonal_check,
    eval_curve,
    gradient,
    hessian,
    parallel_gradient_check,
    partials,
    reparameterize_arc_length,
    speed_character,
    speed_squared,
)
from eikhelix.errors import DomainError, MixedCausality, NullCurveError
from eikhelix.lorentz import CausalCharacter, minkowski_inner
from eikhelix.numerics import finite_diff_oracle

R2 = math.sqrt(2.0)


def spacelike_reference(a=1.0, b=1.0, domain=(-2.0, 2.0)):
    return CurveSpec.from_text("a*cosh(s/sqrt(a^2 + b^2))", "a*sinh(s/sqrt(a^2 + b^2))",
                               "b*s/sqrt(a^2 + b^2)", domain, 64, {"a": a, "b": b})


def null_reference():
    return CurveSpec.from_text("sinh(s)", "cosh(s)", "s", (-2.0, 2.0), 64)


def test_eval_curve_at_origin():
    pos, vel = eval_curve(spacelike_reference(), 0.0, 1)
    np.testing.assert_allclose(pos, [1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(vel, [0, 1 / R2, 1 / R2], atol=1e-15)


def test_eval_curve_rejects_outside_domain():
    with pytest.raises(DomainError):
        eval_curve(spacelike_reference(), 3.0, 1)


def test_curve_spec_validation():
    with pytest.raises(ValueError):
        CurveSpec.from_text("s", "0", "0", (1.0, 1.0))
    with pytest.raises(ValueError):
        CurveSpec.from_text("s", "0", "0", n_samples=4)


def test_speed_character():
    q, kind = speed_character(spacelike_reference(), 0.3)
    assert kind is CausalCharacter.SPACELIKE and q == pytest.approx(1.0, abs=1e-12)
    assert speed_character(null_reference(), 1.0)[1] is CausalCharacter.NULL
    c = CurveSpec.from_text("2*s", "sin(s)", "0")
    assert speed_character(c, 0.2)[1] is CausalCharacter.TIMELIKE


def test_arc_length_of_parabola_matches_quad():
    base = CurveSpec.from_text("0", "s^2", "1 + s", (1.0, 2.0), 32)
    c = ArcLengthCurve(base)
    want, _ = sp_integrate.quad(lambda t: math.sqrt(4 * t * t + 1), 1.0, 2.0, epsabs=1e-14)
    assert c.length == pytest.approx(want, abs=1e-12)
    q = speed_squared(c, c.grid())
    assert np.max(np.abs(q - 1.0)) < 1e-12


def test_arc_length_timelike_curve_has_unit_speed():
    c = reparameterize_arc_length(CurveSpec.from_text("2*s + s^3", "sin(s)", "0.3*s^2"))
    assert c.eps == -1
    assert np.max(np.abs(speed_squared(c, c.grid()) + 1.0)) < 1e-12
    # the reparameterized position traces the same points
    t = c.original_parameter(c.grid())
    np.testing.assert_allclose(c.jets(c.grid(), 0).value, c.base.jets(t, 0).value, atol=1e-12)


def test_arc_length_rejects_null_and_mixed():
    with pytest.raises(NullCurveError):
        ArcLengthCurve(null_reference())
    with pytest.raises(MixedCausality):
        ArcLengthCurve(CurveSpec.from_text("s^2", "s", "0", (-1.0, 1.0)))


def test_null_lift_is_null_and_integrates_speed():
    c = NullLiftCurve.from_text("s + 0.2*s^3", "0.5*s^2", (-1.0, 1.0))
    s = c.grid()
    assert np.max(np.abs(speed_squared(c, s))) < 1e-12
    x = c.jets(np.array([1.0]), 0).value[0, 0]
    want, _ = sp_integrate.quad(lambda t: math.hypot(1 + 0.6 * t * t, t), -1.0, 1.0, epsabs=1e-13)
    assert x == pytest.approx(want, abs=1e-10)


def test_reference_field_gradient_and_hessian():
    coord = ScalarFieldSpec.from_text("x^2 + y^2 + z")
    metric = coord.with_convention("metric")
    p = np.array([1.0, 2.0, 3.0])
    np.testing.assert_allclose(gradient(coord, p), [2, 4, 1])
    np.testing.assert_allclose(gradient(metric, p), [-2, 4, 1])
    np.testing.assert_allclose(hessian(metric, p), np.diag([2.0, 2.0, 0.0]), atol=1e-12)
    assert not parallel_gradient_check(metric, p)


def test_linear_field_has_parallel_gradient():
    f = ScalarFieldSpec.from_text("3*x - y + 2*z", "metric")
    pts = np.random.default_rng(0).normal(size=(10, 3))
    assert parallel_gradient_check(f, pts)
    with pytest.raises(ValueError):
        parallel_gradient_check(f, np.empty((0, 3)))


def test_field_rejects_foreign_variables():
    with pytest.raises(Exception):
        ScalarFieldSpec.from_text("s + x")


def test_eikonal_on_references():
    f = ScalarFieldSpec.from_text("x^2 + y^2 + z")
    r = eikonal_check(f, spacelike_reference())
    assert r.is_constant and r.center == pytest.approx(math.sqrt(3))
    assert eikonal_check(f, null_reference()).center == pytest.approx(math.sqrt(5))


def test_degenerate_parameter_gives_inadmissible_norm():
    c = spacelike_reference(a=0.5, b=1.0)
    r = eikonal_check(ScalarFieldSpec.from_text("x^2 + y^2 + z"), c)
    assert r.is_constant and not r.is_nonzero


def test_curve_point_data():
    d = curve_point_data(null_reference(), ScalarFieldSpec.from_text("x^2 + y^2 + z"), 0.0)
    np.testing.assert_allclose(d.position, [0, 1, 0])
    np.testing.assert_allclose(d.grad_f, [0, 2, 1])
    assert len(d.derivatives) == 2


coef = st.floats(-2, 2)


@given(st.tuples(coef, coef, coef, coef, coef, coef), st.tuples(coef, coef, coef),
       st.tuples(coef, coef, coef))
def test_metric_gradient_defining_identity(c, p, X):
    text = f"{c[0]!r}*x^2 + {c[1]!r}*x*y + {c[2]!r}*y*z + {c[3]!r}*sin(z) + {c[4]!r}*x + {c[5]!r}*exp(y/3)"
    f = ScalarFieldSpec.from_text(text, "metric")
    p, X = np.array(p), np.array(X)
    directional = finite_diff_oracle(lambda t: f(p + np.multiply.outer(t, X)), 0.0, 1)
    assert abs(minkowski_inner(gradient(f, p), X) - directional) < 1e-8 * max(1.0, abs(directional))


@given(st.tuples(coef, coef, coef))
def test_partials_of_quadratic(p):
    f = ScalarFieldSpec.from_text("x*y + z^2")
    np.testing.assert_allclose(partials(f, np.array(p)), [p[1], p[0], 2 * p[2]], atol=1e-12)


def test_convention_enum_values():
    assert GradientConvention("metric") is GradientConvention.METRIC
    with pytest.raises(ValueError):
        GradientConvention("euclid")
