import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eikhelix import classifiers as C
from eikhelix.curves import ScalarFieldSpec
from eikhelix.errors import PreconditionError
from eikhelix.frames import frame_trace

from test_curves import null_reference, spacelike_reference

REF_FIELD = ScalarFieldSpec.from_text("x^2 + y^2 + z")


@pytest.fixture(scope="module")
def spacelike():
    return C.along_curve(REF_FIELD, frame_trace(spacelike_reference()))


@pytest.fixture(scope="module")
def null_trace():
    return frame_trace(null_reference())


@pytest.fixture(scope="module")
def null(null_trace):
    return C.along_curve(REF_FIELD, null_trace)


@pytest.fixture(scope="module")
def null_height(null_trace):
    return C.along_curve(ScalarFieldSpec.from_text("z"), null_trace)


def test_spacelike_reference_definitions(spacelike):
    slant = C.slant_helix_check(spacelike)
    assert slant.holds and abs(slant.report.center) == pytest.approx(2.0)
    assert C.darboux_helix_check(spacelike).holds
    nn = C.non_normed_darboux_check(spacelike)
    assert nn.holds and nn.report.center == pytest.approx(-1 / math.sqrt(2))
    assert C.is_helix(spacelike)


def test_spacelike_reference_theorems_are_vacuous(spacelike):
    for name, fn in C.NONNULL_THEOREMS.items():
        report = fn(spacelike)
        gated = dict(report.hypotheses).get("Hessian of f vanishes")
        if gated is not None:
            assert report.vacuous, name
            assert gated is False


def test_darboux_normalization_on_reference(spacelike):
    report = C.darboux_normalization_check(spacelike)
    assert not report.vacuous and report.conclusions_hold


def test_metric_convention_breaks_slant_constancy():
    data = C.along_curve(REF_FIELD.with_convention("metric"), frame_trace(spacelike_reference()))
    assert not C.slant_helix_check(data).constant


def test_degenerate_norm_is_inadmissible():
    data = C.along_curve(REF_FIELD, frame_trace(spacelike_reference(a=0.5, b=1.0)))
    v = C.slant_helix_check(data)
    assert not v.admissible and not v.holds


def test_null_reference_definitions(null):
    assert C.null_helix_check(null).report.center == pytest.approx(1.0)
    assert C.null_slant_check(null, 2).report.center == pytest.approx(0.5)
    assert C.null_slant_check(null, 3).report.center == pytest.approx(2.0)
    assert C.null_darboux_check(null).report.center == pytest.approx(-1.0)
    assert all(fn(null).holds for fn in C.NULL_DEFINITIONS.values())
    assert all(fn(null).vacuous for fn in C.NULL_THEOREMS.values())


def test_null_slant_index(null):
    with pytest.raises(ValueError):
        C.null_slant_check(null, 1)


def test_height_function_is_a_positive_witness(null_height):
    report = C.null_helix_axis_check(null_height)
    assert not report.vacuous and report.conclusions_hold
    assert report.check("kappa/tau constant").value == pytest.approx(-2.0)
    assert report.check("axis residual").value < 1e-10
    r2 = C.null_v2_slant_implies_helix_check(null_height)
    assert not r2.vacuous and r2.conclusions_hold
    r3 = C.null_binormal_determinant_check(null_height)
    assert not r3.vacuous and r3.conclusions_hold
    r5 = C.null_darboux_normal_slant_check(null_height)
    assert not r5.vacuous and r5.conclusions_hold
    # V3 pairing is constant but zero
    assert not C.null_slant_check(null_height, 3).holds


def test_kind_mismatch(spacelike, null):
    with pytest.raises(PreconditionError):
        C.slant_helix_check(null)
    with pytest.raises(PreconditionError):
        C.null_helix_check(spacelike)


def test_axis_reconstruction_needs_slant_helix():
    data = C.along_curve(REF_FIELD.with_convention("metric"), frame_trace(spacelike_reference()))
    with pytest.raises(PreconditionError):
        C.axis_reconstruct_nonnull(data)


def test_report_serialization(null_height):
    d = C.null_helix_axis_check(null_height).to_dict()
    assert d["vacuous"] is False
    assert [c["name"] for c in d["checks"]] == ["kappa/tau constant", "axis residual"]
    v = C.null_helix_check(null_height).to_dict()
    assert v["holds"] and v["report"]["n_samples"] == 64


def _flip(data):
    frames = data.frames.copy()
    frames[:, 1:] *= -1
    # V1' = kappa V2 stays true only with kappa negated as well
    return dataclasses.replace(data, frames=frames, kappa=-data.kappa, dkappa=-data.dkappa)


def test_orientation_invariance(spacelike):
    flipped = _flip(spacelike)
    for fn in C.NONNULL_DEFINITIONS.values():
        a, b = fn(spacelike), fn(flipped)
        assert a.constant == b.constant
        assert abs(a.report.center) == pytest.approx(abs(b.report.center))
    for fn in C.NONNULL_THEOREMS.values():
        a, b = fn(spacelike), fn(flipped)
        assert a.vacuous == b.vacuous


coef = st.floats(-3, 3)


@given(st.tuples(coef, coef, coef, coef, coef))
def test_frame_dual_reconstruction(c):
    f = ScalarFieldSpec.from_text(f"{c[0]!r}*x + {c[1]!r}*y + {c[2]!r}*z + {c[3]!r}*x*z + {c[4]!r}*y^2")
    for tr in (frame_trace(spacelike_reference(), n_samples=16), frame_trace(null_reference(), n_samples=16)):
        assert C.along_curve(f, tr).reconstruction_residual() < 1e-8 * (1 + max(map(abs, c)) * 20)


def test_relative_sup_difference():
    assert C.relative_sup_difference([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert C.relative_sup_difference([0.0], [0.0]) == 0.0
    assert C.relative_sup_difference([1.0], [0.0]) == float("inf")
