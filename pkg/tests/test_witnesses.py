import numpy as np
import pytest

from eikhelix import classifiers as C
from eikhelix import witnesses as W


def test_rk4_exponential():
    s, y = W.rk4(lambda s, y: y, np.array([1.0]), 0.0, 1.0, n_samples=11)
    np.testing.assert_allclose(y[:, 0], np.exp(s), rtol=1e-12)


@pytest.fixture(scope="module", params=sorted(W.ALL_WITNESSES))
def witness(request):
    return W.ALL_WITNESSES[request.param]()


def test_witness_gradient_is_parallel(witness):
    assert witness.residual < 1e-10
    assert witness.data.hessian_max == 0.0
    assert C.eikonal_report(witness.data).is_constant


def test_witness_expected_definitions(witness):
    data = witness.data
    table = C.NONNULL_DEFINITIONS if data.kind == "nonnull" else C.NULL_DEFINITIONS
    for name, want in witness.expected.items():
        if name in table:
            assert table[name](data).constant == want, name


def test_every_non_vacuous_report_holds(witness):
    table = C.NONNULL_THEOREMS if witness.data.kind == "nonnull" else C.NULL_THEOREMS
    for name, fn in table.items():
        report = fn(witness.data)
        if not report.vacuous:
            assert report.conclusions_hold, (name, report.to_dict())


def test_slant_invariant_value():
    w = W.slant_invariant_witness(sigma=0.3)
    values, report = C.slant_invariant(w.data)
    assert report.is_constant and report.center == pytest.approx(0.3, abs=1e-9)
    assert not C.slant_helix_axis_check(w.data).vacuous
    assert not C.slant_curvature_system_check(w.data).vacuous


def test_darboux_length_biconditional_both_directions():
    good = C.darboux_slant_norm_check(W.darboux_norm_constant_witness().data)
    bad_w = W.darboux_norm_varying_witness()
    bad = C.darboux_slant_norm_check(bad_w.data)
    assert not good.vacuous and good.conclusions_hold
    assert not bad.vacuous and bad.conclusions_hold
    assert not C.darboux_norm_report(bad_w.data).is_constant
    assert not C.slant_helix_check(bad_w.data).constant


def test_normal_slant_witness():
    w = W.null_normal_slant_witness()
    axis = C.null_normal_slant_axis_check(w.data)
    excl = C.null_normal_slant_exclusion_check(w.data)
    assert not axis.vacuous and axis.conclusions_hold
    assert not excl.vacuous and excl.conclusions_hold
    assert not C.null_helix_check(w.data).constant


def test_product_biconditional_both_directions():
    good = C.null_darboux_normal_slant_check(W.null_darboux_product_constant_witness().data)
    bad_w = W.null_darboux_product_varying_witness()
    bad = C.null_darboux_normal_slant_check(bad_w.data)
    assert not good.vacuous and good.conclusions_hold
    assert not bad.vacuous and bad.conclusions_hold
    assert not C.null_slant_check(bad_w.data, 3).constant


def test_witness_to_dict():
    d = W.null_normal_slant_witness().to_dict()
    assert d["name"] == "null V3-slant" and d["residual"] < 1e-10


@pytest.mark.parametrize("build", [W.slant_invariant_witness, W.darboux_norm_constant_witness])
def test_darboux_axis_decomposition(build):
    dec, residual = C.axis_reconstruct_nonnull(build().data)
    assert residual < 1e-6
