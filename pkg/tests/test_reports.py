import csv
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eikhelix.errors import BadExpression, DegenerateNormal, ParseError, UnknownKey
from eikhelix.numerics import TolerancePolicy
from eikhelix.reports import (
    NULL_REFERENCE, SPACELIKE_REFERENCE, AnalysisConfig, RunReport, emit_plot_data,
    parse_config, run_analysis, selftest, serialize_config,
)

BASIC = """\
[curve]
x = sinh(s)
y = cosh(s)
z = s

[field]
f = x^2 + y^2 + z
"""


def test_parse_defaults():
    cfg = parse_config(BASIC)
    assert cfg.convention == "coordinate"
    assert cfg.samples == 128 and cfg.domain == (-1.0, 1.0)
    assert cfg.checks is None and cfg.params == {}


def test_parse_params_and_analysis():
    text = BASIC.replace("x = sinh(s)", "x = a*sinh(s)\nparam.a = 2") + """
[analysis]
samples = 32
domain = -0.5, 0.5
abs_tol = 1e-9
checks = null_helix, null_v2_slant_helix
convention = metric
"""
    cfg = parse_config(text)
    assert cfg.params == {"a": 2.0}
    assert cfg.samples == 32 and cfg.domain == (-0.5, 0.5)
    assert cfg.abs_tol == 1e-9 and cfg.convention == "metric"
    assert cfg.checks == ("null_helix", "null_v2_slant_helix")


@pytest.mark.parametrize("bad, line", [
    ("samples = many", 4),
    ("domain = 1, 0", 4),
    ("samples = 3", 4),
])
def test_parse_error_locations(bad, line):
    text = "[curve]\nx = s\ny = 0\n" + bad + "\nz = 0\n[field]\nf = z\n"
    with pytest.raises(ParseError) as info:
        parse_config(text)
    assert info.value.line == line


def test_bad_convention_location():
    with pytest.raises(ParseError) as info:
        parse_config(BASIC + "convention = polar\n")
    assert (info.value.line, info.value.column) == (8, 14)


def test_missing_header():
    with pytest.raises(ParseError) as info:
        parse_config("x = s\n")
    assert info.value.line == 1


@pytest.mark.parametrize("text", [
    BASIC + "[extra]\nk = 1\n",
    BASIC + "colour = red\n",
    BASIC + "[analysis]\nchecks = slant_helix, wobble\n",
])
def test_unknown_keys(text):
    with pytest.raises(UnknownKey):
        parse_config(text)


def test_bad_expression_names_symbol():
    with pytest.raises(BadExpression, match="foo"):
        parse_config(BASIC.replace("z = s", "z = foo(s)"))


def test_missing_key():
    with pytest.raises(ParseError, match="z"):
        parse_config(BASIC.replace("z = s\n", ""))


ident = st.sampled_from(["s", "2*s", "sin(s)", "cosh(s)", "s^2 + 1", "a*s"])
num = st.floats(-1e6, 1e6, allow_nan=False).filter(lambda v: v != 0)


@given(ident, ident, ident, num, st.integers(8, 500), st.floats(1e-12, 1.0),
       st.sampled_from(["metric", "coordinate"]),
       st.one_of(st.none(), st.lists(st.sampled_from(["slant_helix", "null_helix"]), min_size=1, max_size=2)))
def test_config_round_trip(x, y, z, a, samples, tol, conv, checks):
    cfg = AnalysisConfig(x=x, y=y, z=z, f="x*y + z", params={"a": a}, samples=samples,
                         domain=(-a if a > 0 else a, abs(a)) if a else (-1, 1),
                         abs_tol=tol, convention=conv, checks=checks)
    assert parse_config(serialize_config(cfg)) == cfg


def test_unknown_check_in_constructor():
    with pytest.raises(UnknownKey):
        AnalysisConfig(x="s", y="0", z="0", f="z", checks=["nope"])


@pytest.fixture(scope="module")
def null_report():
    return run_analysis(NULL_REFERENCE)


@pytest.fixture(scope="module")
def spacelike_report():
    return run_analysis(SPACELIKE_REFERENCE)


def test_null_analysis(null_report):
    doc = null_report.document
    assert doc["kind"] == "null" and not doc["arc_length_reparameterized"]
    assert doc["frame"]["kappa"]["center"] == pytest.approx(1.0)
    assert all(d["holds"] for d in null_report.definitions.values())
    assert all(t["vacuous"] for t in null_report.theorems.values())
    assert doc["residuals"]["reconstruction"] < 1e-8
    assert doc["hessian"]["parallel_gradient"] is False


def test_spacelike_analysis(spacelike_report):
    doc = spacelike_report.document
    assert doc["kind"] == "spacelike" and doc["causal_characters"] == [1, -1, 1]
    assert spacelike_report.definitions["slant_helix"]["holds"]
    assert doc["frame"]["kappa"]["center"] == pytest.approx(0.5)


def test_reparameterization():
    # g(a', a') = -1 + 4 = 3
    cfg = AnalysisConfig(x="s", y="2*cos(s)", z="2*sin(s)", f="z", samples=32, domain=(0, 1))
    doc = run_analysis(cfg).document
    assert doc["arc_length_reparameterized"] and doc["kind"] == "spacelike"
    assert doc["parameter_domain"][1] == pytest.approx(np.sqrt(3))


def test_geodesic_is_rejected():
    with pytest.raises(DegenerateNormal):
        run_analysis(AnalysisConfig(x="0", y="s", z="0", f="z", samples=16))


def test_json_round_trip(null_report):
    text = null_report.to_json()
    assert "NaN" not in text
    back = RunReport.from_json(text)
    assert back.document == json.loads(text)
    assert back.to_json() == text


def test_skipped_checks():
    cfg = AnalysisConfig(**{**NULL_REFERENCE.to_dict(), "domain": (-2, 2), "checks": ["slant_helix", "null_helix"]})
    rep = run_analysis(cfg)
    assert list(rep.definitions) == ["null_helix"]
    assert rep.document["skipped"][0]["name"] == "slant_helix"


def _read(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array([[float(v) for v in r] for r in rows[1:]])


def test_plot_data(tmp_path, null_report, spacelike_report):
    paths = emit_plot_data(null_report, tmp_path / "null")
    names = {p.name for p in paths}
    assert {"pairing_v2.csv", "binormal_determinant.csv", "kappa.csv"} <= names
    header, rows = _read(tmp_path / "null" / "pairing_v2.csv")
    assert header == ["s", "g(grad f, V2) [coordinate gradient]"]
    assert len(rows) == 64
    np.testing.assert_allclose(rows[:, 1], 0.5, atol=1e-9)
    emit_plot_data(spacelike_report, tmp_path / "sp")
    _, rows = _read(tmp_path / "sp" / "darboux_norm_sq.csv")
    assert np.ptp(rows[:, 1]) < 1e-9


def test_no_checks_no_plot_files(tmp_path):
    cfg = AnalysisConfig(**{**NULL_REFERENCE.to_dict(), "checks": []})
    rep = run_analysis(cfg)
    assert emit_plot_data(rep, tmp_path / "out") == []
    assert not (tmp_path / "out").exists()


def test_selftest_passes():
    text, ok = selftest()
    assert ok
    assert text.rstrip().splitlines()[-1] == "selftest: 45 passed, 0 failed, 4 flagged"
    assert "FAIL " not in text


def test_selftest_tight_tolerance_fails():
    text, ok = selftest(TolerancePolicy(1e-18, 1e-18))
    assert not ok and "FAIL " in text
