"""Configuration files, analysis runs, JSON reports, plot data and selftest.

A configuration is a small INI document::

    [curve]
    x = sinh(s)
    y = cosh(s)
    z = s
    domain = -2, 2
    samples = 64

    [field]
    f = x^2 + y^2 + z
    convention = coordinate

    [analysis]
    abs_tol = 1e-7
    rel_tol = 1e-6
    checks = null_helix, null_darboux_helix

``param.NAME = value`` may appear in any section and binds ``NAME`` in every
expression.  Leaving out ``checks`` runs everything that applies to the
detected causal kind; ``checks =`` with no value runs nothing.
"""

import configparser
import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import classifiers as C
from .curves import (
    ArcLengthCurve,
    CurveSpec,
    GradientConvention,
    gradient,
    ScalarFieldSpec,
    parallel_gradient_check,
    speed_squared,
)
from .errors import ConfigError, EikHelixError, ParseError, UnknownKey
from .frames import (
    FrameTrace,
    darboux_rotation_residual,
    detect_kind,
    determinant_identity,
    frame_ode_residual,
    frame_trace,
    frenet_nonnull,
    orthonormality_defect,
)
from .lorentz import lorentz_cross, minkowski_inner, pseudo_norm
from .numerics import DEFAULT_POLICY, TolerancePolicy, detect_constancy

UNIT_SPEED_TOL = 1e-9

_SECTION_KEYS = {
    "curve": {"x", "y", "z", "domain", "samples"},
    "field": {"f", "convention"},
    "analysis": {"abs_tol", "rel_tol", "checks", "samples", "domain", "convention"},
}

ALL_CHECKS = {
    "nonnull": list(C.NONNULL_DEFINITIONS) + list(C.NONNULL_THEOREMS),
    "null": list(C.NULL_DEFINITIONS) + list(C.NULL_THEOREMS),
}
KNOWN_CHECKS = set(ALL_CHECKS["nonnull"]) | set(ALL_CHECKS["null"])


@dataclass
class AnalysisConfig:
    x: str
    y: str
    z: str
    f: str
    params: dict = field(default_factory=dict)
    convention: str = "coordinate"
    samples: int = 128
    domain: tuple = (-1.0, 1.0)
    abs_tol: float = 1e-7
    rel_tol: float = 1e-6
    checks: tuple | None = None

    def __post_init__(self):
        GradientConvention(self.convention)
        if self.checks is not None:
            unknown = [c for c in self.checks if c not in KNOWN_CHECKS]
            if unknown:
                raise UnknownKey(f"unknown check name(s): {', '.join(unknown)}")
            self.checks = tuple(self.checks)
        self.domain = tuple(float(d) for d in self.domain)

    def policy(self):
        return TolerancePolicy(self.abs_tol, self.rel_tol)

    def curve_spec(self):
        return CurveSpec.from_text(self.x, self.y, self.z, self.domain, self.samples, self.params)

    def field_spec(self):
        return ScalarFieldSpec.from_text(self.f, self.convention, self.params)

    def to_dict(self):
        return {
            "x": self.x, "y": self.y, "z": self.z, "f": self.f,
            "params": dict(sorted(self.params.items())),
            "convention": self.convention,
            "samples": self.samples,
            "domain": list(self.domain),
            "abs_tol": self.abs_tol,
            "rel_tol": self.rel_tol,
            "checks": None if self.checks is None else list(self.checks),
        }


def _locate(text, section, key):
    """Line and column (1-based) of ``key``'s value inside ``section``."""
    current = None
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            continue
        if current != section:
            continue
        for sep in "=:":
            head, found, _ = raw.partition(sep)
            if found and head.strip() == key:
                col = len(head) + 2
                while col <= len(raw) and raw[col - 1] == " ":
                    col += 1
                return n, col
    return None, None


def _float(text, value, section, key):
    try:
        out = float(value)
    except ValueError:
        line, col = _locate(text, section, key)
        raise ParseError(f"{key} must be a number, got {value!r}", line, col) from None
    if not math.isfinite(out):
        line, col = _locate(text, section, key)
        raise ParseError(f"{key} must be finite", line, col)
    return out


def parse_config(text: str) -> AnalysisConfig:
    """Parse an INI analysis configuration; see the module docstring."""
    cp = configparser.ConfigParser(interpolation=None, strict=True, empty_lines_in_values=False)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise ParseError("expected a [section] header", exc.lineno, 1) from None
    except configparser.DuplicateSectionError as exc:
        raise ParseError(f"duplicate section [{exc.section}]", exc.lineno, 1) from None
    except configparser.DuplicateOptionError as exc:
        raise ParseError(f"duplicate key {exc.option!r} in [{exc.section}]", exc.lineno, 1) from None
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] if exc.errors else None
        raise ParseError("malformed line", lineno, 1) from None

    values, params = {}, {}
    for section in cp.sections():
        if section not in _SECTION_KEYS:
            raise UnknownKey(f"unknown section [{section}]")
        for key, value in cp.items(section):
            if key.startswith("param."):
                name = key[len("param."):]
                if not name.isidentifier():
                    line, col = _locate(text, section, key)
                    raise ParseError(f"bad parameter name {name!r}", line, col)
                if name in params:
                    line, col = _locate(text, section, key)
                    raise ParseError(f"parameter {name!r} bound twice", line, col)
                params[name] = _float(text, value, section, key)
                continue
            if key not in _SECTION_KEYS[section]:
                line, col = _locate(text, section, key)
                raise UnknownKey(f"unknown key {key!r} in [{section}] (line {line})")
            if key in values:
                line, col = _locate(text, section, key)
                raise ParseError(f"key {key!r} given twice", line, col)
            values[key] = (section, value)

    for required in ("x", "y", "z", "f"):
        if required not in values:
            raise ParseError(f"missing required key {required!r}")

    def get(key, default, conv=None):
        if key not in values:
            return default
        section, raw = values[key]
        return conv(raw, section, key) if conv else raw

    def parse_samples(raw, section, key):
        try:
            n = int(raw)
        except ValueError:
            raise ParseError(f"samples must be an integer, got {raw!r}", *_locate(text, section, key)) from None
        if n < 8:
            raise ParseError("samples must be at least 8", *_locate(text, section, key))
        return n

    def parse_domain(raw, section, key):
        parts = [p.strip() for p in raw.split(",")]
        if len(parts) != 2:
            raise ParseError("domain needs two comma-separated numbers", *_locate(text, section, key))
        lo, hi = (_float(text, p, section, key) for p in parts)
        if not lo < hi:
            raise ParseError("domain must satisfy s_min < s_max", *_locate(text, section, key))
        return (lo, hi)

    def parse_convention(raw, section, key):
        try:
            return GradientConvention(raw.strip().lower()).value
        except ValueError:
            raise ParseError(f"convention must be metric or coordinate, got {raw!r}",
                             *_locate(text, section, key)) from None

    def parse_checks(raw, section, key):
        names = tuple(n.strip() for n in raw.split(",") if n.strip())
        unknown = [n for n in names if n not in KNOWN_CHECKS]
        if unknown:
            line, _ = _locate(text, section, key)
            raise UnknownKey(f"unknown check name(s) {', '.join(unknown)} (line {line})")
        return names

    def positive(raw, section, key):
        v = _float(text, raw, section, key)
        if v <= 0:
            raise ParseError(f"{key} must be positive", *_locate(text, section, key))
        return v

    cfg = AnalysisConfig(
        x=get("x", None).strip(),
        y=get("y", None).strip(),
        z=get("z", None).strip(),
        f=get("f", None).strip(),
        params=params,
        convention=get("convention", "coordinate", parse_convention),
        samples=get("samples", 128, parse_samples),
        domain=get("domain", (-1.0, 1.0), parse_domain),
        abs_tol=get("abs_tol", 1e-7, positive),
        rel_tol=get("rel_tol", 1e-6, positive),
        checks=get("checks", None, parse_checks),
    )
    # surface expression errors at parse time
    cfg.curve_spec()
    cfg.field_spec()
    return cfg


def serialize_config(cfg: AnalysisConfig) -> str:
    lines = ["[curve]", f"x = {cfg.x}", f"y = {cfg.y}", f"z = {cfg.z}",
             f"domain = {cfg.domain[0]!r}, {cfg.domain[1]!r}", f"samples = {cfg.samples}"]
    lines += [f"param.{k} = {v!r}" for k, v in sorted(cfg.params.items())]
    lines += ["", "[field]", f"f = {cfg.f}", f"convention = {cfg.convention}"]
    lines += ["", "[analysis]", f"abs_tol = {cfg.abs_tol!r}", f"rel_tol = {cfg.rel_tol!r}"]
    if cfg.checks is not None:
        lines.append("checks = " + ", ".join(cfg.checks))
    return "\n".join(lines) + "\n"


def _clean(obj):
    """Convert numpy scalars and arrays to plain JSON values; NaN becomes null."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


@dataclass
class RunReport:
    document: dict
    series: dict = field(default_factory=dict, repr=False, compare=False)

    def to_json(self) -> str:
        return json.dumps(self.document, indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text))

    @property
    def definitions(self):
        return self.document["definitions"]

    @property
    def theorems(self):
        return self.document["theorems"]


def _prepare_curve(curve):
    grid = curve.grid()
    kind = detect_kind(curve, grid)
    if kind == "nonnull":
        q = speed_squared(curve, grid)
        if float(np.max(np.abs(np.abs(q) - 1.0))) > UNIT_SPEED_TOL:
            return ArcLengthCurve(curve), kind, True
    return curve, kind, False


def _kind_label(trace: FrameTrace):
    if trace.kind == "null":
        return "null"
    return "spacelike" if trace.eps[0] > 0 else "timelike"


def _series(data: C.FieldAlongCurve, trace: FrameTrace, convention):
    tag = f"[{convention} gradient]"
    p = data.pairings
    out = {
        "pairing_v1": ("g(grad f, V1) " + tag, p[:, 0]),
        "pairing_v2": ("g(grad f, V2) " + tag, p[:, 1]),
        "pairing_v3": ("g(grad f, V3) " + tag, p[:, 2]),
        "gradient_norm": ("|grad f| " + tag, pseudo_norm(data.grad)),
        "kappa": ("kappa", data.kappa),
        "tau": ("tau", data.tau),
        "darboux_norm_sq": ("g(W, W)", data.darboux_norm_sq()),
        "pairing_darboux": ("g(grad f, W) " + tag, minkowski_inner(data.grad, data.darboux())),
    }
    if data.kind == "nonnull":
        try:
            sigma, _ = C.slant_invariant(data)
            out["slant_invariant"] = ("slant invariant", sigma)
        except EikHelixError:
            pass
    else:
        det, closed, _ = determinant_identity(trace)
        out["binormal_determinant"] = ("det(V2', V2'', V2''') in frame basis", det)
        out["binormal_determinant_closed"] = ("tau^3 (kappa' tau - kappa tau')", closed)
    recon = np.linalg.norm(data.grad - np.einsum("ni,nij->nj", data.coefficients, data.frames), axis=-1)
    out["reconstruction_residual"] = ("|grad f - sum a_i V_i| " + tag, recon)
    return out


def _run_check(name, fn, data, policy):
    try:
        return fn(data, policy).to_dict()
    except EikHelixError as exc:
        return {"error": type(exc).__name__, "message": str(exc)}


def run_analysis(cfg: AnalysisConfig) -> RunReport:
    """Build the frame trace for ``cfg`` and run the requested checks."""
    policy = cfg.policy()
    fld = cfg.field_spec()
    curve, _, reparam = _prepare_curve(cfg.curve_spec())
    trace = frame_trace(curve, policy)
    data = C.along_curve(fld, trace)
    kind = trace.kind

    applicable = ALL_CHECKS[kind]
    requested = applicable if cfg.checks is None else list(cfg.checks)
    definitions = C.NONNULL_DEFINITIONS if kind == "nonnull" else C.NULL_DEFINITIONS
    theorems = C.NONNULL_THEOREMS if kind == "nonnull" else C.NULL_THEOREMS
    defs_out, thms_out, skipped = {}, {}, []
    for name in requested:
        if name in definitions:
            defs_out[name] = _run_check(name, definitions[name], data, policy)
        elif name in theorems:
            thms_out[name] = _run_check(name, theorems[name], data, policy)
        else:
            skipped.append({"name": name, "reason": f"not applicable to a {kind} curve"})

    doc = {
        "tool": {"name": "eikhelix", "version": __version__},
        "config": cfg.to_dict(),
        "convention": cfg.convention,
        "kind": _kind_label(trace),
        "causal_characters": list(trace.eps),
        "orientation": trace.orientation,
        "arc_length_reparameterized": reparam,
        "parameter_domain": list(curve.domain),
        "eikonal": C.eikonal_report(data, policy).to_dict(),
        "hessian": {"max_abs": data.hessian_max,
                    "parallel_gradient": parallel_gradient_check(fld, trace.position)},
        "frame": {
            "kappa": detect_constancy(data.kappa, policy).to_dict(),
            "tau": detect_constancy(data.tau, policy).to_dict(),
        },
        "residuals": {
            "frame_ode": frame_ode_residual(trace),
            "darboux_rotation": darboux_rotation_residual(trace),
            "orthonormality": orthonormality_defect(trace),
            "reconstruction": data.reconstruction_residual(),
        },
        "definitions": defs_out,
        "theorems": thms_out,
        "skipped": skipped,
    }
    series = {}
    if requested:
        series = {k: (label, trace.s, v) for k, (label, v) in _series(data, trace, cfg.convention).items()}
    return RunReport(_clean(doc), series)


def emit_plot_data(report: RunReport, directory) -> list:
    """Write one ``s,value`` CSV per sampled quantity; returns the paths."""
    directory = Path(directory)
    if not report.series:
        return []
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for key in sorted(report.series):
        label, s, values = report.series[key]
        path = directory / f"{key}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["s", label])
            for a, b in zip(np.asarray(s, float), np.asarray(values, float)):
                w.writerow([repr(float(a)), repr(float(b))])
        paths.append(path)
    return paths


# selftest

NULL_REFERENCE = AnalysisConfig(
    x="sinh(s)", y="cosh(s)", z="s", f="x^2 + y^2 + z", samples=64, domain=(-2.0, 2.0),
)

SPACELIKE_REFERENCE = AnalysisConfig(
    x="a*cosh(s/sqrt(a^2 + b^2))", y="a*sinh(s/sqrt(a^2 + b^2))", z="b*s/sqrt(a^2 + b^2)",
    f="x^2 + y^2 + z", params={"a": 1.0, "b": 1.0}, samples=64, domain=(-2.0, 2.0),
)

SELFTEST_TOL = 1e-8


class _Tally:
    def __init__(self):
        self.lines = []
        self.failed = 0
        self.passed = 0
        self.flagged = 0

    def check(self, name, ok, detail=""):
        self.lines.append(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
        if ok:
            self.passed += 1
        else:
            self.failed += 1

    def near(self, name, value, target, tol=SELFTEST_TOL):
        value, target = float(value), float(target)
        self.check(name, abs(value - target) < tol, f"value {value!r} target {target!r}")

    def flag(self, name, detail):
        self.lines.append(f"FLAGGED {name}: {detail}")
        self.flagged += 1

    def info(self, text):
        self.lines.append(f"INFO {text}")


def _constant(t, name, values, policy, target=None, magnitude=False):
    r = detect_constancy(values, policy)
    t.check(f"{name} constant", r.is_constant, f"center {r.center!r} spread {r.max_abs_dev!r}")
    if target is not None:
        center = abs(r.center) if magnitude else r.center
        t.near(f"{name} value", center, target)
    return r


def _torsion_oracle(curve, s, h=1e-4):
    """``-g(V2', V3)`` with ``V2'`` from central differences of sampled frames."""
    lo, hi = frenet_nonnull(curve, s - h), frenet_nonnull(curve, s + h)
    mid = frenet_nonnull(curve, s)
    dV2 = (hi.V2 - lo.V2) / (2 * h)
    return -float(minkowski_inner(dV2, mid.V3))


def _null_reference(t, policy):
    cfg = NULL_REFERENCE
    trace = frame_trace(cfg.curve_spec(), policy)
    data = C.along_curve(cfg.field_spec(), trace)
    t.info(f"null reference: x = {cfg.x}, y = {cfg.y}, z = {cfg.z}, f = {cfg.f}, "
           f"s in [{cfg.domain[0]!r}, {cfg.domain[1]!r}], {cfg.samples} samples")
    t.check("null reference is a null curve", trace.kind == "null")
    p = data.pairings
    _constant(t, "|grad f|", pseudo_norm(data.grad), policy, math.sqrt(5))
    _constant(t, "g(grad f, V1)", p[:, 0], policy, 1.0)
    _constant(t, "g(grad f, V2)", p[:, 1], policy, 0.5)
    _constant(t, "g(grad f, V3)", p[:, 2], policy, 2.0)
    _constant(t, "kappa", data.kappa, policy, 1.0)
    _constant(t, "tau", data.tau, policy, -0.5)
    W = data.darboux()
    t.check("W = (0, 0, -1) componentwise", bool(np.max(np.abs(W - [0.0, 0.0, -1.0])) <= 1e-9),
            f"max deviation {float(np.max(np.abs(W - [0.0, 0.0, -1.0])))!r}")
    _constant(t, "g(grad f, W)", minkowski_inner(data.grad, W), policy, -1.0)
    for name, fn in C.NULL_DEFINITIONS.items():
        v = fn(data, policy)
        if name == "null_darboux_helix":
            continue
        t.check(f"{v.definition_name} verdict", v.holds)
    for name, fn in C.NULL_THEOREMS.items():
        t.check(f"{name} report is vacuous", fn(data, policy).vacuous)
    cross = np.asarray(lorentz_cross(data.V1, data.V2))
    t.check("V1 x V2 = V3", bool(np.max(np.abs(cross - data.V3)) < 1e-12),
            f"max deviation {float(np.max(np.abs(cross - data.V3)))!r}")
    return data


def _spacelike_reference(t, policy):
    cfg = SPACELIKE_REFERENCE
    curve = cfg.curve_spec()
    t.info(f"spacelike reference: x = {cfg.x}, y = {cfg.y}, z = {cfg.z}, a = 1, b = 1, f = {cfg.f}, "
           f"s in [{cfg.domain[0]!r}, {cfg.domain[1]!r}], {cfg.samples} samples")
    q = speed_squared(curve, curve.grid())
    t.check("speed is 1 and spacelike", bool(np.max(np.abs(q - 1.0)) <= 1e-10),
            f"max |g(a', a') - 1| = {float(np.max(np.abs(q - 1.0)))!r}")
    trace = frame_trace(curve, policy)
    data = C.along_curve(cfg.field_spec(), trace)
    p = data.pairings
    _constant(t, "|grad f|", pseudo_norm(data.grad), policy, math.sqrt(3))
    _constant(t, "kappa", data.kappa, policy, 0.5)
    _constant(t, "|g(grad f, V2)|", p[:, 1], policy, 2.0, magnitude=True)
    _constant(t, "g(grad f, W)", minkowski_inner(data.grad, data.darboux()), policy)
    _constant(t, "g(W0, grad f)", minkowski_inner(data.grad, data.unit_darboux()), policy)
    _constant(t, "eps3 kappa^2 + eps1 tau^2", data.darboux_norm_sq(), policy)
    tau = _constant(t, "tau", data.tau, policy)
    oracle = _torsion_oracle(curve, 0.3)
    t.near("tau matches finite-difference oracle", tau.center, oracle)
    for name in ("slant_helix", "darboux_helix"):
        v = C.NONNULL_DEFINITIONS[name](data, policy)
        t.check(f"{v.definition_name} verdict", v.holds)
    for name, fn in C.NONNULL_THEOREMS.items():
        r = fn(data, policy)
        gated = any(h == "Hessian of f vanishes" for h, _ in r.hypotheses)
        if gated:
            t.check(f"{name} report is vacuous", r.vacuous)
    v2 = data.V2[len(data.s) // 2]
    s_mid = float(data.s[len(data.s) // 2])
    t.info(f"constructed V2 at s = {s_mid!r}: {_fmt_vec(v2)}; the opposite orientation "
           f"(cosh, sinh, 0) would need kappa < 0")
    return data


def _fmt_vec(v):
    return "(" + ", ".join(repr(round(float(c), 12) + 0.0) for c in v) + ")"


def _ledger(t, null_data, spacelike_data):
    tau = float(np.median(spacelike_data.tau))
    t.flag("spacelike reference torsion",
           f"constructed frame gives tau = {tau!r}; the closed form -(a^2 + b^2)/b = -2.0 is not reproduced")
    metric = SPACELIKE_REFERENCE.field_spec().with_convention("metric")
    g_metric = gradient(metric, spacelike_data.trace.position)
    pair = minkowski_inner(g_metric, spacelike_data.V2)
    t.flag("gradient convention",
           "coordinate gradient (2x, 2y, 1) is used for the reference values; under the metric "
           f"gradient g(grad f, V2) ranges over [{float(pair.min())!r}, {float(pair.max())!r}]")
    V1, V2, V3 = null_data.V1, null_data.V2, null_data.V3
    d23 = float(np.max(np.abs(np.asarray(lorentz_cross(V2, V3)) - V1)))
    d31 = float(np.max(np.abs(np.asarray(lorentz_cross(V3, V1)) - V2)))
    t.flag("null frame cross relations",
           f"V1 x V2 = V3 holds, but V2 x V3 = V1 and V3 x V1 = V2 are unreachable "
           f"(deviations {d23!r}, {d31!r}); the actual relations are V2 x V3 = V2 and V3 x V1 = V1")
    H = spacelike_data.hessian_max
    t.flag("Hessian gate",
           f"f = x^2 + y^2 + z has Hessian diag(2, 2, 0) (max entry {H!r}); every theorem report on "
           "both reference curves is vacuous")


def selftest(policy: TolerancePolicy = DEFAULT_POLICY):
    """Reproduce both reference curves; returns ``(text, ok)``."""
    t = _Tally()
    t.info(f"eikhelix {__version__} selftest, abs_tol {policy.abs_tol!r}, rel_tol {policy.rel_tol!r}")
    try:
        null_data = _null_reference(t, policy)
        spacelike_data = _spacelike_reference(t, policy)
    except EikHelixError as exc:
        t.check("reference run", False, f"{type(exc).__name__}: {exc}")
    else:
        _ledger(t, null_data, spacelike_data)
    ok = t.failed == 0
    t.lines.append(f"selftest: {t.passed} passed, {t.failed} failed, {t.flagged} flagged")
    return "\n".join(t.lines) + "\n", ok


__all__ = [
    "AnalysisConfig", "RunReport", "parse_config", "serialize_config", "run_analysis",
    "emit_plot_data", "selftest", "ConfigError", "NULL_REFERENCE", "SPACELIKE_REFERENCE",
]
