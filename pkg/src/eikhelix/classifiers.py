"""Helix definitions and characterization theorems as executable checks.

Every check works on a :class:`FieldAlongCurve`: the samples of a frame trace
paired with the gradient of a scalar field.  Such a record comes either from
an actual curve and field (:func:`along_curve`) or from a synthetic witness
(:mod:`eikhelix.witnesses`).

Two kinds of result are produced.  A :class:`HelixVerdict` answers whether a
pairing is constant along the curve.  A :class:`TheoremReport` evaluates every
hypothesis of a statement and then its conclusions; when a hypothesis fails
the report is *vacuous* and its conclusions carry no claim, although they are
still computed and reported.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .curves import HESSIAN_GATE_TOL, gradient, hessian
from .errors import EikHelixError, LightlikeDarboux, PreconditionError
from .frames import FRAME_TOL, FrameTrace, darboux_norm_sq, determinant_identity
from .lorentz import minkowski_inner, pseudo_norm
from .numerics import DEFAULT_POLICY, ConstancyReport, TolerancePolicy, cumulative_integral, detect_constancy

RESIDUAL_TOL = 1e-6
DETERMINANT_REL_TOL = 1e-5


@dataclass
class FieldAlongCurve:
    """Per-sample frame data and field gradient along one curve."""

    kind: str
    s: np.ndarray
    frames: np.ndarray  # (N, 3, 3), rows V1, V2, V3
    kappa: np.ndarray
    tau: np.ndarray
    dkappa: np.ndarray
    dtau: np.ndarray
    eps: tuple
    grad: np.ndarray  # (N, 3)
    hessian_max: float
    convention: str = "coordinate"
    orientation: int = 1
    curvature_fn: Callable | None = None
    trace: FrameTrace | None = None
    label: str = ""

    @property
    def V1(self):
        return self.frames[:, 0]

    @property
    def V2(self):
        return self.frames[:, 1]

    @property
    def V3(self):
        return self.frames[:, 2]

    @property
    def pairings(self):
        """``g(grad f, V_i)`` as an ``(N, 3)`` array."""
        return np.stack([minkowski_inner(self.grad, self.frames[:, i]) for i in range(3)], axis=-1)

    @property
    def coefficients(self):
        """Components ``a_i`` with ``grad f = sum a_i V_i``."""
        p = self.pairings
        if self.kind == "nonnull":
            return p * np.asarray(self.eps, float)
        return np.stack([p[:, 1], p[:, 0], p[:, 2]], axis=-1)

    def darboux(self):
        k, t = self.kappa[:, None], self.tau[:, None]
        if self.kind == "nonnull":
            return t * self.V1 - k * self.V3
        return t * self.V1 - k * self.V2

    def darboux_norm_sq(self):
        if self.kind == "nonnull":
            return darboux_norm_sq(self.kappa, self.tau, self.eps[0], self.eps[2])
        return minkowski_inner(self.darboux(), self.darboux())

    def unit_darboux(self, tol=FRAME_TOL):
        q = self.darboux_norm_sq()
        if np.any(np.abs(q) <= tol):
            raise LightlikeDarboux("Darboux vector is null somewhere; cannot normalize")
        return self.darboux() / np.sqrt(np.abs(q))[:, None]

    def reconstruction_residual(self):
        recon = np.einsum("ni,nij->nj", self.coefficients, self.frames)
        return float(np.max(np.linalg.norm(self.grad - recon, axis=-1)))


def along_curve(fld, trace: FrameTrace, label="") -> FieldAlongCurve:
    pos = trace.position
    return FieldAlongCurve(
        kind=trace.kind,
        s=trace.s,
        frames=trace.frames,
        kappa=trace.kappa.value,
        tau=trace.tau.value,
        dkappa=trace.kappa.derivative().value,
        dtau=trace.tau.derivative().value,
        eps=trace.eps,
        grad=gradient(fld, pos),
        hessian_max=float(np.max(np.abs(hessian(fld, pos)))),
        convention=fld.convention.value,
        orientation=trace.orientation,
        curvature_fn=trace.curvatures_at if trace.curve is not None else None,
        trace=trace,
        label=label,
    )


@dataclass
class HelixVerdict:
    definition_name: str
    report: ConstancyReport
    admissible: bool
    values: np.ndarray = field(repr=False, default=None)

    @property
    def constant(self):
        return self.report.is_constant

    @property
    def holds(self):
        return self.report.is_constant and self.admissible

    def to_dict(self):
        return {
            "definition": self.definition_name,
            "holds": self.holds,
            "constant": self.constant,
            "admissible": self.admissible,
            "report": self.report.to_dict(),
        }


@dataclass
class Check:
    name: str
    passed: bool
    value: float | None = None
    report: ConstancyReport | None = None
    detail: str = ""

    def to_dict(self):
        out = {"name": self.name, "passed": self.passed, "value": self.value}
        if self.report is not None:
            out["report"] = self.report.to_dict()
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class TheoremReport:
    theorem_name: str
    hypotheses: list
    conclusion_checks: list

    @property
    def vacuous(self):
        return not all(ok for _, ok in self.hypotheses)

    @property
    def conclusions_hold(self):
        return all(c.passed for c in self.conclusion_checks)

    def check(self, name):
        for c in self.conclusion_checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "theorem": self.theorem_name,
            "vacuous": self.vacuous,
            "hypotheses": [{"name": n, "holds": bool(ok)} for n, ok in self.hypotheses],
            "conclusions_hold": self.conclusions_hold,
            "checks": [c.to_dict() for c in self.conclusion_checks],
        }


# shared hypothesis pieces


def eikonal_report(data, policy=DEFAULT_POLICY):
    return detect_constancy(pseudo_norm(data.grad), policy)


def _eikonal_ok(data, policy):
    r = eikonal_report(data, policy)
    return r.is_constant and r.is_nonzero


def _nonzero_curvatures(data, policy):
    return bool(np.min(np.abs(data.kappa)) > policy.abs_tol and np.min(np.abs(data.tau)) > policy.abs_tol)


def is_helix(data, policy=DEFAULT_POLICY):
    """Helix test: ``tau/kappa`` and ``kappa`` both constant."""
    ratio = detect_constancy(data.tau / data.kappa, policy)
    return ratio.is_constant and detect_constancy(data.kappa, policy).is_constant


def _gate(data):
    return data.hessian_max <= HESSIAN_GATE_TOL


def _common_hypotheses(data, policy, helix_excluded=True, curvatures=True):
    hyps = []
    if curvatures:
        hyps.append(("non-zero curvatures", _nonzero_curvatures(data, policy)))
    if helix_excluded:
        hyps.append(("not a helix", not is_helix(data, policy)))
    hyps.append(("f eikonal along the curve", _eikonal_ok(data, policy)))
    hyps.append(("Hessian of f vanishes", _gate(data)))
    return hyps


def _require(data, kind):
    if data.kind != kind:
        raise PreconditionError(f"check needs a {kind} trace, got {data.kind}")


def _verdict(name, values, data, policy, need_nonzero=True):
    report = detect_constancy(values, policy)
    admissible = _eikonal_ok(data, policy) and (report.is_nonzero or not need_nonzero)
    return HelixVerdict(name, report, admissible, np.asarray(values))


# non-null definitions


def slant_helix_check(data, policy: TolerancePolicy = DEFAULT_POLICY) -> HelixVerdict:
    """Constancy of ``g(grad f, V2)`` along a non-null curve."""
    _require(data, "nonnull")
    return _verdict("slant helix", data.pairings[:, 1], data, policy)


def darboux_helix_check(data, policy: TolerancePolicy = DEFAULT_POLICY) -> HelixVerdict:
    _require(data, "nonnull")
    values = minkowski_inner(data.unit_darboux(), data.grad)
    return _verdict("Darboux helix", values, data, policy, need_nonzero=False)


def non_normed_darboux_check(data, policy: TolerancePolicy = DEFAULT_POLICY) -> HelixVerdict:
    _require(data, "nonnull")
    values = minkowski_inner(data.darboux(), data.grad)
    return _verdict("non-normed Darboux helix", values, data, policy, need_nonzero=False)


def darboux_norm_report(data, policy=DEFAULT_POLICY):
    return detect_constancy(data.darboux_norm_sq(), policy)


def darboux_normalization_check(data, policy: TolerancePolicy = DEFAULT_POLICY) -> TheoremReport:
    """A non-normed Darboux helix is a Darboux helix iff ``g(W, W)`` is constant."""
    _require(data, "nonnull")
    nn = non_normed_darboux_check(data, policy)
    wn = darboux_norm_report(data, policy)
    hyps = [
        ("non-zero curvatures", _nonzero_curvatures(data, policy)),
        ("f eikonal along the curve", _eikonal_ok(data, policy)),
        ("non-normed Darboux helix", nn.constant),
    ]
    name = "Darboux helix iff g(W, W) constant"
    dh, err = _safe(darboux_helix_check, data, policy)
    if err:
        checks = [Check(name, False, detail=err)]
    else:
        checks = [Check(name, dh.constant == wn.is_constant,
                        detail=f"darboux={dh.constant} g(W,W)const={wn.is_constant}"),
                  Check("g(W, W) constancy", True, wn.center, wn)]
    return TheoremReport("Darboux normalization", hyps, checks)


def slant_invariant(data, policy: TolerancePolicy = DEFAULT_POLICY, tol=FRAME_TOL):
    """``kappa^2 (tau/kappa)' / |eps1 tau^2 + eps3 kappa^2|^(3/2)`` and its constancy."""
    _require(data, "nonnull")
    q = data.darboux_norm_sq()
    if np.any(np.abs(q) <= tol):
        raise LightlikeDarboux("eps1 tau^2 + eps3 kappa^2 vanishes on the trace")
    k, t = data.kappa, data.tau
    values = (data.dtau * k - t * data.dkappa) / np.abs(q) ** 1.5
    return values, detect_constancy(values, policy)


@dataclass
class AxisDecomposition:
    a1: np.ndarray
    a2: np.ndarray
    a3: np.ndarray
    c: float
    n: float

    def to_dict(self):
        return {"c": self.c, "n": self.n}


def axis_decomposition(data) -> AxisDecomposition:
    a = data.coefficients
    p = data.pairings
    if data.kind == "nonnull":
        c = float(np.median(p[:, 1]))
        try:
            n = float(np.median(minkowski_inner(data.grad, data.unit_darboux())))
        except LightlikeDarboux:
            n = float("nan")
    else:
        c = float(np.median(p[:, 0]))
        n = float(np.median(minkowski_inner(data.grad, data.darboux())))
    return AxisDecomposition(a[:, 0], a[:, 1], a[:, 2], c, n)


def axis_reconstruct_nonnull(data, policy: TolerancePolicy = DEFAULT_POLICY):
    """Decompose ``grad f`` as ``n W0 + c V2`` and return the worst mismatch.

    ``c`` here is the V2 coefficient ``eps2 g(grad f, V2)`` and ``n`` is the
    W0 coefficient ``sign(g(W, W)) g(grad f, W0)``.
    """
    _require(data, "nonnull")
    if not slant_helix_check(data, policy).holds:
        raise PreconditionError("axis reconstruction needs a slant helix")
    W0 = data.unit_darboux()
    dec = axis_decomposition(data)
    delta = float(np.sign(np.median(data.darboux_norm_sq())))
    n_coef = delta * dec.n
    c_coef = data.eps[1] * dec.c
    predicted = n_coef * W0 + c_coef * data.V2
    residual = float(np.max(np.linalg.norm(data.grad - predicted, axis=-1)))
    return dec, residual


def ode_system_residual(data, policy: TolerancePolicy = DEFAULT_POLICY):
    """Residuals of the curvature system satisfied by a slant helix's axis.

    With ``N = sqrt|eps1 tau^2 + eps3 kappa^2|`` the frame components are
    ``a1 = n tau / N`` and ``a3 = -n kappa / N``; they must obey
    ``a1' = eps1 kappa c`` and ``a3' = eps3 tau c``.
    """
    _require(data, "nonnull")
    e1, e2, e3 = data.eps
    q = data.darboux_norm_sq()
    if np.any(np.abs(q) <= FRAME_TOL):
        raise LightlikeDarboux("eps1 tau^2 + eps3 kappa^2 vanishes on the trace")
    dec = axis_decomposition(data)
    delta = float(np.sign(np.median(q)))
    n = delta * dec.n
    c = e2 * dec.c
    k, t, kd, td = data.kappa, data.tau, data.dkappa, data.dtau
    N = np.sqrt(np.abs(q))
    dq = 2 * e3 * k * kd + 2 * e1 * t * td
    dN = np.sign(q) * dq / (2 * N)
    d_a1 = n * (td * N - t * dN) / N**2
    d_a3 = -n * (kd * N - k * dN) / N**2
    r1 = float(np.max(np.abs(d_a1 - e1 * k * c)))
    r2 = float(np.max(np.abs(d_a3 - e3 * t * c)))
    return r1, r2


def _safe(fn, *args):
    try:
        return fn(*args), None
    except EikHelixError as exc:
        return None, str(exc)


def slant_helix_axis_check(data, policy: TolerancePolicy = DEFAULT_POLICY, tol=RESIDUAL_TOL) -> TheoremReport:
    """Slant helix with parallel gradient: invariant constant and axis formula."""
    _require(data, "nonnull")
    slant = slant_helix_check(data, policy)
    hyps = _common_hypotheses(data, policy) + [("slant helix", slant.holds)]
    checks = []
    inv, err = _safe(slant_invariant, data, policy)
    if err:
        checks.append(Check("slant invariant constant", False, detail=err))
    else:
        checks.append(Check("slant invariant constant", inv[1].is_constant, inv[1].center, inv[1]))
    rec, err = _safe(axis_reconstruct_nonnull, data, policy)
    if err:
        checks.append(Check("axis residual", False, detail=err))
    else:
        checks.append(Check("axis residual", rec[1] <= tol, rec[1], detail=f"c={rec[0].c!r} n={rec[0].n!r}"))
    return TheoremReport("slant helix axis", hyps, checks)


def slant_implies_darboux_check(data, policy: TolerancePolicy = DEFAULT_POLICY, tol=RESIDUAL_TOL) -> TheoremReport:
    _require(data, "nonnull")
    slant = slant_helix_check(data, policy)
    hyps = _common_hypotheses(data, policy) + [("slant helix", slant.holds)]
    checks = []
    dh, err = _safe(darboux_helix_check, data, policy)
    if err:
        checks.append(Check("Darboux helix", False, detail=err))
    else:
        checks.append(Check("Darboux helix", dh.constant, dh.report.center, dh.report))
    rec, err = _safe(axis_reconstruct_nonnull, data, policy)
    if err:
        checks.append(Check("gradient in span of W0 and V2", False, detail=err))
    else:
        checks.append(Check("gradient in span of W0 and V2", rec[1] <= tol, rec[1]))
    return TheoremReport("slant helix is Darboux helix", hyps, checks)


def slant_curvature_system_check(data, policy: TolerancePolicy = DEFAULT_POLICY, tol=RESIDUAL_TOL) -> TheoremReport:
    _require(data, "nonnull")
    slant = slant_helix_check(data, policy)
    hyps = _common_hypotheses(data, policy) + [("slant helix", slant.holds)]
    res, err = _safe(ode_system_residual, data, policy)
    if err:
        checks = [Check("first curvature equation", False, detail=err),
                  Check("second curvature equation", False, detail=err)]
    else:
        checks = [Check("first curvature equation", res[0] <= tol, res[0]),
                  Check("second curvature equation", res[1] <= tol, res[1])]
    return TheoremReport("slant helix curvature system", hyps, checks)


def _darboux_norm_nonzero_constant(data, policy):
    r = detect_constancy(np.sqrt(np.abs(data.darboux_norm_sq())), policy)
    return r, r.is_constant and r.is_nonzero


def darboux_slant_norm_check(data, policy: TolerancePolicy = DEFAULT_POLICY) -> TheoremReport:
    """Non-normed Darboux helix: slant helix iff the Darboux vector has constant length."""
    _require(data, "nonnull")
    nn = non_normed_darboux_check(data, policy)
    hyps = _common_hypotheses(data, policy) + [("non-normed Darboux helix", nn.constant)]
    slant = slant_helix_check(data, policy)
    norm, norm_ok = _darboux_norm_nonzero_constant(data, policy)
    checks = [
        Check("slant helix iff |W| non-zero constant", slant.constant == norm_ok,
              detail=f"slant={slant.constant} |W|const={norm_ok}"),
        Check("|W| constancy", True, norm.center, norm),
        Check("g(grad f, V2) constancy", True, slant.report.center, slant.report),
    ]
    return TheoremReport("Darboux helix slant iff constant |W|", hyps, checks)


def darboux_slant_equivalence_check(data, policy: TolerancePolicy = DEFAULT_POLICY) -> TheoremReport:
    _require(data, "nonnull")
    nn = non_normed_darboux_check(data, policy)
    hyps = _common_hypotheses(data, policy) + [("non-normed Darboux helix", nn.constant)]
    slant = slant_helix_check(data, policy)
    dh, err = _safe(darboux_helix_check, data, policy)
    if err:
        checks = [Check("slant helix iff Darboux helix", False, detail=err)]
    else:
        checks = [Check("slant helix iff Darboux helix", slant.constant == dh.constant,
                        detail=f"slant={slant.constant} darboux={dh.constant}")]
    return TheoremReport("slant helix iff Darboux helix", hyps, checks)


# null definitions


def null_helix_check(data, policy: TolerancePolicy = DEFAULT_POLICY) -> HelixVerdict:
    _require(data, "null")
    return _verdict("null helix", data.pairings[:, 0], data, policy)


def null_slant_check(data, i: int, policy: TolerancePolicy = DEFAULT_POLICY) -> HelixVerdict:
    _require(data, "null")
    if i not in (2, 3):
        raise ValueError("null slant helices pair the gradient with V2 or V3")
    return _verdict(f"null V{i}-slant helix", data.pairings[:, i - 1], data, policy)


def null_darboux_check(data, policy: TolerancePolicy = DEFAULT_POLICY) -> HelixVerdict:
    _require(data, "null")
    return _verdict("null Darboux helix", minkowski_inner(data.grad, data.darboux()), data, policy)


def _null_axis_checks(data, policy, tol):
    ratio = detect_constancy(data.kappa / data.tau, policy)
    c = float(np.median(data.pairings[:, 0]))
    predicted = c * (-(data.tau / data.kappa)[:, None] * data.V1 + data.V2)
    residual = float(np.max(np.linalg.norm(data.grad - predicted, axis=-1)))
    return [
        Check("kappa/tau constant", ratio.is_constant, ratio.center, ratio),
        Check("axis residual", residual <= tol, residual, detail=f"c={c!r}"),
    ]


def null_helix_axis_check(data, policy: TolerancePolicy = DEFAULT_POLICY, tol=RESIDUAL_TOL) -> TheoremReport:
    _require(data, "null")
    helix = null_helix_check(data, policy)
    hyps = _common_hypotheses(data, policy, helix_excluded=False) + [("null helix", helix.holds)]
    return TheoremReport("null helix axis", hyps, _null_axis_checks(data, policy, tol))


def null_v2_slant_implies_helix_check(data, policy: TolerancePolicy = DEFAULT_POLICY,
                                      tol=RESIDUAL_TOL) -> TheoremReport:
    _require(data, "null")
    v2 = null_slant_check(data, 2, policy)
    hyps = _common_hypotheses(data, policy, helix_excluded=False) + [("null V2-slant helix", v2.holds)]
    helix = null_helix_check(data, policy)
    checks = [Check("null helix", helix.constant, helix.report.center, helix.report)]
    checks += _null_axis_checks(data, policy, tol)
    return TheoremReport("null V2-slant helix is null helix", hyps, checks)


def null_binormal_determinant_check(data, policy: TolerancePolicy = DEFAULT_POLICY,
                                    rel_tol=DETERMINANT_REL_TOL) -> TheoremReport:
    """Binormal determinant identity and its vanishing for null helices."""
    _require(data, "null")
    helix = null_helix_check(data, policy)
    v2 = null_slant_check(data, 2, policy)
    hyps = _common_hypotheses(data, policy, helix_excluded=False)
    hyps.append(("null helix or V2-slant helix", helix.holds or v2.holds))
    if data.trace is None:
        checks = [Check("determinant identity", False, detail="no frame jets available")]
        return TheoremReport("null binormal determinant", hyps, checks)
    det, closed, _ = determinant_identity(data.trace)
    rel = relative_sup_difference(det, closed)
    ratio = detect_constancy(data.kappa / data.tau, policy)
    vanish = float(np.max(np.abs(det)))
    checks = [
        Check("determinant identity", rel <= rel_tol or vanish <= policy.abs_tol, rel),
        Check("determinant vanishes", (not ratio.is_constant) or vanish <= policy.abs_tol, vanish,
              detail="kappa/tau constant" if ratio.is_constant else "kappa/tau not constant; not required"),
    ]
    return TheoremReport("null binormal determinant", hyps, checks)


def relative_sup_difference(a, b):
    """``max|a - b| / max|b|``; insensitive to isolated zeros of ``b``."""
    scale = float(np.max(np.abs(b)))
    diff = float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
    if scale == 0.0:
        return 0.0 if diff == 0.0 else float("inf")
    return diff / scale


def curvature_integrals(data, origin=0.0, tol=1e-10):
    """Running integrals of kappa and tau from ``origin`` to each sample."""
    if data.curvature_fn is None:
        raise PreconditionError("curvature integrals need a curvature function")
    k_int = cumulative_integral(lambda s: data.curvature_fn(s)[0], origin, data.s, tol)
    t_int = cumulative_integral(lambda s: data.curvature_fn(s)[1], origin, data.s, tol)
    return k_int, t_int


def null_normal_slant_axis_check(data, policy: TolerancePolicy = DEFAULT_POLICY,
                                 tol=RESIDUAL_TOL) -> TheoremReport:
    """V3-slant helix: curvature integral identity and axis formula.

    The two integration constants are fitted by least squares against the
    sampled components ``g(grad f, V2)`` and ``g(grad f, V1)``.
    """
    _require(data, "null")
    v3 = null_slant_check(data, 3, policy)
    hyps = _common_hypotheses(data, policy, helix_excluded=False, curvatures=False)
    hyps.append(("null V3-slant helix", v3.holds))
    c = v3.report.center
    ints, err = _safe(curvature_integrals, data)
    if err or c == 0.0:
        msg = err or "V3 pairing is zero"
        return TheoremReport("null V3-slant helix axis", hyps,
                             [Check("integral identity", False, detail=msg),
                              Check("axis residual", False, detail=msg)])
    k_int, t_int = ints
    p = data.pairings
    c1 = float(np.mean(p[:, 1] / c - t_int))
    c2 = float(np.mean(p[:, 0] / c - k_int))
    A = t_int + c1
    B = k_int + c2
    identity = float(np.max(np.abs(data.kappa * A + data.tau * B)))
    predicted = c * (A[:, None] * data.V1 + B[:, None] * data.V2 + data.V3)
    axis = float(np.max(np.linalg.norm(data.grad - predicted, axis=-1)))
    detail = f"c={c!r} fitted constants=({c1!r}, {c2!r})"
    return TheoremReport("null V3-slant helix axis", hyps, [
        Check("integral identity", identity <= tol, identity, detail=detail),
        Check("axis residual", axis <= tol, axis, detail=detail),
    ])


def null_normal_slant_exclusion_check(data, policy: TolerancePolicy = DEFAULT_POLICY) -> TheoremReport:
    """V3-slant helix with kappa > 0 is never a null helix; V2-slant iff tau = 0.

    The kappa = 0 branch cannot be reached because a Cartan frame needs
    kappa > 0, so the first part is checked in contrapositive form.
    """
    _require(data, "null")
    v3 = null_slant_check(data, 3, policy)
    hyps = _common_hypotheses(data, policy, helix_excluded=False, curvatures=False)
    hyps.append(("null V3-slant helix", v3.holds))
    hyps.append(("kappa > 0 everywhere", bool(np.min(data.kappa) > policy.abs_tol)))
    helix = null_helix_check(data, policy)
    v2 = null_slant_check(data, 2, policy)
    tau_zero = detect_constancy(data.tau, policy)
    tau_zero_ok = tau_zero.is_constant and not tau_zero.is_nonzero
    return TheoremReport("null V3-slant helix exclusions", hyps, [
        Check("not a null helix", not helix.constant, helix.report.center, helix.report,
              detail="kappa = 0 branch unreachable with a Cartan frame"),
        Check("V2-slant iff tau = 0", v2.constant == tau_zero_ok,
              detail=f"V2-slant={v2.constant} tau=0:{tau_zero_ok}"),
    ])


def null_darboux_normal_slant_check(data, policy: TolerancePolicy = DEFAULT_POLICY) -> TheoremReport:
    """Null Darboux helix: V3-slant iff ``kappa * tau`` is constant."""
    _require(data, "null")
    dh = null_darboux_check(data, policy)
    hyps = _common_hypotheses(data, policy, helix_excluded=False)
    hyps.append(("null Darboux helix", dh.holds))
    v3 = null_slant_check(data, 3, policy)
    prod = detect_constancy(data.kappa * data.tau, policy)
    return TheoremReport("null Darboux helix V3-slant iff constant kappa*tau", hyps, [
        Check("V3-slant iff kappa*tau constant", v3.constant == prod.is_constant,
              detail=f"V3-slant={v3.constant} kappa*tau const={prod.is_constant}"),
        Check("kappa*tau constancy", True, prod.center, prod),
        Check("g(grad f, V3) constancy", True, v3.report.center, v3.report,
              detail="" if v3.report.is_nonzero else "pairing is zero"),
    ])


NONNULL_DEFINITIONS = {
    "slant_helix": slant_helix_check,
    "darboux_helix": darboux_helix_check,
    "non_normed_darboux_helix": non_normed_darboux_check,
}

NULL_DEFINITIONS = {
    "null_helix": null_helix_check,
    "null_v2_slant_helix": lambda d, p=DEFAULT_POLICY: null_slant_check(d, 2, p),
    "null_v3_slant_helix": lambda d, p=DEFAULT_POLICY: null_slant_check(d, 3, p),
    "null_darboux_helix": null_darboux_check,
}

NONNULL_THEOREMS = {
    "darboux_normalization": darboux_normalization_check,
    "slant_helix_axis": slant_helix_axis_check,
    "slant_implies_darboux": slant_implies_darboux_check,
    "slant_curvature_system": slant_curvature_system_check,
    "darboux_slant_norm": darboux_slant_norm_check,
    "darboux_slant_equivalence": darboux_slant_equivalence_check,
}

NULL_THEOREMS = {
    "null_helix_axis": null_helix_axis_check,
    "null_v2_slant_implies_helix": null_v2_slant_implies_helix_check,
    "null_binormal_determinant": null_binormal_determinant_check,
    "null_normal_slant_axis": null_normal_slant_axis_check,
    "null_normal_slant_exclusions": null_normal_slant_exclusion_check,
    "null_darboux_normal_slant": null_darboux_normal_slant_check,
}
