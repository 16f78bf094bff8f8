"""Frenet frames of non-null curves and Cartan frames of null curves.

Frames are built in jet arithmetic from the curve's derivative jets, so the
frame vectors, curvature and torsion come with exact derivatives.  Those feed
the residual validators and the determinant identity for null curves.

Orientation conventions
-----------------------
Non-null: ``kappa > 0``, ``V2 = alpha'' / (eps2 kappa)`` and
``V3 = eps1 eps2 (V1 x V2)``; nothing is left free.

Null: ``kappa = sqrt(g(alpha'', alpha''))``, ``V3 = alpha'' / kappa`` and
``V2`` is the unique null vector with ``g(V1, V2) = 1``, ``g(V2, V3) = 0``.
Then ``V1 x V2 = orientation * V3`` where ``orientation`` is +1 or -1 and is
fixed by the curve; it is recorded on the frame.
"""

from dataclasses import dataclass

import numpy as np

from . import jet as J
from .curves import speed_squared
from .errors import (
    DegenerateAcceleration,
    DegenerateNormal,
    LightlikeDarboux,
    MixedCausality,
    NotNull,
    NotUnitSpeed,
)
from .jet import Jet
from .lorentz import flip_time, lorentz_cross, minkowski_inner
from .numerics import DEFAULT_POLICY, MIN_SAMPLES, TolerancePolicy

CURVE_ORDER = 6
FRAME_TOL = 1e-8


@dataclass(frozen=True)
class NonNullFrame:
    s: float
    V1: np.ndarray
    V2: np.ndarray
    V3: np.ndarray
    kappa: float
    tau: float
    eps1: int
    eps2: int
    eps3: int


@dataclass(frozen=True)
class NullCartanFrame:
    s: float
    V1: np.ndarray
    V2: np.ndarray
    V3: np.ndarray
    kappa: float
    tau: float
    orientation: int = 1


def _sign(x):
    return np.where(x < 0, -1.0, 1.0)


def _nonnull_jets(pos: Jet, tol):
    V1 = pos.derivative()
    acc = V1.derivative()
    g11 = minkowski_inner(V1, V1).value
    if np.any(np.abs(np.abs(g11) - 1.0) > tol):
        worst = float(np.max(np.abs(np.abs(g11) - 1.0)))
        raise NotUnitSpeed(f"|g(alpha', alpha')| deviates from 1 by {worst:.3g}")
    g22 = minkowski_inner(acc, acc)
    if np.any(np.abs(g22.value) <= tol):
        raise DegenerateNormal("g(alpha'', alpha'') vanishes: geodesic or lightlike acceleration")
    eps1 = _sign(g11)
    eps2 = _sign(g22.value)
    kappa = J.sqrt(g22 * eps2)
    V2 = acc / (kappa * eps2)[..., None]
    V3 = lorentz_cross(V1, V2) * (eps1 * eps2)[..., None]
    tau = -minkowski_inner(V2.derivative(), V3)
    return V1, V2, V3, kappa, tau, eps1, eps2, -eps1 * eps2


def null_binormal(V1, V3, seed=None):
    """Unique null ``V2`` with ``g(V1, V2) = 1`` and ``g(V2, V3) = 0``.

    ``seed`` must pair positively with ``V1``; the default is ``V1`` with its
    timelike component flipped, which always does for a non-zero null ``V1``.
    """
    w = flip_time(V1) if seed is None else seed
    w = w - V3 * minkowski_inner(w, V3)[..., None]
    w = w / minkowski_inner(V1, w)[..., None]
    return w - V1 * (0.5 * minkowski_inner(w, w))[..., None]


def _null_jets(pos: Jet, tol, seed=None):
    V1 = pos.derivative()
    acc = V1.derivative()
    g11 = minkowski_inner(V1, V1).value
    if np.any(np.abs(g11) > tol):
        raise NotNull(f"g(alpha', alpha') = {float(np.max(np.abs(g11))):.3g} is not null")
    g22 = minkowski_inner(acc, acc)
    if np.any(g22.value <= tol):
        raise DegenerateAcceleration("g(alpha'', alpha'') must be positive for a Cartan frame")
    kappa = J.sqrt(g22)
    V3 = acc / kappa[..., None]
    V2 = null_binormal(V1, V3, seed)
    tau = minkowski_inner(V2.derivative(), V3)
    orientation = _sign(minkowski_inner(lorentz_cross(V1.truncate(0), V2.truncate(0)), V3.truncate(0)).value)
    return V1, V2, V3, kappa, tau, orientation


def frenet_nonnull(c, s: float, tol: float = FRAME_TOL) -> NonNullFrame:
    pos = c.jets(np.atleast_1d(float(s)), 3)
    V1, V2, V3, k, t, e1, e2, e3 = _nonnull_jets(pos, tol)
    return NonNullFrame(float(s), V1.value[0], V2.value[0], V3.value[0],
                        float(k.value[0]), float(t.value[0]), int(e1[0]), int(e2[0]), int(e3[0]))


def cartan_null(c, s: float, tol: float = FRAME_TOL) -> NullCartanFrame:
    pos = c.jets(np.atleast_1d(float(s)), 3)
    V1, V2, V3, k, t, o = _null_jets(pos, tol)
    return NullCartanFrame(float(s), V1.value[0], V2.value[0], V3.value[0],
                           float(k.value[0]), float(t.value[0]), int(o[0]))


def darboux_nonnull(fr):
    return fr.tau * np.asarray(fr.V1) - fr.kappa * np.asarray(fr.V3)


def darboux_null(fr):
    return fr.tau * np.asarray(fr.V1) - fr.kappa * np.asarray(fr.V2)


def darboux_norm_sq(kappa, tau, eps1, eps3):
    """``eps3 kappa^2 + eps1 tau^2``, i.e. ``g(W, W)`` for a non-null frame."""
    return eps3 * np.square(kappa) + eps1 * np.square(tau)


def unit_darboux(fr: NonNullFrame, tol: float = FRAME_TOL):
    q = darboux_norm_sq(fr.kappa, fr.tau, fr.eps1, fr.eps3)
    if abs(q) <= tol:
        raise LightlikeDarboux("Darboux vector is null; its normalization is undefined")
    return darboux_nonnull(fr) / np.sqrt(abs(q))


@dataclass
class FrameTrace:
    """Frames on a sample grid together with their derivative jets.

    ``V1, V2, V3`` are jets of shape ``(N, 3)``; ``kappa`` and ``tau`` are
    jets of shape ``(N,)``.  For null traces ``eps`` is ``(0, 0, 1)``.
    """

    kind: str
    s: np.ndarray
    position: np.ndarray
    V1: Jet
    V2: Jet
    V3: Jet
    kappa: Jet
    tau: Jet
    eps: tuple
    orientation: int = 1
    curve: object = None

    def __len__(self):
        return len(self.s)

    @property
    def frames(self):
        return np.stack([self.V1.value, self.V2.value, self.V3.value], axis=1)

    @property
    def samples(self):
        out = []
        for k, s in enumerate(self.s):
            if self.kind == "nonnull":
                out.append(NonNullFrame(float(s), self.V1.value[k], self.V2.value[k], self.V3.value[k],
                                        float(self.kappa.value[k]), float(self.tau.value[k]), *self.eps))
            else:
                out.append(NullCartanFrame(float(s), self.V1.value[k], self.V2.value[k], self.V3.value[k],
                                           float(self.kappa.value[k]), float(self.tau.value[k]),
                                           self.orientation))
        return out

    def darboux(self):
        k = self.kappa.value[:, None]
        t = self.tau.value[:, None]
        if self.kind == "nonnull":
            return t * self.V1.value - k * self.V3.value
        return t * self.V1.value - k * self.V2.value

    def curvatures_at(self, s):
        """``(kappa, tau)`` at arbitrary parameters, rebuilt from the curve."""
        if self.curve is None:
            raise ValueError("trace has no curve to re-evaluate")
        sub = build_trace(self.curve, np.atleast_1d(np.asarray(s, float)), order=3, kind=self.kind)
        return sub.kappa.value, sub.tau.value


def detect_kind(c, s, tol=1e-9):
    q = speed_squared(c, s)
    null = np.abs(q) <= tol
    if np.all(null):
        return "null"
    if np.any(null) or (np.any(q > 0) and np.any(q < 0)):
        raise MixedCausality("curve changes causal character on the sample grid")
    return "nonnull"


def build_trace(c, s, order=CURVE_ORDER, kind=None, tol=FRAME_TOL, null_tol=1e-9):
    s = np.asarray(s, dtype=float)
    kind = kind or detect_kind(c, s, null_tol)
    pos = c.jets(s, order)
    if kind == "nonnull":
        V1, V2, V3, k, t, e1, e2, e3 = _nonnull_jets(pos, tol)
        eps = {(int(a), int(b), int(d)) for a, b, d in zip(e1, e2, e3)}
        if len(eps) != 1:
            raise MixedCausality("frame causal characters change along the curve")
        return FrameTrace("nonnull", s, pos.value, V1, V2, V3, k, t, eps.pop(), 1, c)
    V1, V2, V3, k, t, o = _null_jets(pos, tol)
    if len(set(o.tolist())) != 1:
        raise MixedCausality("Cartan frame orientation changes along the curve")
    return FrameTrace("null", s, pos.value, V1, V2, V3, k, t, (0, 0, 1), int(o[0]), c)


def frame_trace(c, policy: TolerancePolicy = DEFAULT_POLICY, n_samples=None) -> FrameTrace:
    """Frames on the curve's sample grid, kind detected from the speed."""
    s = c.grid(n_samples)
    if len(s) < MIN_SAMPLES:
        raise ValueError(f"a trace needs at least {MIN_SAMPLES} samples")
    return build_trace(c, s)


def sign_flips(tr: FrameTrace) -> int:
    """Adjacent samples whose frame vectors point in opposite directions.

    Uses the Euclidean dot product: two future-directed null vectors always
    have a negative Lorentzian product, so the metric cannot detect a flip.
    """
    flips = 0
    for vec in (tr.V1, tr.V2, tr.V3):
        v = vec.value
        flips += int(np.sum(np.einsum("ni,ni->n", v[:-1], v[1:]) <= 0))
    return flips


def _rhs(tr: FrameTrace):
    V1, V2, V3 = tr.V1.value, tr.V2.value, tr.V3.value
    k = tr.kappa.value[:, None]
    t = tr.tau.value[:, None]
    if tr.kind == "nonnull":
        e1, e2, e3 = tr.eps
        return (e2 * k * V2, -e1 * k * V1 - e3 * t * V3, e2 * t * V2)
    return (k * V3, t * V3, -t * V1 - k * V2)


def _derivs(tr: FrameTrace):
    return tuple(v.derivative().value for v in (tr.V1, tr.V2, tr.V3))


def frame_ode_residual(tr: FrameTrace) -> float:
    """Largest mismatch between frame derivatives and the structure equations."""
    if len(tr) < MIN_SAMPLES:
        raise ValueError(f"a trace needs at least {MIN_SAMPLES} samples")
    return max(float(np.max(np.linalg.norm(d - r, axis=-1))) for d, r in zip(_derivs(tr), _rhs(tr)))


def darboux_rotation_residual(tr: FrameTrace) -> float:
    """Largest mismatch in ``V_i' = W x V_i`` (times the null orientation)."""
    if len(tr) < MIN_SAMPLES:
        raise ValueError(f"a trace needs at least {MIN_SAMPLES} samples")
    W = tr.darboux()
    o = tr.orientation
    out = 0.0
    for d, v in zip(_derivs(tr), (tr.V1, tr.V2, tr.V3)):
        out = max(out, float(np.max(np.linalg.norm(d - o * lorentz_cross(W, v.value), axis=-1))))
    return out


def orthonormality_defect(tr: FrameTrace) -> float:
    """Max deviation of the frame Gram matrix from its defining values."""
    F = tr.frames
    gram = np.einsum("nik,njk->nij", F * np.array([-1.0, 1.0, 1.0]), F)
    if tr.kind == "nonnull":
        target = np.diag(np.asarray(tr.eps, float))
    else:
        target = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    return float(np.max(np.abs(gram - target)))


def determinant_identity(tr: FrameTrace):
    """Binormal determinant of a null trace and its curvature closed form.

    Returns ``(det, closed, frame_volume)`` where ``det`` is the determinant
    of ``(V2', V2'', V2''')`` expressed in the Cartan frame basis (the
    coordinate determinant divided by ``det[V1; V2; V3]``) and ``closed`` is
    ``tau^5 (kappa/tau)' = tau^3 (kappa' tau - kappa tau')``.
    """
    if tr.kind != "null":
        raise ValueError("determinant identity applies to null traces")
    if tr.V2.order < 3 or tr.tau.order < 1:
        raise ValueError("trace jets are too short; build it with curve order >= 5")
    d1 = tr.V2.derivative(1).value
    d2 = tr.V2.derivative(2).value
    d3 = tr.V2.derivative(3).value
    coord = np.linalg.det(np.stack([d1, d2, d3], axis=-2))
    volume = np.linalg.det(tr.frames)
    k, kd = tr.kappa.value, tr.kappa.derivative().value
    t, td = tr.tau.value, tr.tau.derivative().value
    closed = t**3 * (kd * t - k * td)
    return coord / volume, closed, volume

