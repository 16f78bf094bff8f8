"""Parametric curves and scalar fields on R^3_1.

A curve is anything with a ``domain``, an ``n_samples`` count and a
``jets(s, order)`` method returning a :class:`~eikhelix.jet.Jet` of shape
``(N, 3)``.  Three concrete kinds exist:

* :class:`CurveSpec` - components given as expressions in ``s``;
* :class:`ArcLengthCurve` - a non-null curve re-parameterized to unit speed;
* :class:`NullLiftCurve` - the null curve ``(integral sqrt(y'^2 + z'^2), y, z)``.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from . import jet as J
from .errors import DomainError, MixedCausality, NullCurveError
from .expr import Expression, parse
from .jet import Jet
from .lorentz import METRIC, CausalCharacter, minkowski_inner, pseudo_norm
from .numerics import DEFAULT_POLICY, MAX_JET_ORDER, TolerancePolicy, detect_constancy

HESSIAN_GATE_TOL = 1e-9


def _component_jet(e: Expression, s, order):
    out = e(s=Jet.variable(s, order))
    if not isinstance(out, Jet):
        out = Jet.constant(np.broadcast_to(out, np.shape(s)), order)
    return out


class _Curve:
    domain: tuple
    n_samples: int

    def grid(self, n=None):
        n = self.n_samples if n is None else n
        return np.linspace(self.domain[0], self.domain[1], n)

    def _check_domain(self, s):
        lo, hi = self.domain
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        s = np.asarray(s, dtype=float)
        if np.any(s < lo - slack) or np.any(s > hi + slack):
            raise DomainError(f"parameter outside the curve domain [{lo}, {hi}]")
        return s


@dataclass(frozen=True)
class CurveSpec(_Curve):
    x: Expression
    y: Expression
    z: Expression
    domain: tuple = (-1.0, 1.0)
    n_samples: int = 128

    def __post_init__(self):
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError("curve domain must satisfy s_min < s_max")
        if self.n_samples < 8:
            raise ValueError("a curve needs at least 8 samples")
        for e in (self.x, self.y, self.z):
            if not e.variables <= {"s"}:
                raise ValueError(f"curve component {e.source!r} may only use s")

    @classmethod
    def from_text(cls, x, y, z, domain=(-1.0, 1.0), n_samples=128, params=None):
        comps = [parse(t, variables=("s",), constants=params) for t in (x, y, z)]
        return cls(*comps, domain=tuple(float(d) for d in domain), n_samples=int(n_samples))

    def jets(self, s, order):
        s = np.asarray(s, dtype=float)
        return J.stack([_component_jet(e, s, order) for e in (self.x, self.y, self.z)], axis=-1)


def eval_curve(c, s: float, order: int) -> list:
    """``[alpha(s), alpha'(s), ..., alpha^(order)(s)]`` as 3-vectors."""
    if order > MAX_JET_ORDER:
        from .errors import OrderError

        raise OrderError(f"order {order} exceeds the maximum {MAX_JET_ORDER}")
    s = c._check_domain(s)
    d = c.jets(np.atleast_1d(s), order).d[0]  # (3, order+1)
    return [d[:, k].copy() for k in range(order + 1)]


def speed_character(c, s: float, tol: float = 1e-9):
    """``(g(alpha', alpha'), causal character)`` at ``s``."""
    v = eval_curve(c, s, 1)[1]
    q = float(minkowski_inner(v, v))
    if abs(q) <= tol:
        return q, CausalCharacter.NULL
    return q, CausalCharacter.SPACELIKE if q > 0 else CausalCharacter.TIMELIKE


def speed_squared(c, s):
    v = c.jets(np.asarray(s, float), 1).derivative().value
    return minkowski_inner(v, v)


class _CumulativeTable:
    """Running integral of a positive rate, with exact partial segments.

    Composite Gauss-Legendre on a fixed partition; evaluation of the rate is
    vectorized over all nodes.
    """

    def __init__(self, rate, a, b, segments=256, nodes=8):
        self.rate = rate
        self.edges = np.linspace(a, b, segments + 1)
        self.x, self.w = np.polynomial.legendre.leggauss(nodes)
        lo, hi = self.edges[:-1], self.edges[1:]
        pieces = self._gl(lo, hi)
        self.cum = np.concatenate([[0.0], np.cumsum(pieces)])

    def _gl(self, lo, hi):
        half = 0.5 * (hi - lo)
        pts = 0.5 * (hi + lo)[:, None] + half[:, None] * self.x[None, :]
        vals = self.rate(pts.ravel()).reshape(pts.shape)
        return half * (vals @ self.w)

    def at(self, t):
        t = np.asarray(t, dtype=float)
        j = np.clip(np.searchsorted(self.edges, t, side="right") - 1, 0, len(self.edges) - 2)
        return self.cum[j] + self._gl(self.edges[j], t)

    def invert(self, target, max_iter=60):
        target = np.asarray(target, dtype=float)
        j = np.clip(np.searchsorted(self.cum, target, side="right") - 1, 0, len(self.edges) - 2)
        lo, hi = self.edges[j], self.edges[j + 1]
        frac = (target - self.cum[j]) / np.maximum(self.cum[j + 1] - self.cum[j], 1e-300)
        t = lo + frac * (hi - lo)
        for _ in range(max_iter):
            resid = self.cum[j] + self._gl(lo, t) - target
            step = resid / self.rate(t)
            t = np.clip(t - step, lo, hi)
            if np.all(np.abs(step) <= 1e-15 * max(1.0, float(np.max(np.abs(t))))):
                break
        return t


def _series_inverse_speed(vel, eps):
    """Jet of ``1/|alpha'|`` from a velocity jet and the speed sign."""
    q = minkowski_inner(vel, vel) * float(eps)
    return 1.0 / J.sqrt(q)


def _arc_parameter_series(w, order):
    """Taylor series of ``t(sigma) - t0`` solving ``dt/dsigma = w(t)``."""
    n = w.shape[0]
    delta = Jet(np.zeros((n, order + 1)))
    for k in range(1, order + 1):
        r = J.compose(w, delta)
        delta.c[:, k] = r.c[:, k - 1] / k
    return delta


class ArcLengthCurve(_Curve):
    """A non-null curve traversed at unit pseudo-speed.

    The arc-length table is used only to locate the original parameter of each
    sample; derivatives are exact series compositions, so the output speed is
    one to rounding error.
    """

    def __init__(self, base, tol=1e-9, segments=256):
        self.base = base
        t = base.grid(max(base.n_samples, 4 * segments))
        q = speed_squared(base, t)
        if np.any(np.abs(q) <= tol):
            raise NullCurveError("speed is null somewhere on the domain; cannot use arc length")
        if np.any(q > 0) and np.any(q < 0):
            raise MixedCausality("speed changes causal character on the domain")
        self.eps = 1 if q[0] > 0 else -1
        self.table = _CumulativeTable(
            lambda x: np.sqrt(np.abs(speed_squared(base, x))), *base.domain, segments=segments
        )
        self.length = float(self.table.cum[-1])
        self.domain = (0.0, self.length)
        self.n_samples = base.n_samples

    def original_parameter(self, sigma):
        return self.table.invert(sigma)

    def jets(self, sigma, order):
        sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
        t0 = self.original_parameter(sigma)
        pos = self.base.jets(t0, order + 1)
        w = _series_inverse_speed(pos.derivative(), self.eps)
        delta = _arc_parameter_series(w, order)
        return J.compose(pos, delta[..., None])


def reparameterize_arc_length(c, tol=1e-9) -> ArcLengthCurve:
    return ArcLengthCurve(c, tol=tol)


class NullLiftCurve(_Curve):
    """``(integral_{s_min}^s sqrt(y'^2 + z'^2), y(s), z(s))``, null by construction."""

    def __init__(self, y: Expression, z: Expression, domain=(-1.0, 1.0), n_samples=64):
        self.y, self.z = y, z
        self.domain = tuple(float(d) for d in domain)
        self.n_samples = n_samples
        self.table = _CumulativeTable(self._rate, *self.domain)

    @classmethod
    def from_text(cls, y, z, domain=(-1.0, 1.0), n_samples=64, params=None):
        return cls(parse(y, constants=params), parse(z, constants=params), domain, n_samples)

    def _planar(self, s, order):
        return J.stack([_component_jet(self.y, s, order), _component_jet(self.z, s, order)], axis=-1)

    def _rate(self, s):
        v = self._planar(np.asarray(s, float), 1).derivative().value
        return np.sqrt(np.sum(v * v, axis=-1))

    def jets(self, s, order):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        yz = self._planar(s, order + 1)
        vel = yz.derivative()
        rate = J.sqrt(vel[..., 0] * vel[..., 0] + vel[..., 1] * vel[..., 1])
        xc = np.zeros(s.shape + (order + 1,))
        xc[..., 0] = self.table.at(s)
        xc[..., 1:] = rate.c[..., :order] / np.arange(1, order + 1)
        return J.stack([Jet(xc), yz[..., 0], yz[..., 1]], axis=-1)


# scalar fields


class GradientConvention(enum.Enum):
    METRIC = "metric"
    COORDINATE = "coordinate"


@dataclass(frozen=True)
class ScalarFieldSpec:
    f: Expression
    convention: GradientConvention = GradientConvention.COORDINATE

    def __post_init__(self):
        if not self.f.variables <= {"x", "y", "z"}:
            raise ValueError(f"field {self.f.source!r} may only use x, y, z")

    @classmethod
    def from_text(cls, text, convention="coordinate", params=None):
        return cls(parse(text, variables=("x", "y", "z"), constants=params), GradientConvention(convention))

    def with_convention(self, convention):
        return ScalarFieldSpec(self.f, GradientConvention(convention))

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        out = self.f(x=p[..., 0], y=p[..., 1], z=p[..., 2])
        return np.broadcast_to(np.asarray(out, dtype=float), p.shape[:-1])


def _directional(field, p, direction, order):
    p = np.asarray(p, dtype=float)
    d = np.broadcast_to(np.asarray(direction, dtype=float), p.shape)
    comps = []
    for i in range(3):
        c = np.zeros(p.shape[:-1] + (order + 1,))
        c[..., 0] = p[..., i]
        c[..., 1] = d[..., i]
        comps.append(Jet(c))
    out = field.f(x=comps[0], y=comps[1], z=comps[2])
    if not isinstance(out, Jet):
        return np.zeros(p.shape[:-1] + (order + 1,))
    return np.broadcast_to(out.c, p.shape[:-1] + (order + 1,))


def partials(field, p):
    p = np.asarray(p, dtype=float)
    eye = np.eye(3)
    return np.stack([_directional(field, p, eye[i], 1)[..., 1] for i in range(3)], axis=-1)


def second_partials(field, p):
    p = np.asarray(p, dtype=float)
    eye = np.eye(3)
    h = np.zeros(p.shape[:-1] + (3, 3))
    for i in range(3):
        h[..., i, i] = 2.0 * _directional(field, p, eye[i], 2)[..., 2]
    for i in range(3):
        for j in range(i + 1, 3):
            both = 2.0 * _directional(field, p, eye[i] + eye[j], 2)[..., 2]
            h[..., i, j] = h[..., j, i] = 0.5 * (both - h[..., i, i] - h[..., j, j])
    return h


def gradient(field: ScalarFieldSpec, p):
    """Gradient under the field's convention.

    The metric gradient satisfies ``g(grad f, X) = df(X)``, which negates the
    timelike component relative to the coordinate gradient.
    """
    d = partials(field, p)
    if field.convention is GradientConvention.METRIC:
        return d * METRIC
    return d


def hessian(field: ScalarFieldSpec, p):
    """``H[i, j] = g(D_{e_i} grad f, e_j)`` with the flat coordinate derivative."""
    s = second_partials(field, p)
    if field.convention is GradientConvention.METRIC:
        return s
    return s * METRIC


def eikonal_check(field, curve, policy: TolerancePolicy = DEFAULT_POLICY):
    pos = curve.jets(curve.grid(), 0).value
    return detect_constancy(pseudo_norm(gradient(field, pos)), policy)


def parallel_gradient_check(field, region, tol: float = HESSIAN_GATE_TOL) -> bool:
    region = np.atleast_2d(np.asarray(region, dtype=float))
    if region.size == 0:
        raise ValueError("region must contain at least one point")
    return bool(np.max(np.abs(hessian(field, region))) <= tol)


@dataclass
class CurvePointData:
    s: float
    position: np.ndarray
    derivatives: list
    grad_f: np.ndarray
    hessian_f: np.ndarray = field(repr=False)


def curve_point_data(curve, fld, s, order=2) -> CurvePointData:
    d = eval_curve(curve, s, order)
    return CurvePointData(s=float(s), position=d[0], derivatives=d[1:],
                          grad_f=gradient(fld, d[0]), hessian_f=hessian(fld, d[0]))
