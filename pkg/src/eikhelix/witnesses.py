"""Synthetic curves with a parallel gradient field.

The two reference curves shipped with the package pair a field whose Hessian
does not vanish, so every characterization theorem is vacuous on them.  The
witnesses here fill the gap.  Curvatures are prescribed (or driven by a side
condition), and the frame equations are integrated together with the
components ``a_i`` of a constant vector ``G = sum a_i V_i``.  The field is the
linear function with coordinate gradient ``G``, so its Hessian is exactly
zero.

Integration uses classical fourth-order Runge-Kutta with a fixed step of at
most ``1e-3``; the drift of ``sum a_i V_i`` away from its initial value is
reported as the witness residual.
"""

from dataclasses import dataclass, field

import numpy as np

from .classifiers import FieldAlongCurve
from .curves import ScalarFieldSpec, hessian
from .expr import parse
from .jet import Jet
from .lorentz import lorentz_cross

MAX_STEP = 1e-3
N_SAMPLES = 64


def rk4(rhs, y0, s0, s1, n_samples=N_SAMPLES, max_step=MAX_STEP):
    """Fixed-step RK4 returning the state at ``n_samples`` evenly spaced points."""
    gaps = n_samples - 1
    per_gap = int(np.ceil((s1 - s0) / gaps / max_step))
    h = (s1 - s0) / (gaps * per_gap)
    y = np.asarray(y0, dtype=float)
    out = [y]
    s = s0
    for i in range(gaps):
        for _ in range(per_gap):
            k1 = rhs(s, y)
            k2 = rhs(s + h / 2, y + h / 2 * k1)
            k3 = rhs(s + h / 2, y + h / 2 * k2)
            k4 = rhs(s + h, y + h * k3)
            y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            s += h
        s = s0 + (s1 - s0) * (i + 1) / gaps
        out.append(y)
    return np.linspace(s0, s1, n_samples), np.array(out)


class _Curvature:
    """Prescribed curvature function with its first derivative."""

    def __init__(self, text, params=None):
        self.expr = parse(text, variables=("s",), constants=params)

    def __call__(self, s):
        out = self.expr(s=np.asarray(s, dtype=float))
        return np.broadcast_to(np.asarray(out, dtype=float), np.shape(s)).copy()

    def jet(self, s):
        out = self.expr(s=Jet.variable(np.asarray(s, dtype=float), 1))
        if not isinstance(out, Jet):
            return np.broadcast_to(out, np.shape(s)).astype(float), np.zeros(np.shape(s))
        return out.value, out.d[..., 1]


@dataclass
class Witness:
    name: str
    data: FieldAlongCurve
    field: ScalarFieldSpec
    residual: float
    expected: dict = field(default_factory=dict)
    notes: str = ""

    def to_dict(self):
        return {"name": self.name, "residual": self.residual, "expected": self.expected, "notes": self.notes}


def _linear_field(G):
    names = {"gx": float(G[0]), "gy": float(G[1]), "gz": float(G[2])}
    return ScalarFieldSpec.from_text("gx*x + gy*y + gz*z", "coordinate", params=names)


def _finish(name, kind, s, frames, a, pos, kappa, tau, dkappa, dtau, eps, orientation,
            curvature_fn, expected, notes="", extra_residual=0.0):
    grad = np.einsum("ni,nij->nj", a, frames)
    G = grad[0]
    drift = float(np.max(np.linalg.norm(grad - G, axis=-1)))
    fld = _linear_field(G)
    data = FieldAlongCurve(
        kind=kind, s=s, frames=frames, kappa=kappa, tau=tau, dkappa=dkappa, dtau=dtau,
        eps=eps, grad=grad, hessian_max=float(np.max(np.abs(hessian(fld, pos)))),
        orientation=orientation, curvature_fn=curvature_fn, label=name,
    )
    return Witness(name, data, fld, max(drift, extra_residual), expected, notes)


# non-null witnesses, causal characters (1, -1, 1)

NONNULL_EPS = (1, -1, 1)


def _nonnull_initial_frame():
    V1 = np.array([0.0, 1.0, 0.0])
    V2 = np.array([1.0, 0.0, 0.0])
    e1, e2, _ = NONNULL_EPS
    V3 = e1 * e2 * np.asarray(lorentz_cross(V1, V2))
    return V1, V2, V3


def _nonnull_rhs(kappa_of, tau_of, tau_rate=None):
    e1, e2, e3 = NONNULL_EPS

    def rhs(s, y):
        V1, V2, V3 = y[0:3], y[3:6], y[6:9]
        a1, a2, a3 = y[9:12]
        k = kappa_of(s)
        t = y[15] if tau_of is None else tau_of(s)
        out = np.empty_like(y)
        out[0:3] = e2 * k * V2
        out[3:6] = -e1 * k * V1 - e3 * t * V3
        out[6:9] = e2 * t * V2
        out[9] = e1 * k * a2
        out[10] = -e2 * (k * a1 + t * a3)
        out[11] = e3 * t * a2
        out[12:15] = V1
        if y.size > 15:
            out[15] = tau_rate(s, y, k, t)
        return out

    return rhs


def _nonnull_state(a0, extra=()):
    V1, V2, V3 = _nonnull_initial_frame()
    return np.concatenate([V1, V2, V3, a0, np.zeros(3), np.asarray(extra, float)])


def _split(Y):
    frames = Y[:, 0:9].reshape(-1, 3, 3)
    return frames, Y[:, 9:12], Y[:, 12:15]


def slant_invariant_witness(sigma=0.3, offset=0.1, domain=(0.0, 2.0), n_samples=N_SAMPLES) -> Witness:
    """Slant helix with constant invariant ``sigma`` that is not a helix.

    ``kappa = 1`` and ``tau = u / sqrt(1 - u^2)`` with ``u = sigma s + offset``.
    The torsion is also integrated from ``tau' = sigma (1 + tau^2)^(3/2)`` and
    compared with the closed form.
    """
    p = {"sg": sigma, "c0": offset}
    kappa = _Curvature("1", p)
    tau = _Curvature("(sg*s + c0) / sqrt(1 - (sg*s + c0)^2)", p)
    s0 = domain[0]
    u0 = sigma * s0 + offset
    a0 = [u0, sigma, -np.sqrt(1 - u0**2)]

    def tau_rate(s, y, k, t):
        return sigma * (1 + y[15] ** 2) ** 1.5

    rhs = _nonnull_rhs(kappa, tau, tau_rate)
    s, Y = rk4(rhs, _nonnull_state(a0, [tau(s0)]), domain[0], domain[1], n_samples)
    frames, a, pos = _split(Y)
    k, dk = kappa.jet(s)
    t, dt = tau.jet(s)
    tau_drift = float(np.max(np.abs(Y[:, 15] - t)))
    return _finish(
        "slant invariant", "nonnull", s, frames, a, pos, k, t, dk, dt, NONNULL_EPS, 1,
        lambda x: (kappa(x), tau(x)),
        {"slant_helix": True, "darboux_helix": True, "helix": False, "slant_invariant": sigma},
        "kappa = 1, tau = u/sqrt(1-u^2)", tau_drift,
    )


def darboux_norm_constant_witness(radius=1.0, omega=0.5, phase=0.3, domain=(0.0, 2.0),
                                  n_samples=N_SAMPLES) -> Witness:
    """Non-normed Darboux helix whose Darboux vector has constant length.

    ``kappa = R cos(omega s + phase)``, ``tau = R sin(omega s + phase)``, so the
    gradient component along V2 stays at ``omega`` and the curve is a slant
    helix.
    """
    p = {"R": radius, "w": omega, "ph": phase}
    kappa = _Curvature("R*cos(w*s + ph)", p)
    tau = _Curvature("R*sin(w*s + ph)", p)
    s0 = domain[0]
    a0 = [tau(s0) / radius, omega / radius, -kappa(s0) / radius]
    s, Y = rk4(_nonnull_rhs(kappa, tau), _nonnull_state(a0), domain[0], domain[1], n_samples)
    frames, a, pos = _split(Y)
    k, dk = kappa.jet(s)
    t, dt = tau.jet(s)
    return _finish(
        "constant Darboux length", "nonnull", s, frames, a, pos, k, t, dk, dt, NONNULL_EPS, 1,
        lambda x: (kappa(x), tau(x)),
        {"non_normed_darboux_helix": True, "darboux_norm_constant": True, "slant_helix": True},
        "kappa, tau on a circle of radius R",
    )


def darboux_norm_varying_witness(a0=(1.0, 0.4, -0.7), tau0=0.5, domain=(0.0, 2.0),
                                 n_samples=N_SAMPLES) -> Witness:
    """Non-normed Darboux helix whose Darboux vector changes length.

    ``kappa = 1 + 0.3 sin s`` is prescribed; the torsion follows
    ``tau' = eps1 eps3 a3 kappa' / a1`` which keeps ``g(grad f, W)`` fixed.
    """
    e1, _, e3 = NONNULL_EPS
    kappa = _Curvature("1 + 0.3*sin(s)")

    def tau_rate(s, y, k, t):
        _, dk = kappa.jet(s)
        return e1 * e3 * y[11] * dk / y[9]

    s, Y = rk4(_nonnull_rhs(kappa, None, tau_rate), _nonnull_state(a0, [tau0]),
               domain[0], domain[1], n_samples)
    frames, a, pos = _split(Y)
    k, dk = kappa.jet(s)
    t = Y[:, 15]
    dt = e1 * e3 * a[:, 2] * dk / a[:, 0]
    return _finish(
        "varying Darboux length", "nonnull", s, frames, a, pos, k, t, dk, dt, NONNULL_EPS, 1, None,
        {"non_normed_darboux_helix": True, "darboux_norm_constant": False, "slant_helix": False,
         "darboux_helix": False},
        "kappa = 1 + 0.3 sin s, tau driven by the Darboux side condition",
    )


# null witnesses


def _null_initial_frame():
    return np.array([1.0, 0.0, 1.0]), np.array([-0.5, 0.0, 0.5]), np.array([0.0, 1.0, 0.0])


def _null_rhs(kappa_of, tau_of, tau_rate=None):
    def rhs(s, y):
        V1, V2, V3 = y[0:3], y[3:6], y[6:9]
        a1, a2, a3 = y[9:12]
        k = kappa_of(s)
        t = y[15] if tau_of is None else tau_of(s)
        out = np.empty_like(y)
        out[0:3] = k * V3
        out[3:6] = t * V3
        out[6:9] = -t * V1 - k * V2
        out[9] = a3 * t
        out[10] = a3 * k
        out[11] = -(a1 * k + a2 * t)
        out[12:15] = V1
        if y.size > 15:
            out[15] = tau_rate(s, y, k, t)
        return out

    return rhs


def _null_state(a0, extra=()):
    V1, V2, V3 = _null_initial_frame()
    return np.concatenate([V1, V2, V3, a0, np.zeros(3), np.asarray(extra, float)])


def _null_orientation():
    V1, V2, V3 = _null_initial_frame()
    return int(np.sign(np.dot(np.asarray(lorentz_cross(V1, V2)) * [-1, 1, 1], V3)))


def null_normal_slant_witness(c=1.0, a2_0=2.0, tau0=-0.5, domain=(0.0, 2.0), n_samples=N_SAMPLES) -> Witness:
    """Null V3-slant helix with ``kappa = 1``.

    ``tau = tau0 (a2_0 / (a2_0 + c s))^2`` keeps ``a1 kappa + a2 tau = 0`` with
    ``a2 = a2_0 + c s``, so ``g(grad f, V3) = c`` while ``g(grad f, V1)`` grows.
    """
    p = {"c": c, "b": a2_0, "t0": tau0}
    kappa = _Curvature("1")
    tau = _Curvature("t0*(b/(b + c*s))^2", p)
    s0 = domain[0]
    a0 = [-(a2_0 + c * s0) * tau(s0), a2_0 + c * s0, c]
    s, Y = rk4(_null_rhs(kappa, tau), _null_state(a0), domain[0], domain[1], n_samples)
    frames, a, pos = _split(Y)
    k, dk = kappa.jet(s)
    t, dt = tau.jet(s)
    return _finish(
        "null V3-slant", "null", s, frames, a, pos, k, t, dk, dt, (0, 0, 1), _null_orientation(),
        lambda x: (kappa(x), tau(x)),
        {"null_v3_slant_helix": True, "null_helix": False, "null_v2_slant_helix": False},
        "kappa = 1, tau = t0 (b/(b + c s))^2",
    )


def null_darboux_product_constant_witness(c=1.0, k0=1.0, t0=-0.5, domain=(0.0, 2.0),
                                          n_samples=N_SAMPLES) -> Witness:
    """Null Darboux helix with ``kappa tau`` constant, hence V3-slant."""
    p = {"k0": k0, "t0": t0}
    kappa = _Curvature("k0*exp(s)", p)
    tau = _Curvature("t0*exp(-s)", p)
    s0 = domain[0]
    a0 = [-c * tau(s0), c * kappa(s0), c]
    s, Y = rk4(_null_rhs(kappa, tau), _null_state(a0), domain[0], domain[1], n_samples)
    frames, a, pos = _split(Y)
    k, dk = kappa.jet(s)
    t, dt = tau.jet(s)
    return _finish(
        "null Darboux, constant kappa*tau", "null", s, frames, a, pos, k, t, dk, dt, (0, 0, 1),
        _null_orientation(), lambda x: (kappa(x), tau(x)),
        {"null_darboux_helix": True, "kappa_tau_constant": True, "null_v3_slant_helix": True},
        "kappa = k0 e^s, tau = t0 e^-s",
    )


def null_darboux_product_varying_witness(a0=(0.3, 1.0, 0.5), tau0=-0.5, domain=(0.0, 2.0),
                                         n_samples=N_SAMPLES) -> Witness:
    """Null Darboux helix with ``kappa tau`` non-constant, hence not V3-slant.

    ``kappa = 1 + s/2`` is prescribed and ``tau' = a1 kappa' / a2`` holds
    ``a2 tau - a1 kappa`` fixed.
    """
    kappa = _Curvature("1 + 0.5*s")

    def tau_rate(s, y, k, t):
        return y[9] * 0.5 / y[10]

    s, Y = rk4(_null_rhs(kappa, None, tau_rate), _null_state(a0, [tau0]), domain[0], domain[1], n_samples)
    frames, a, pos = _split(Y)
    k, dk = kappa.jet(s)
    t = Y[:, 15]
    dt = a[:, 0] * dk / a[:, 1]
    return _finish(
        "null Darboux, varying kappa*tau", "null", s, frames, a, pos, k, t, dk, dt, (0, 0, 1),
        _null_orientation(), None,
        {"null_darboux_helix": True, "kappa_tau_constant": False, "null_v3_slant_helix": False},
        "kappa = 1 + s/2, tau driven by the Darboux side condition",
    )


ALL_WITNESSES = {
    "slant_invariant": slant_invariant_witness,
    "darboux_norm_constant": darboux_norm_constant_witness,
    "darboux_norm_varying": darboux_norm_varying_witness,
    "null_normal_slant": null_normal_slant_witness,
    "null_darboux_product_constant": null_darboux_product_constant_witness,
    "null_darboux_product_varying": null_darboux_product_varying_witness,
}
