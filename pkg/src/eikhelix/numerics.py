"""Derivatives, constancy detection and quadrature."""

from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import DomainError, InsufficientSamples, NonConvergence, OrderError
from .expr import Expression
from .jet import Jet

MAX_JET_ORDER = 6
MIN_SAMPLES = 8

__all__ = [
    "TolerancePolicy", "ConstancyReport", "DEFAULT_POLICY",
    "eval_jet", "finite_diff_oracle", "detect_constancy", "integrate",
    "cumulative_integral",
]


@dataclass(frozen=True)
class TolerancePolicy:
    abs_tol: float = 1e-7
    rel_tol: float = 1e-6

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")


DEFAULT_POLICY = TolerancePolicy()


@dataclass(frozen=True)
class ConstancyReport:
    n_samples: int
    center: float
    max_abs_dev: float
    scale: float
    is_constant: bool
    is_nonzero: bool

    def to_dict(self):
        return {
            "n_samples": self.n_samples,
            "center": self.center,
            "max_abs_dev": self.max_abs_dev,
            "scale": self.scale,
            "is_constant": self.is_constant,
            "is_nonzero": self.is_nonzero,
        }


def detect_constancy(samples, policy: TolerancePolicy = DEFAULT_POLICY) -> ConstancyReport:
    """Decide whether sampled values are constant.

    The center is the median, so a stray endpoint value cannot drag it; the
    spread is the largest absolute deviation from that median.
    """
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < MIN_SAMPLES:
        raise InsufficientSamples(f"need at least {MIN_SAMPLES} samples, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DomainError("non-finite sample in constancy check")
    center = float(np.median(x))
    dev = float(np.max(np.abs(x - center)))
    scale = max(abs(center), 1.0)
    return ConstancyReport(
        n_samples=int(x.size),
        center=center,
        max_abs_dev=dev,
        scale=scale,
        is_constant=bool(dev <= policy.abs_tol + policy.rel_tol * scale),
        is_nonzero=bool(abs(center) > policy.abs_tol),
    )


def _single_variable(e: Expression):
    if len(e.variables) > 1:
        raise ValueError(f"expression {e.source!r} is not univariate: {sorted(e.variables)}")
    return next(iter(e.variables), "s")


def eval_jet(e: Expression, at: float, order: int) -> Jet:
    """Value and first ``order`` derivatives of a univariate expression at ``at``."""
    if order > MAX_JET_ORDER:
        raise OrderError(f"order {order} exceeds the maximum {MAX_JET_ORDER}")
    if order < 0:
        raise ValueError("order must be non-negative")
    var = _single_variable(e)
    out = e(**{var: Jet.variable(float(at), order)})
    if not isinstance(out, Jet):
        out = Jet.constant(out, order)
    if not np.all(np.isfinite(out.c)):
        raise DomainError(f"{e.source!r} is not finite at {at}")
    return out


def _as_function(e):
    if isinstance(e, Expression):
        var = _single_variable(e)

        def f(x):
            x = np.asarray(x, dtype=float)
            return np.broadcast_to(np.asarray(e(**{var: x}), dtype=float), x.shape)

        return f
    return e


def _central_weights(k):
    """Fourth-order accurate central stencil for the k-th derivative."""
    m = 2 if k <= 2 else 3
    offsets = np.arange(-m, m + 1, dtype=float)
    A = np.vander(offsets, increasing=True).T
    rhs = np.zeros(2 * m + 1)
    rhs[k] = factorial(k)
    return offsets, np.linalg.solve(A, rhs)


_DEFAULT_STEP = {1: 5e-3, 2: 1e-2, 3: 2e-2, 4: 3e-2}


def finite_diff_oracle(e, at: float, k: int, h: float | None = None) -> float:
    """Central-difference estimate of the k-th derivative, one Richardson step.

    Used as an independent check on :func:`eval_jet`; it never touches jets.
    """
    if k not in _DEFAULT_STEP:
        raise ValueError("k must be 1, 2, 3 or 4")
    if h is None:
        h = _DEFAULT_STEP[k]
    if not h > 0:
        raise ValueError("h must be positive")
    f = _as_function(e)
    offsets, weights = _central_weights(k)

    def central(step):
        vals = np.asarray(f(at + offsets * step), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise DomainError(f"non-finite value near {at}")
        return float(np.dot(weights, vals)) / step**k

    coarse = central(h)
    fine = central(h / 2)
    return (16.0 * fine - coarse) / 15.0


def integrate(e, a: float, b: float, tol: float = 1e-10, max_subdivisions: int = 2**20) -> float:
    """Adaptive Simpson quadrature of ``e`` over ``[a, b]``.

    ``e`` is an :class:`Expression` or a vectorized callable.  Refinement runs
    breadth first so each sweep evaluates the integrand on one array.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if a == b:
        return 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    f = _as_function(e)

    n0 = 16
    edges = np.linspace(a, b, n0 + 1)
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    vals = np.asarray(f(np.concatenate([lo, mid, hi])), dtype=float)
    flo, fmid, fhi = vals[:n0], vals[n0 : 2 * n0], vals[2 * n0 :]
    whole = (hi - lo) / 6.0 * (flo + 4 * fmid + fhi)
    tols = np.full(n0, tol / n0)

    total = 0.0
    used = n0
    while lo.size:
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        fv = np.asarray(f(np.concatenate([lm, rm])), dtype=float)
        if not np.all(np.isfinite(fv)):
            raise DomainError("integrand is not finite on the interval")
        flm, frm = fv[: lo.size], fv[lo.size :]
        left = (mid - lo) / 6.0 * (flo + 4 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4 * frm + fhi)
        err = left + right - whole
        done = np.abs(err) <= 15.0 * tols
        total += float(np.sum((left + right + err / 15.0)[done]))
        keep = ~done
        if not keep.any():
            break
        used += int(keep.sum())
        if used > max_subdivisions:
            raise NonConvergence(f"adaptive Simpson exceeded {max_subdivisions} subdivisions")
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        flo, fmid, fhi = flo[keep], fmid[keep], fhi[keep]
        flm, frm = flm[keep], frm[keep]
        left, right, tk = left[keep], right[keep], tols[keep] / 2
        lo, hi, mid, flo, fhi, fmid, whole, tols = (
            np.concatenate([lo, mid]),
            np.concatenate([mid, hi]),
            np.concatenate([lm[keep], rm[keep]]),
            np.concatenate([flo, fmid]),
            np.concatenate([fmid, fhi]),
            np.concatenate([flm, frm]),
            np.concatenate([left, right]),
            np.concatenate([tk, tk]),
        )
    return sign * total


def cumulative_integral(e, origin: float, points, tol: float = 1e-10) -> np.ndarray:
    """``integral from origin to p`` for each sorted point ``p``."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 1 or np.any(np.diff(pts) <= 0):
        raise ValueError("points must be a strictly increasing 1-d array")
    pieces = [integrate(e, origin, pts[0], tol)]
    pieces += [integrate(e, x0, x1, tol) for x0, x1 in zip(pts[:-1], pts[1:])]
    return np.cumsum(pieces)
