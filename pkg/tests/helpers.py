"""Seeded random generators shared by the test modules."""

import numpy as np

from eikhelix.curves import ArcLengthCurve, CurveSpec, NullLiftCurve, speed_squared
from eikhelix.errors import EikHelixError
from eikhelix.frames import build_trace
from eikhelix.lorentz import minkowski_inner
from eikhelix.expr import parse

_FUNCS = ["sin({a}*s + {b})", "cos({a}*s + {b})", "exp({c}*s)", "sqrt(1 + {d}*s^2)",
          "log(2 + {d}*s^2)", "tanh({a}*s)", "s^{k}", "cosh({c}*s)", "1/(2 + s^2)"]


def _coef(rng, lo, hi):
    return repr(round(float(rng.uniform(lo, hi)), 6))


def random_term(rng):
    t = _FUNCS[rng.integers(len(_FUNCS))]
    return t.format(a=_coef(rng, 0.3, 1.5), b=_coef(rng, -1, 1), c=_coef(rng, -0.8, 0.8),
                    d=_coef(rng, 0.1, 1.0), k=int(rng.integers(1, 4)))


def random_expression(rng):
    """A smooth univariate expression in ``s``, finite on ``[-1, 1]``."""
    terms = [f"{_coef(rng, -2, 2)}*{random_term(rng)}" for _ in range(rng.integers(1, 4))]
    if rng.random() < 0.4:
        terms.append(f"{random_term(rng)}*{random_term(rng)}")
    return " + ".join(terms)


def _poly(rng, degree, scale):
    coefs = [_coef(rng, -scale, scale) for _ in range(degree)]
    return " + ".join(f"{c}*s^{k + 1}" for k, c in enumerate(coefs))


def random_nonnull_curve(rng, timelike=False, max_tries=200):
    """Arc-length curve with fixed causal character and non-degenerate normal."""
    for _ in range(max_tries):
        w = _coef(rng, 0.7, 1.4)
        if timelike:
            r = _coef(rng, 0.3, 0.8)
            x = f"{_coef(rng, 1.5, 2.5)}*s + {_poly(rng, 3, 0.05)}"
            y = f"{r}*cos({w}*s) + {_poly(rng, 2, 0.1)}"
            z = f"{r}*sin({w}*s) + {_poly(rng, 3, 0.1)}"
        else:
            r = _coef(rng, 1.0, 1.5)
            x = f"{_coef(rng, 0.1, 0.3)}*sin({_coef(rng, 0.5, 1.5)}*s) + {_poly(rng, 2, 0.1)}"
            y = f"{r}*cos({w}*s) + {_poly(rng, 2, 0.1)}"
            z = f"{r}*sin({w}*s) + {_poly(rng, 3, 0.1)}"
        base = CurveSpec.from_text(x, y, z, domain=(-1.0, 1.0), n_samples=32)
        q = speed_squared(base, np.linspace(-1, 1, 401))
        if (timelike and np.max(q) > -0.05) or (not timelike and np.min(q) < 0.05):
            continue
        try:
            curve = ArcLengthCurve(base)
            tr = build_trace(curve, curve.grid())
        except EikHelixError:
            continue
        acc = tr.V1.derivative().value
        if np.min(np.abs(minkowski_inner(acc, acc))) < 1e-2:
            continue
        return curve, tr
    raise RuntimeError("no admissible curve found")


def random_null_curve(rng, max_tries=200):
    """``(integral sqrt(y'^2 + z'^2), y, z)`` with a curved planar shadow."""
    for _ in range(max_tries):
        y = f"s + {_poly(rng, 3, 0.4)} + {_coef(rng, 0.2, 0.6)}*sin(s)"
        z = f"{_coef(rng, 0.3, 0.8)}*s^2 + {_poly(rng, 3, 0.2)}"
        curve = NullLiftCurve(parse(y), parse(z), domain=(-1.0, 1.0), n_samples=32)
        try:
            tr = build_trace(curve, curve.grid())
        except EikHelixError:
            continue
        if np.min(tr.kappa.value) < 0.1 or np.min(np.abs(tr.tau.value)) < 1e-3:
            continue
        return curve, tr
    raise RuntimeError("no admissible null curve found")
