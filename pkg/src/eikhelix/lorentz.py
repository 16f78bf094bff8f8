"""Flat Lorentzian geometry of R^3_1.

Coordinate 1 is the timelike one: ``g(a, b) = -a1 b1 + a2 b2 + a3 b3``.

Vectors are numpy arrays whose last axis has length 3, so a grid of vectors
is just an ``(N, 3)`` array.  The inner product and cross product also accept
:class:`~eikhelix.jet.Jet` vectors, which is how frame derivatives are
carried through the same formulas.
"""

import enum

import numpy as np

from .jet import Jet, stack

METRIC = np.array([-1.0, 1.0, 1.0])
DEFAULT_NULL_TOL = 1e-9


class CausalCharacter(enum.Enum):
    SPACELIKE = 1
    TIMELIKE = -1
    NULL = 0

    @property
    def epsilon(self) -> int:
        return self.value

    @classmethod
    def from_epsilon(cls, eps):
        return cls(int(eps))


def vec3(c1, c2, c3) -> np.ndarray:
    v = np.array([c1, c2, c3], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector components must be finite")
    return v


def _vec(v):
    return v if isinstance(v, Jet) else np.asarray(v, dtype=float)


def minkowski_inner(u, v):
    u, v = _vec(u), _vec(v)
    return -u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] + u[..., 2] * v[..., 2]


def lorentz_cross(u, v):
    """Cross product fixed by ``g(u x v, w) = -det[u; v; w]`` for every ``w``.

    Equivalently the Euclidean cross product with its last two components
    negated.
    """
    u, v = _vec(u), _vec(v)
    u1, u2, u3 = u[..., 0], u[..., 1], u[..., 2]
    v1, v2, v3 = v[..., 0], v[..., 1], v[..., 2]
    return stack([u2 * v3 - u3 * v2, -(u3 * v1 - u1 * v3), -(u1 * v2 - u2 * v1)], axis=-1)


def causal_character(v, tol: float = DEFAULT_NULL_TOL) -> CausalCharacter:
    if not tol > 0:
        raise ValueError("tol must be positive")
    q = float(minkowski_inner(np.asarray(v, float), np.asarray(v, float)))
    if abs(q) <= tol:
        return CausalCharacter.NULL
    return CausalCharacter.SPACELIKE if q > 0 else CausalCharacter.TIMELIKE


def pseudo_norm(v):
    """``sqrt(|g(v, v)|)``; zero exactly on null vectors."""
    v = np.asarray(v, dtype=float)
    return np.sqrt(np.abs(minkowski_inner(v, v)))


def det3(u, v, w):
    """Euclidean determinant of the rows ``u, v, w`` (batched)."""
    return np.linalg.det(np.stack(np.broadcast_arrays(u, v, w), axis=-2))


def flip_time(v):
    if isinstance(v, Jet):
        return stack([-v[..., 0], v[..., 1], v[..., 2]], axis=-1)
    v = np.asarray(v, dtype=float)
    return v * METRIC
