"""Truncated Taylor series arithmetic.

A :class:`Jet` holds normalized Taylor coefficients ``c[..., k] = f^(k)(t0) / k!``
along its last axis.  Leading axes are batch (and vector component) axes, so a
whole sample grid of 3-vectors is a single jet of shape ``(N, 3)``.

Arithmetic is exact up to floating point rounding: there is no truncation error
in the coefficients that are kept.

The elementary functions at module level accept jets and plain floats/arrays
alike, which lets the expression evaluator and the geometry code stay generic.
"""

from math import factorial

import numpy as np

from .errors import DomainError

__all__ = [
    "Jet", "sqrt", "exp", "log", "sin", "cos", "sinh", "cosh", "tanh",
    "absolute", "power", "stack", "compose",
]


def _cauchy(a, b):
    k = a.shape[-1]
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.empty(shape)
    for n in range(k):
        out[..., n] = np.sum(a[..., : n + 1] * b[..., n::-1], axis=-1)
    return out


class Jet:
    """Value and derivatives up to a fixed order, in Taylor-coefficient form."""

    __slots__ = ("c",)
    __array_ufunc__ = None  # make ndarray (op) Jet defer to Jet's reflected ops

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)
        if self.c.ndim == 0:
            raise ValueError("a Jet needs at least one coefficient axis")

    @classmethod
    def variable(cls, x, order):
        """Independent variable ``t`` expanded at ``x``."""
        x = np.asarray(x, dtype=float)
        c = np.zeros(x.shape + (order + 1,))
        c[..., 0] = x
        if order >= 1:
            c[..., 1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, x, order):
        x = np.asarray(x, dtype=float)
        c = np.zeros(x.shape + (order + 1,))
        c[..., 0] = x
        return cls(c)

    @classmethod
    def from_derivatives(cls, d):
        d = np.asarray(d, dtype=float)
        k = np.arange(d.shape[-1])
        return cls(d / np.array([factorial(int(i)) for i in k]))

    @property
    def order(self):
        return self.c.shape[-1] - 1

    @property
    def shape(self):
        return self.c.shape[:-1]

    @property
    def value(self):
        return self.c[..., 0]

    @property
    def d(self):
        """Derivatives ``f, f', f'', ...`` (not Taylor coefficients)."""
        fact = np.array([factorial(k) for k in range(self.order + 1)], dtype=float)
        return self.c * fact

    def derivative(self, times=1):
        c = self.c
        for _ in range(times):
            if c.shape[-1] < 2:
                raise ValueError("cannot differentiate a jet of order 0")
            c = c[..., 1:] * np.arange(1, c.shape[-1])
        return Jet(c)

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend a jet of order {self.order} to {order}")
        return Jet(self.c[..., : order + 1])

    def __getitem__(self, key):
        if not isinstance(key, tuple):
            key = (key,)
        return Jet(self.c[key + (slice(None),)])

    def __len__(self):
        return self.c.shape[0]

    def __repr__(self):
        return f"Jet(order={self.order}, shape={self.shape})"

    # arithmetic

    def _match(self, other):
        if isinstance(other, Jet):
            k = min(self.order, other.order)
            return self.c[..., : k + 1], other.c[..., : k + 1]
        other = np.asarray(other, dtype=float)
        oc = np.zeros(other.shape + (self.order + 1,))
        oc[..., 0] = other
        return self.c, oc

    def __add__(self, other):
        a, b = self._match(other)
        return Jet(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._match(other)
        return Jet(a - b)

    def __rsub__(self, other):
        a, b = self._match(other)
        return Jet(b - a)

    def __neg__(self):
        return Jet(-self.c)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self._match(other)
            return Jet(_cauchy(a, b))
        other = np.asarray(other, dtype=float)
        return Jet(self.c * other[..., None])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            a, b = self._match(other)
            return Jet(a) * _reciprocal(b)
        other = np.asarray(other, dtype=float)
        if np.any(other == 0):
            raise DomainError("division by zero")
        return Jet(self.c / other[..., None])

    def __rtruediv__(self, other):
        a, b = self._match(other)
        return Jet(b) * _reciprocal(a)

    def __pow__(self, p):
        return power(self, p)

    def __rpow__(self, base):
        return exp(self * log(np.asarray(base, dtype=float)))


def _reciprocal(b):
    b0 = b[..., 0]
    if np.any(b0 == 0):
        raise DomainError("division by zero")
    q = np.zeros_like(b)
    q[..., 0] = 1.0 / b0
    for n in range(1, b.shape[-1]):
        q[..., n] = -np.sum(b[..., 1 : n + 1] * q[..., n - 1 :: -1], axis=-1) / b0
    return Jet(q)


def _float(x):
    return np.asarray(x, dtype=float)


def sqrt(x):
    if not isinstance(x, Jet):
        x = _float(x)
        if np.any(x < 0):
            raise DomainError("sqrt of a negative number")
        return np.sqrt(x)
    a = x.c
    a0 = a[..., 0]
    if np.any(a0 < 0):
        raise DomainError("sqrt of a negative number")
    if x.order > 0 and np.any(a0 == 0):
        raise DomainError("sqrt is not differentiable at 0")
    r = np.zeros_like(a)
    r[..., 0] = np.sqrt(a0)
    for n in range(1, a.shape[-1]):
        acc = a[..., n].copy()
        if n >= 2:
            acc -= np.sum(r[..., 1:n] * r[..., n - 1 : 0 : -1], axis=-1)
        r[..., n] = acc / (2.0 * r[..., 0])
    return Jet(r)


def exp(x):
    if not isinstance(x, Jet):
        return np.exp(_float(x))
    a = x.c
    e = np.zeros_like(a)
    e[..., 0] = np.exp(a[..., 0])
    for n in range(1, a.shape[-1]):
        k = np.arange(1, n + 1)
        e[..., n] = np.sum(k * a[..., 1 : n + 1] * e[..., n - 1 :: -1], axis=-1) / n
    return Jet(e)


def log(x):
    if not isinstance(x, Jet):
        x = _float(x)
        if np.any(x <= 0):
            raise DomainError("log of a non-positive number")
        return np.log(x)
    a = x.c
    a0 = a[..., 0]
    if np.any(a0 <= 0):
        raise DomainError("log of a non-positive number")
    r = np.zeros_like(a)
    r[..., 0] = np.log(a0)
    for n in range(1, a.shape[-1]):
        acc = a[..., n].copy()
        if n >= 2:
            k = np.arange(1, n)
            acc -= np.sum(k * r[..., 1:n] * a[..., n - 1 : 0 : -1], axis=-1) / n
        r[..., n] = acc / a0
    return Jet(r)


def _sincos(a, hyperbolic):
    s = np.zeros_like(a)
    c = np.zeros_like(a)
    if hyperbolic:
        s[..., 0], c[..., 0] = np.sinh(a[..., 0]), np.cosh(a[..., 0])
    else:
        s[..., 0], c[..., 0] = np.sin(a[..., 0]), np.cos(a[..., 0])
    sign = 1.0 if hyperbolic else -1.0
    for n in range(1, a.shape[-1]):
        k = np.arange(1, n + 1)
        ka = k * a[..., 1 : n + 1]
        s[..., n] = np.sum(ka * c[..., n - 1 :: -1], axis=-1) / n
        c[..., n] = sign * np.sum(ka * s[..., n - 1 :: -1], axis=-1) / n
    return Jet(s), Jet(c)


def sin(x):
    if not isinstance(x, Jet):
        return np.sin(_float(x))
    return _sincos(x.c, False)[0]


def cos(x):
    if not isinstance(x, Jet):
        return np.cos(_float(x))
    return _sincos(x.c, False)[1]


def sinh(x):
    if not isinstance(x, Jet):
        return np.sinh(_float(x))
    return _sincos(x.c, True)[0]


def cosh(x):
    if not isinstance(x, Jet):
        return np.cosh(_float(x))
    return _sincos(x.c, True)[1]


def tanh(x):
    if not isinstance(x, Jet):
        return np.tanh(_float(x))
    s, c = _sincos(x.c, True)
    return s / c


def absolute(x):
    """``|x|``; for jets the sign of the value decides the branch."""
    if not isinstance(x, Jet):
        return np.abs(_float(x))
    sign = np.where(x.value < 0, -1.0, 1.0)
    return x * sign


def power(x, p):
    """``x ** p`` with integer exponents handled by repeated multiplication."""
    if isinstance(p, Jet):
        return exp(p * log(x))
    p_arr = np.asarray(p, dtype=float)
    if p_arr.ndim == 0 and float(p_arr).is_integer():
        n = int(p_arr)
        if not isinstance(x, Jet):
            x = _float(x)
            if n < 0 and np.any(x == 0):
                raise DomainError("zero raised to a negative power")
            return x ** float(n)
        if n == 0:
            return Jet.constant(np.ones(x.shape), x.order)
        result = _int_power(x, abs(n))
        return 1.0 / result if n < 0 else result
    if not isinstance(x, Jet):
        x = _float(x)
        if np.any(x < 0) or (np.any(x == 0) and np.any(p_arr < 0)):
            raise DomainError("non-integer power of a non-positive number")
        return x ** p_arr
    a = x.c
    a0 = a[..., 0]
    if np.any(a0 <= 0):
        raise DomainError("non-integer power of a non-positive number")
    b = np.zeros(np.broadcast_shapes(a.shape, p_arr.shape + (1,)))
    b[..., 0] = a0 ** p_arr
    for n in range(1, a.shape[-1]):
        k = np.arange(1, n + 1)
        w = k * p_arr[..., None] - (n - k)
        b[..., n] = np.sum(w * a[..., 1 : n + 1] * b[..., n - 1 :: -1], axis=-1) / (n * a0)
    return Jet(b)


def _int_power(x, n):
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


def stack(items, axis=-1):
    """Stack jets (or arrays) along a new batch axis."""
    if any(isinstance(i, Jet) for i in items):
        order = min(i.order for i in items if isinstance(i, Jet))
        coeffs = []
        for i in items:
            if isinstance(i, Jet):
                coeffs.append(i.c[..., : order + 1])
            else:
                coeffs.append(Jet.constant(i, order).c)
        coeffs = np.broadcast_arrays(*coeffs)
        ax = axis - 1 if axis < 0 else axis
        return Jet(np.stack(coeffs, axis=ax))
    return np.stack(np.broadcast_arrays(*[np.asarray(i, float) for i in items]), axis=axis)


def compose(outer, inner):
    """Series composition ``outer(t0 + inner)`` where ``inner`` has zero value.

    ``outer`` is a jet in ``t`` expanded at ``t0`` whose batch shape broadcasts
    against ``inner``; the result has the order of ``inner``.
    """
    if np.any(inner.value != 0):
        raise ValueError("inner series must vanish at the expansion point")
    k = inner.order
    oc = outer.c
    result = Jet.constant(oc[..., min(k, outer.order)], k)
    for j in range(min(k, outer.order) - 1, -1, -1):
        result = result * inner + oc[..., j]
    return result
