"""

Truncated power series with numpy coefficients.

A series is an array whose first axis is the order: s[k] is the
coefficient of t**k. Trailing axes are carried along, so a curve in C^3
is an array of shape (order + 1, 3). Products broadcast a scalar series
against a vector series.

"""

import math

import numpy as np

__all__ = [
    "mul",
    "div",
    "power",
    "derivative",
    "compose",
    "taylor_to_derivatives",
    "derivatives_to_taylor",
    "dot",
    "cross",
]


def _length(n, *series):
    lengths = [len(s) for s in series]
    return min(lengths) if n is None else min(n, *lengths)


def _coef_array(a, b, n):
    shape = np.broadcast(a[0], b[0]).shape
    dtype = np.result_type(a, b)
    return np.zeros((n,) + shape, dtype=dtype)


def mul(a, b, n=None):
    a, b = np.asarray(a), np.asarray(b)
    n = _length(n, a, b)
    out = _coef_array(a, b, n)
    for k in range(n):
        for i in range(k + 1):
            out[k] = out[k] + a[i] * b[k - i]
    return out


def div(a, b, n=None):
    a, b = np.asarray(a), np.asarray(b)
    n = _length(n, a, b)
    out = _coef_array(a, b, n)
    for k in range(n):
        acc = a[k]
        for i in range(1, k + 1):
            acc = acc - b[i] * out[k - i]
        out[k] = acc / b[0]
    return out


def power(a, alpha, n=None, leading=None):
    """a**alpha; ``leading`` fixes the branch of a[0]**alpha."""
    a = np.asarray(a)
    n = len(a) if n is None else min(n, len(a))
    u0 = a[0] ** alpha if leading is None else leading
    out = np.zeros((n,) + np.shape(a[0]), dtype=np.result_type(a, u0))
    out[0] = u0
    for k in range(1, n):
        acc = 0
        for j in range(1, k + 1):
            acc = acc + ((alpha + 1) * j - k) * a[j] * out[k - j]
        out[k] = acc / (k * a[0])
    return out


def derivative(a):
    a = np.asarray(a)
    k = np.arange(1, len(a)).reshape((-1,) + (1,) * (a.ndim - 1))
    return a[1:] * k


def compose(g, d, n=None):
    """g(d(t)) for an inner series with d[0] == 0."""
    g, d = np.asarray(g), np.asarray(d)
    n = _length(n, g, d)
    out = np.zeros((n,) + g.shape[1:], dtype=np.result_type(g, d))
    term = np.zeros(n, dtype=d.dtype)
    term[0] = 1
    for k in range(n):
        out = out + term.reshape((-1,) + (1,) * (g.ndim - 1)) * g[k]
        term = mul(term, d, n)
    return out


def taylor_to_derivatives(a):
    a = np.asarray(a)
    f = np.array([math.factorial(k) for k in range(len(a))], dtype=float)
    return a * f.reshape((-1,) + (1,) * (a.ndim - 1))


def derivatives_to_taylor(a):
    a = np.asarray(a)
    f = np.array([math.factorial(k) for k in range(len(a))], dtype=float)
    return a / f.reshape((-1,) + (1,) * (a.ndim - 1))


def dot(a, b, n=None):
    """Componentwise product summed over the last axis."""
    return mul(a, b, n).sum(axis=-1)


def cross(a, b, n=None):
    a, b = np.asarray(a), np.asarray(b)
    return np.stack([
        mul(a[:, 1], b[:, 2], n) - mul(a[:, 2], b[:, 1], n),
        mul(a[:, 2], b[:, 0], n) - mul(a[:, 0], b[:, 2], n),
        mul(a[:, 0], b[:, 1], n) - mul(a[:, 1], b[:, 0], n),
    ], axis=-1)
