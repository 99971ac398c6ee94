"""Shared numeric helpers: canonical angles and error-free summation."""

import math

import numpy as np

TWO_PI = 2.0 * math.pi


def canonical_angle(theta):
    """Reduce angles to the single canonical branch [0, 2*pi)."""
    th = np.asarray(theta, dtype=float)
    out = np.mod(th, TWO_PI)
    # mod may round up to TWO_PI for inputs just below a multiple of it
    out = np.where(out >= TWO_PI, out - TWO_PI, out)
    if th.ndim == 0:
        return float(out)
    return out


def signed_gap(delta):
    """Reduce an angle difference to the symmetric branch (-pi, pi]."""
    d = np.mod(np.asarray(delta, dtype=float), TWO_PI)
    d = np.where(d > math.pi, d - TWO_PI, d)
    if np.ndim(delta) == 0:
        return float(d)
    return d


def exact_sum(values) -> float:
    """Sum of a real sequence with a single final rounding (Shewchuk)."""
    return math.fsum(np.asarray(values, dtype=float).tolist())


def exact_complex_sum(values) -> complex:
    v = np.asarray(values, dtype=complex)
    return complex(math.fsum(v.real.tolist()), math.fsum(v.imag.tolist()))


def compensated_cumsum(values) -> np.ndarray:
    """Running sums with Neumaier compensation.

    Needed wherever ``1 - sum`` is formed from terms whose total is close
    to 1; plain cumulative sums lose the cancelled digits.
    """
    vals = np.asarray(values, dtype=float).tolist()
    out = np.empty(len(vals))
    s = 0.0
    comp = 0.0
    for i, x in enumerate(vals):
        t = s + x
        if abs(s) >= abs(x):
            comp += (s - t) + x
        else:
            comp += (x - t) + s
        s = t
        out[i] = s + comp
    return out
