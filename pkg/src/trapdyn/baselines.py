"""Closed-form classical trap currents used as sanity anchors.

The 1-d diffusion current into an absorbing origin and the first-passage
current of the simple random walk.  Both decay like t^(-1/2), which the
exponent fitter must recover.
"""

import math
from dataclasses import dataclass

from .errors import ArgumentError

# above this, binomials leave double range; switch to log-gamma
_EXACT_LIMIT = 512


@dataclass
class WalkCurrentPoint:
    t: int
    J: float


def diffusion_current(D: float, t: float) -> float:
    """Current -sqrt(D / (pi t)) into an absorbing wall at the origin."""
    if D <= 0.0 or t <= 0.0:
        raise ArgumentError("diffusivity and time must be positive")
    return -math.sqrt(D / (math.pi * t))


def rw_first_passage(x: int, t: int) -> float:
    """Probability that the walk started at x first hits 0 at time t.

    Boundary rules: the walk already at the origin has hit it at time 0 and
    never afterwards; sites beyond t are unreachable.  Exact (dyadic
    rational) doubles up to moderate t, log-gamma beyond.
    """
    x = int(x)
    t = int(t)
    if x < 0 or t < 0:
        raise ArgumentError("site and time must be nonnegative integers")
    if x == 0:
        return 1.0 if t == 0 else 0.0
    if x > t or (t - x) % 2 != 0:
        return 0.0
    n = t - 1
    k = (t - x) // 2
    if t <= _EXACT_LIMIT:
        lead = math.comb(n, k) if 0 <= k <= n else 0
        trail = math.comb(n, k - 1) if 1 <= k <= n + 1 else 0
        return float(lead - trail) / float(2 ** t)
    l1 = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    first = math.exp(l1 - t * math.log(2.0))
    if k == 0:
        return first
    l2 = math.lgamma(n + 1) - math.lgamma(k) - math.lgamma(n - k + 2)
    return first * (1.0 - math.exp(l2 - l1))


def rw_current(t: int) -> WalkCurrentPoint:
    """Total first-passage current at time t, asymptotically 1/sqrt(2 pi t)."""
    t = int(t)
    if t < 1:
        raise ArgumentError("the walk current starts at t = 1")
    n = t - 1
    k = n // 2
    if t <= _EXACT_LIMIT:
        j = float(math.comb(n, k)) / float(2 ** t)
    else:
        lg = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        j = math.exp(lg - t * math.log(2.0))
    return WalkCurrentPoint(t=t, J=j)
