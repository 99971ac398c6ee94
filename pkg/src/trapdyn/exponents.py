"""Scaling-exponent extraction and the closed-form lower bounds.

Two fit conventions share one least-squares core on (log x, log y):

* ``alpha`` mode, x = 1 - r against the Abel current, exponent = slope;
* ``gamma`` mode, x = t against the stepwise current, exponent = -slope.

Entropies here use natural logarithms throughout; mixing log bases is how
unit bugs creep into the analytic bound.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import CurrentSeries
from .errors import ArgumentError

LN2 = math.log(2.0)
AGREEMENT_TOL = 0.1


@dataclass
class ExponentFit:
    exponent: float
    intercept: float
    residual: float
    window: tuple[int, int]
    flagged: bool


@dataclass
class TauberianResult:
    gamma: ExponentFit | None
    alpha: ExponentFit
    agree: bool | None


def fit_exponent(points, window: tuple[int, int] | None = None, mode: str = "alpha") -> ExponentFit:
    """Least-squares power law through (x, y) pairs on log-log axes.

    ``window`` is a half-open index range into the supplied points and
    defaults to all of them.  The residual is the largest absolute log
    deviation over the fitted window.  Exponents outside [0, 1] are
    returned but flagged.
    """
    if mode not in ("alpha", "gamma"):
        raise ArgumentError("fit mode must be 'alpha' or 'gamma'")
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ArgumentError("points must be an (n, 2) array of (x, y) pairs")
    lo, hi = (0, pts.shape[0]) if window is None else (int(window[0]), int(window[1]))
    if not 0 <= lo < hi <= pts.shape[0]:
        raise ArgumentError(f"window ({lo}, {hi}) does not address the supplied points")
    sel = pts[lo:hi]
    if sel.shape[0] < 3:
        raise ArgumentError("a power-law fit needs at least 3 points")
    if np.any(sel <= 0.0):
        raise ArgumentError("log-log fitting needs strictly positive data")
    lx = np.log(sel[:, 0])
    ly = np.log(sel[:, 1])
    dx = lx - lx.mean()
    dy = ly - ly.mean()
    denom = float(np.dot(dx, dx))
    if denom == 0.0:
        raise ArgumentError("all x values coincide; no slope is defined")
    slope = float(np.dot(dx, dy) / denom)
    intercept = float(ly.mean() - slope * lx.mean())
    residual = float(np.max(np.abs(ly - (slope * lx + intercept))))
    exponent = slope if mode == "alpha" else -slope
    return ExponentFit(
        exponent=exponent,
        intercept=intercept,
        residual=residual,
        window=(lo, hi),
        flagged=not 0.0 <= exponent <= 1.0,
    )


def _dyadic_time_points(series: CurrentSeries) -> np.ndarray:
    ts = []
    t = 4
    while t <= series.steps:
        ts.append(t)
        t *= 2
    return np.asarray(ts, dtype=int)


def tauberian_check(series: CurrentSeries, ladder, agree_tol: float = AGREEMENT_TOL) -> TauberianResult:
    """Compare the time exponent of J(t) with the Abel exponent of Jtilde(r).

    The time fit subsamples J at powers of two (log-equispaced, mirroring
    the dyadic radius ladder).  A series that hits exact zero there, as a
    finitely supported measure does, has no time exponent: the gamma fit
    comes back None and the agreement flag is not applicable.
    """
    ladder = np.asarray(ladder, dtype=float)
    if ladder.ndim != 2 or ladder.shape[1] != 2:
        raise ArgumentError("ladder must be (r, Jtilde) pairs")
    alpha_fit = fit_exponent(np.column_stack([1.0 - ladder[:, 0], ladder[:, 1]]), mode="alpha")

    ts = _dyadic_time_points(series)
    gamma_fit = None
    if ts.size >= 3:
        vals = series.J[ts - 1]
        if np.all(vals > 0.0):
            gamma_fit = fit_exponent(np.column_stack([ts.astype(float), vals]), mode="gamma")
    agree = None if gamma_fit is None else bool(abs(gamma_fit.exponent - alpha_fit.exponent) <= agree_tol)
    return TauberianResult(gamma=gamma_fit, alpha=alpha_fit, agree=agree)


def shannon_entropy(q: float) -> float:
    """Entropy of the (q, 1-q) coin in nats."""
    if not 0.0 <= q <= 1.0:
        raise ArgumentError("entropy argument must lie in [0, 1]")
    out = 0.0
    if 0.0 < q < 1.0:
        out = -q * math.log(q) - (1.0 - q) * math.log(1.0 - q)
    return out


def relative_entropy(p1: float, p2: float) -> float:
    """Relative entropy of the (p1, 1-p1) coin with respect to (p2, 1-p2), in nats."""
    if not 0.0 < p2 < 1.0:
        raise ArgumentError("reference bias must lie strictly between 0 and 1")
    if not 0.0 <= p1 <= 1.0:
        raise ArgumentError("bias must lie in [0, 1]")
    out = -shannon_entropy(p1) - p1 * math.log(p2) - (1.0 - p1) * math.log(1.0 - p2)
    return out


def bernoulli_bound(p: float) -> tuple[float, float]:
    """Analytic lower bound for the Abel exponent of the bias-p digit measure.

    Returns ``(q, alpha_lower)`` where q in (p, 1/2) balances the two
    relative entropies and ``alpha_lower = (ln 2 - S(q)) / (2 ln 2 - S(q))``.
    The construction is symmetric under p -> 1 - p; the even bias has no
    bound (the measure degenerates to Lebesgue).
    """
    if not 0.0 < p < 1.0:
        raise ArgumentError("bias p must lie strictly between 0 and 1")
    if p == 0.5:
        raise ArgumentError("the bound degenerates at p = 1/2")
    pp = min(p, 1.0 - p)
    q = math.log(2.0 * (1.0 - pp)) / math.log((1.0 - pp) / pp)
    s = shannon_entropy(q)
    return q, (LN2 - s) / (2.0 * LN2 - s)


def powerlaw_atomic_bound(alpha: float) -> float:
    """Dropped-imaginary exponent bound for atomic weights decaying like j^-alpha."""
    if alpha <= 1.0:
        raise ArgumentError("weights with alpha <= 1 are not summable")
    return (alpha - 1.0) / (2.0 * alpha - 1.0)
