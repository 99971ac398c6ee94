"""Currents for a rank-1 trap driven by the moments of its measure.

The return-amplitude sequence K solves the one-sided convolution
recursion ``K(t) = mu^(t) - sum_{s<t} mu^(t-s) K(s)``, which is the
coefficient recursion of ``F = G / (1 + G)`` for ``G(z) = sum z^s mu^(s)``.
From K follow the stepwise current ``J(t) = 1 - sum_{s<t} |K(s)|^2``, its
cumulative count N, the Abel-regularized current ``Jtilde(r)``, and the
boundary samples of G and F used by the two integral routes.  The
convention ``mu^(m)`` for the m-step return amplitude is pinned by the
point-mass test: a unit mass at angle 0 must give K = (1, 0, 0, ...).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ValidationError
from .measures import DensityMeasure, MomentSequence, SpectralMeasure, hilbert_on_grid, moments
from .util import TWO_PI, compensated_cumsum, exact_sum

# truncation targets: geometric tails below these are invisible at double precision
SERIES_TAIL = 1e-12
ABEL_TAIL = 1e-14
BRIDGE_ALIAS = 1e-10

DEFAULT_MESH = 1 << 13
NEGATIVE_CLAMP = 1e-12


@dataclass
class CurrentSeries:
    """Stepwise current J, cumulative count N, and the amplitudes K behind them.

    Index convention: ``J[i]`` is J(t = i + 1), same for N; ``K[i]`` is K(s = i + 1).
    """

    K: np.ndarray
    J: np.ndarray
    N: np.ndarray

    @property
    def steps(self) -> int:
        return int(self.J.size)


@dataclass
class DiskSample:
    """G and F = G/(1+G) on the mesh ``eta_k = 2 pi k / M`` at fixed radius."""

    r: float
    g_values: np.ndarray
    f_values: np.ndarray

    @property
    def mesh_size(self) -> int:
        return int(self.g_values.size)

    @property
    def mesh(self) -> np.ndarray:
        return TWO_PI * np.arange(self.mesh_size) / self.mesh_size


def dyadic_ladder(k_min: int = 3, k_max: int = 10) -> np.ndarray:
    """Radii 1 - 2^-k, equally spaced in log(1 - r)."""
    if k_min < 1 or k_max < k_min:
        raise ArgumentError("need 1 <= k_min <= k_max")
    return 1.0 - np.power(2.0, -np.arange(k_min, k_max + 1, dtype=float))


def required_moment_order(r: float) -> int:
    """Smallest S with r^S / (1 - r) below the series tail target."""
    if not 0.0 <= r < 1.0:
        raise ArgumentError("radius must lie in [0, 1)")
    if r == 0.0:
        return 1
    return max(1, math.ceil(math.log(SERIES_TAIL * (1.0 - r)) / math.log(r)))


def required_k_length(r: float) -> int:
    """Smallest T with r^(2T) below the Abel tail target."""
    if not 0.0 <= r < 1.0:
        raise ArgumentError("radius must lie in [0, 1)")
    if r == 0.0:
        return 1
    return max(1, math.ceil(math.log(ABEL_TAIL) / (2.0 * math.log(r))))


def bridge_mesh_size(r: float, floor: int = DEFAULT_MESH) -> int:
    """Mesh size making the series and integral routes agree to ~1e-9.

    The mesh mean of |F|^2 picks up alias terms of order r^M, so M is grown
    (in powers of two) until r^M drops below the alias target.
    """
    if not 0.0 <= r < 1.0:
        raise ArgumentError("radius must lie in [0, 1)")
    m = floor
    if r > 0.0:
        need = math.ceil(math.log(BRIDGE_ALIAS) / math.log(r))
        while m < need:
            m *= 2
    return m


def k_sequence(moment_seq: MomentSequence, steps: int) -> np.ndarray:
    """Return amplitudes K(1..steps) from the convolution recursion."""
    if steps < 1:
        raise ArgumentError("steps must be at least 1")
    if moment_seq.order < steps:
        raise ArgumentError(
            f"recursion to step {steps} needs moment order >= {steps}, got {moment_seq.order}"
        )
    mu = moment_seq.coeffs
    out = np.zeros(steps, dtype=complex)
    for t in range(1, steps + 1):
        acc = mu[t]
        if t > 1:
            acc = acc - np.dot(mu[t - 1:0:-1], out[: t - 1])
        out[t - 1] = acc
    total = exact_sum(np.abs(out) ** 2)
    if total > 1.0 + 1e-10:
        raise ValidationError(f"amplitude energy {total!r} exceeds 1; moments are inconsistent")
    return out


def current_series(K, steps: int) -> CurrentSeries:
    """Currents J(1..steps) and counts N(1..steps) from the amplitudes.

    J(1) = 1 by convention; J(t) = 1 - sum_{s<t} |K(s)|^2 via compensated
    prefix sums, since the partial energies approach 1.
    """
    K = np.asarray(K, dtype=complex)
    if steps < 1:
        raise ArgumentError("steps must be at least 1")
    if K.size < steps - 1:
        raise ArgumentError(f"need at least {steps - 1} amplitudes for {steps} steps")
    energy = compensated_cumsum(np.abs(K[: steps - 1]) ** 2)
    J = np.empty(steps)
    J[0] = 1.0
    J[1:] = 1.0 - energy
    small = (J < 0.0) & (J >= -NEGATIVE_CLAMP)
    J[small] = 0.0
    if np.any(J < 0.0):
        raise ValidationError("current went negative beyond roundoff; amplitudes inconsistent")
    N = compensated_cumsum(J)
    return CurrentSeries(K=K[:steps].copy(), J=J, N=N)


def g_on_circle(moment_seq: MomentSequence, r: float, mesh: int = DEFAULT_MESH) -> DiskSample:
    """Truncated series for G at ``z = r exp(i eta_k)`` on the M-point mesh.

    The sequence ``r^s mu^(s)`` is folded modulo M and transformed at once;
    that reproduces the direct sum exactly (the mesh exponentials are
    M-periodic in s) at FFT cost.  F = G/(1+G) sits strictly inside the
    disk, so the quotient is safe.
    """
    if not 0.0 <= r < 1.0:
        raise ArgumentError("radius must lie in [0, 1)")
    if mesh < 1:
        raise ArgumentError("mesh size must be positive")
    needed = required_moment_order(r)
    if moment_seq.order < needed:
        raise ArgumentError(
            f"radius {r!r} needs moment order >= {needed}, got {moment_seq.order}"
        )
    s = np.arange(moment_seq.order + 1)
    c = moment_seq.coeffs * np.power(r, s)
    c[0] = 0.0
    pad = (-c.size) % mesh
    folded = np.concatenate([c, np.zeros(pad, dtype=complex)]).reshape(-1, mesh).sum(axis=0)
    g = mesh * np.fft.ifft(folded)
    denom = 1.0 + g
    if float(np.min(np.abs(denom))) == 0.0:
        raise ValidationError("1 + G vanished on the mesh; the moments are not realizable")
    return DiskSample(r=float(r), g_values=g, f_values=g / denom)


def jtilde_series(K, r: float) -> float:
    """Abel-regularized current ``1 - sum r^(2s) |K(s)|^2`` from the amplitudes."""
    K = np.asarray(K, dtype=complex)
    if not 0.0 <= r < 1.0:
        raise ArgumentError("radius must lie in [0, 1)")
    needed = required_k_length(r)
    if K.size < needed:
        raise ArgumentError(f"radius {r!r} needs at least {needed} amplitudes, got {K.size}")
    s = np.arange(1, K.size + 1, dtype=float)
    terms = np.abs(K) ** 2 * np.power(r * r, s)
    return 1.0 - exact_sum(terms)


def jtilde_integral(
    moment_seq: MomentSequence,
    r: float,
    mesh: int = DEFAULT_MESH,
    include_imaginary: bool = True,
) -> float:
    """Abel current via the boundary integral of 1 - |F|^2.

    With ``include_imaginary`` the integrand is the stable form
    ``(1 + 2 Re G) / |1 + G|^2``; without it the imaginary part of G is
    dropped from the denominator, which overestimates the current and is
    the comparison series used for the exponent tables.
    """
    sample = g_on_circle(moment_seq, r, mesh)
    re = sample.g_values.real
    numer = 1.0 + 2.0 * re
    if include_imaginary:
        vals = numer / np.abs(1.0 + sample.g_values) ** 2
    else:
        vals = numer / (numer + re * re)
    return exact_sum(vals) / sample.mesh_size


def asymptotic_current_ac(measure: SpectralMeasure) -> float:
    """Long-time current of an absolutely continuous measure, from its density.

    Evaluates ``(1/2pi) int 4 rho / ((1 + rho)^2 + 4 H^2) dtheta`` with the
    module-convention cotangent transform H on the measure's own grid.
    """
    if not isinstance(measure, DensityMeasure):
        raise ArgumentError("the asymptotic-current formula needs a density measure")
    h = hilbert_on_grid(measure)
    rho = measure.values
    integrand = 4.0 * rho / ((1.0 + rho) ** 2 + 4.0 * h * h)
    return exact_sum(integrand) / measure.grid_size


def current_from_measure(measure: SpectralMeasure, steps: int) -> CurrentSeries:
    """Convenience pipeline: moments -> K -> currents for a given measure."""
    return current_series(k_sequence(moments(measure, steps), steps), steps)
