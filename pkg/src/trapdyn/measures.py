"""Probability measures on the unit circle and their basic transforms.

Three concrete representations are supported:

* ``AtomicMeasure``: finitely many point masses,
* ``DensityMeasure``: a nonnegative density sampled on an equispaced grid,
  integrated throughout with the periodic trapezoid rule (which on such a
  grid is the plain mean),
* ``BernoulliMeasure``: the biased-coin binary-digit measure, handled via
  its exact level-n discretization onto the dyadic grid.

The module computes Fourier moments ``mu^(s) = int exp(-i s theta) dmu``,
Poisson integrals, and the principal-value cotangent transform.  Sign
convention for the latter: it is the boundary value of the imaginary part
of ``G(z) = sum_{s>=1} z^s mu^(s)``, i.e.

    (H mu)(eta) = (1/2) PV int cot((eta - theta)/2) mu(dtheta),

so the conjugate of ``1 + cos`` is ``+ sin / 2``.  Angles always live on
the canonical branch [0, 2*pi).  All functions are pure; call them from
as many threads as you like.
"""

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ResourceError, SingularityError, ValidationError
from .util import TWO_PI, canonical_angle, exact_sum, signed_gap

ATOM_MASS_TOL = 1e-12
DENSITY_MASS_TOL = 1e-10
MOMENT_BOUND_TOL = 1e-12
MAX_BERNOULLI_LEVEL = 24

# relative slack on principal-value cutoffs: angles that land exactly on the
# cutoff circle are meant to be kept, and must survive branch-reduction roundoff
_CUT_SLACK = 1.0 - 1e-9

# chunk budget (complex entries) for the dense atomic moment matrix
_MOMENT_CHUNK = 1 << 21


@dataclass
class AtomicMeasure:
    """Point masses ``weights[j]`` at angles ``angles[j]``."""

    angles: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        angles = canonical_angle(np.atleast_1d(np.asarray(self.angles, dtype=float)))
        weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if angles.ndim != 1 or angles.shape != weights.shape:
            raise ValidationError("angles and weights must be 1-d arrays of equal length")
        if angles.size == 0:
            raise ValidationError("an atomic measure needs at least one atom")
        if np.any(weights < 0.0):
            raise ValidationError("atom weights must be nonnegative")
        mass = exact_sum(weights)
        if abs(mass - 1.0) > ATOM_MASS_TOL:
            raise ValidationError(f"atom weights sum to {mass!r}, not 1 within {ATOM_MASS_TOL:g}")
        order = np.argsort(angles, kind="stable")
        if angles.size > 1 and np.any(np.diff(angles[order]) == 0.0):
            raise ValidationError("atom angles must be pairwise distinct")
        self.angles = angles
        self.weights = weights


@dataclass
class DensityMeasure:
    """Density values at the equispaced grid ``theta_k = 2 pi k / M``."""

    values: np.ndarray

    def __post_init__(self):
        values = np.atleast_1d(np.asarray(self.values, dtype=float))
        if values.ndim != 1 or values.size == 0:
            raise ValidationError("density values must form a nonempty 1-d array")
        if np.any(values < 0.0):
            raise ValidationError("density values must be nonnegative")
        mass = exact_sum(values) / values.size
        if abs(mass - 1.0) > DENSITY_MASS_TOL:
            raise ValidationError(f"density integrates to {mass!r}, not 1 within {DENSITY_MASS_TOL:g}")
        self.values = values

    @property
    def grid_size(self) -> int:
        return int(self.values.size)

    @property
    def grid(self) -> np.ndarray:
        return TWO_PI * np.arange(self.grid_size) / self.grid_size


@dataclass
class BernoulliMeasure:
    """Biased-coin digit measure with bias ``p``, discretized at ``level`` bits."""

    p: float
    level: int = 13

    def __post_init__(self):
        p = float(self.p)
        level = int(self.level)
        if not 0.0 < p < 1.0:
            raise ArgumentError("bias p must lie strictly between 0 and 1")
        if level < 1:
            raise ArgumentError("discretization level must be at least 1")
        if level > MAX_BERNOULLI_LEVEL:
            raise ResourceError(
                f"level {level} needs 2^{level} atoms; the budget stops at {MAX_BERNOULLI_LEVEL}"
            )
        self.p = p
        self.level = level


SpectralMeasure = AtomicMeasure | DensityMeasure | BernoulliMeasure


@dataclass
class MomentSequence:
    """Fourier coefficients ``coeffs[s] = mu^(s)`` for s = 0..order.

    Negative indices are implied by conjugation: ``mu^(-s) = conj(mu^(s))``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if coeffs.ndim != 1 or coeffs.size < 1:
            raise ValidationError("a moment sequence needs at least the 0th coefficient")
        if abs(coeffs[0] - 1.0) > MOMENT_BOUND_TOL:
            raise ValidationError("mu^(0) must equal 1")
        coeffs = coeffs.copy()
        coeffs[0] = 1.0
        if np.any(np.abs(coeffs) > 1.0 + MOMENT_BOUND_TOL):
            raise ValidationError("moments of a probability measure satisfy |mu^(s)| <= 1")
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return int(self.coeffs.size - 1)

    def at(self, s: int) -> complex:
        """Coefficient at any integer index, conjugating for negative s."""
        if abs(s) > self.order:
            raise ArgumentError(f"moment index {s} exceeds truncation order {self.order}")
        if s >= 0:
            return complex(self.coeffs[s])
        return complex(np.conj(self.coeffs[-s]))


def bernoulli_discretize(p: float, level: int) -> AtomicMeasure:
    """Atoms of the level-n dyadic discretization of the bias-p digit measure.

    Places weight ``p^w(k) (1-p)^(n-w(k))`` at ``theta = 2 pi k / 2^n`` where
    ``w(k)`` counts the 1-bits among the first n binary digits of ``k / 2^n``.
    """
    probe = BernoulliMeasure(p, level)  # reuse the parameter checks
    n = probe.level
    k = np.arange(1 << n, dtype=np.uint32)
    ones = np.bitwise_count(k).astype(np.float64)
    weights = np.power(probe.p, ones) * np.power(1.0 - probe.p, n - ones)
    angles = TWO_PI * k.astype(np.float64) / float(1 << n)
    return AtomicMeasure(angles, weights)


@functools.lru_cache(maxsize=8)
def _cached_dyadic_atoms(p: float, level: int) -> AtomicMeasure:
    return bernoulli_discretize(p, level)


def bernoulli_moment_product(p: float, level: int, s: int) -> complex:
    """Cross-check route for dyadic moments: the finite product over digit maps.

    Equals ``moments(BernoulliMeasure(p, level))`` coefficient s up to roundoff;
    kept separate so the two routes stay independent.
    """
    BernoulliMeasure(p, level)
    out = 1.0 + 0.0j
    for m in range(1, level + 1):
        out *= (1.0 - p) + p * np.exp(-2j * math.pi * s * 2.0 ** (-m))
    return complex(out)


def _atomic_moments(measure: AtomicMeasure, order: int) -> np.ndarray:
    coeffs = np.empty(order + 1, dtype=complex)
    coeffs[0] = 1.0
    natoms = measure.angles.size
    chunk = max(1, _MOMENT_CHUNK // natoms)
    s = 1
    while s <= order:
        hi = min(order, s + chunk - 1)
        block = np.exp(-1j * np.outer(np.arange(s, hi + 1), measure.angles))
        coeffs[s : hi + 1] = block @ measure.weights
        s = hi + 1
    return coeffs


def _periodic_moments(spectrum: np.ndarray, order: int) -> np.ndarray:
    idx = np.arange(order + 1) % spectrum.size
    coeffs = np.asarray(spectrum[idx], dtype=complex)
    coeffs[0] = 1.0
    return coeffs


def moments(measure: SpectralMeasure, order: int) -> MomentSequence:
    """Fourier coefficients ``mu^(s)`` for s = 0..order.

    Atomic measures are summed directly; grid densities and dyadic
    discretizations go through a single FFT of their weight vector, whose
    coefficients then repeat with the grid period.
    """
    if order < 1:
        raise ArgumentError("moment order must be at least 1")
    if isinstance(measure, AtomicMeasure):
        coeffs = _atomic_moments(measure, order)
    elif isinstance(measure, DensityMeasure):
        spectrum = np.fft.fft(measure.values) / measure.grid_size
        coeffs = _periodic_moments(spectrum, order)
    elif isinstance(measure, BernoulliMeasure):
        atoms = _cached_dyadic_atoms(measure.p, measure.level)
        coeffs = _periodic_moments(np.fft.fft(atoms.weights), order)
    else:
        raise ArgumentError(f"unsupported measure type {type(measure).__name__}")
    # kill the roundoff overshoot that a tolerance-checked constructor would reject
    mags = np.abs(coeffs)
    overshoot = (mags > 1.0) & (mags <= 1.0 + MOMENT_BOUND_TOL)
    coeffs[overshoot] /= mags[overshoot]
    return MomentSequence(coeffs)


def _poisson_kernel(r: float, delta: np.ndarray) -> np.ndarray:
    return (1.0 - r * r) / (1.0 + r * r - 2.0 * r * np.cos(delta))


def poisson_value(measure: SpectralMeasure, r: float, eta: float) -> float:
    """Poisson integral of the measure at radius r and angle eta."""
    if not 0.0 <= r < 1.0:
        raise ArgumentError("the Poisson integral needs 0 <= r < 1")
    eta = canonical_angle(float(eta))
    if isinstance(measure, BernoulliMeasure):
        measure = _cached_dyadic_atoms(measure.p, measure.level)
    if isinstance(measure, AtomicMeasure):
        return exact_sum(measure.weights * _poisson_kernel(r, eta - measure.angles))
    if isinstance(measure, DensityMeasure):
        vals = measure.values * _poisson_kernel(r, eta - measure.grid)
        return exact_sum(vals) / measure.grid_size
    raise ArgumentError(f"unsupported measure type {type(measure).__name__}")


def hilbert_transform(measure: SpectralMeasure, eta: float, delta: float | None = None) -> float:
    """Principal-value cotangent transform at eta, cutting out |eta-theta| < delta.

    For densities the cutoff defaults to one grid step, which excludes a
    symmetric window around eta and cancels the odd singularity to leading
    order.  Atomic measures need an explicit cutoff and any atom inside it
    is an error: the transform genuinely diverges there.
    """
    eta = canonical_angle(float(eta))
    if isinstance(measure, BernoulliMeasure):
        measure = _cached_dyadic_atoms(measure.p, measure.level)
    if isinstance(measure, AtomicMeasure):
        if delta is None:
            raise ArgumentError("atomic measures need an explicit principal-value cutoff")
        if delta <= 0.0:
            raise ArgumentError("the principal-value cutoff must be positive")
        gaps = signed_gap(eta - measure.angles)
        inside = np.abs(gaps) < delta * _CUT_SLACK
        if np.any(inside):
            j = int(np.argmax(inside))
            raise SingularityError(
                f"evaluation angle {eta!r} lies within {delta!r} of atom {j}", atom_index=j
            )
        return 0.5 * exact_sum(measure.weights / np.tan(0.5 * gaps))
    if isinstance(measure, DensityMeasure):
        step = TWO_PI / measure.grid_size
        cut = step if delta is None else float(delta)
        if cut <= 0.0:
            raise ArgumentError("the principal-value cutoff must be positive")
        gaps = signed_gap(eta - measure.grid)
        keep = np.abs(gaps) >= cut * _CUT_SLACK
        vals = measure.values[keep] / np.tan(0.5 * gaps[keep])
        return 0.5 * exact_sum(vals) / measure.grid_size
    raise ArgumentError(f"unsupported measure type {type(measure).__name__}")


def hilbert_on_grid(measure: DensityMeasure) -> np.ndarray:
    """Cotangent transform of a grid density at every grid node at once.

    Same sum as ``hilbert_transform`` with the default one-step cutoff,
    evaluated as a circular convolution.
    """
    if not isinstance(measure, DensityMeasure):
        raise ArgumentError("grid transform is defined for density measures only")
    m = measure.grid_size
    kernel = np.zeros(m)
    if m > 1:
        kernel[1:] = 1.0 / np.tan(np.pi * np.arange(1, m) / m)
    conv = np.fft.ifft(np.fft.fft(measure.values) * np.fft.fft(kernel)).real
    return conv / (2.0 * m)
