import cmath
import math

import numpy as np
import pytest

from trapdyn.errors import ArgumentError, ResourceError, SingularityError, ValidationError
from trapdyn.jacobi import hermitian_eigvals
from trapdyn.measures import (
    AtomicMeasure,
    BernoulliMeasure,
    DensityMeasure,
    MomentSequence,
    bernoulli_discretize,
    bernoulli_moment_product,
    hilbert_on_grid,
    hilbert_transform,
    moments,
    poisson_value,
)
from trapdyn.util import TWO_PI

DIRAC = AtomicMeasure([0.0], [1.0])
TWO_ATOM = AtomicMeasure([0.0, np.pi], [0.5, 0.5])


def lebesgue(grid=256):
    return DensityMeasure(np.ones(grid))


def raised_cosine(grid=8192):
    theta = TWO_PI * np.arange(grid) / grid
    return DensityMeasure(1.0 + np.cos(theta))


# ---------------------------------------------------------------- validation


def test_atomic_invariants():
    with pytest.raises(ValidationError):
        AtomicMeasure([0.0, 1.0], [0.6, 0.6])
    with pytest.raises(ValidationError):
        AtomicMeasure([0.0], [-1.0])
    with pytest.raises(ValidationError):
        AtomicMeasure([0.5, 0.5], [0.5, 0.5])
    with pytest.raises(ValidationError):
        AtomicMeasure([], [])
    # duplicates created by branch reduction are caught too
    with pytest.raises(ValidationError):
        AtomicMeasure([0.0, TWO_PI], [0.5, 0.5])


def test_density_invariants():
    with pytest.raises(ValidationError):
        DensityMeasure(np.full(16, 1.5))
    with pytest.raises(ValidationError):
        DensityMeasure(np.array([2.0, -0.1, 1.0, 1.1]))
    m = lebesgue(64)
    assert m.grid_size == 64
    assert m.grid[1] == TWO_PI / 64


def test_bernoulli_parameter_domain():
    with pytest.raises(ArgumentError):
        BernoulliMeasure(0.0, 4)
    with pytest.raises(ArgumentError):
        BernoulliMeasure(1.0, 4)
    with pytest.raises(ArgumentError):
        BernoulliMeasure(0.3, 0)
    with pytest.raises(ResourceError):
        BernoulliMeasure(0.3, 25)


def test_moment_sequence_invariants():
    with pytest.raises(ValidationError):
        MomentSequence([0.5, 0.1])
    with pytest.raises(ValidationError):
        MomentSequence([1.0, 1.2])
    seq = MomentSequence([1.0 + 1e-14, 0.3 - 0.1j])
    assert seq.coeffs[0] == 1.0
    assert seq.at(-1) == np.conj(seq.at(1))
    with pytest.raises(ArgumentError):
        seq.at(2)


# ------------------------------------------------------------- discretization


def test_discretize_level_one_and_two():
    m = bernoulli_discretize(0.5, 2)
    assert m.angles.size == 4
    assert np.array_equal(m.weights, np.full(4, 0.25))
    m = bernoulli_discretize(1.0 / 3.0, 1)
    assert np.allclose(m.angles, [0.0, np.pi])
    assert np.allclose(m.weights, [2.0 / 3.0, 1.0 / 3.0], atol=1e-15)


def test_discretize_weights_sum_to_one():
    m = bernoulli_discretize(0.37, 13)
    assert abs(math.fsum(m.weights.tolist()) - 1.0) < 1e-13


def test_discretize_matches_product_route():
    # moments of the discretized measure equal the truncated digit product
    level = 6
    seq = moments(BernoulliMeasure(0.41, level), 2 ** level - 1)
    for s in range(1, 2 ** level):
        assert abs(seq.coeffs[s] - bernoulli_moment_product(0.41, level, s)) < 1e-12
    # spot checks at the default level across the full index range
    seq13 = moments(BernoulliMeasure(1 / 3, 13), 2 ** 13 - 1)
    for s in (1, 7, 100, 4096, 2 ** 13 - 1):
        assert abs(seq13.coeffs[s] - bernoulli_moment_product(1 / 3, 13, s)) < 1e-12


# ------------------------------------------------------------------- moments


def test_dirac_moments_all_one():
    seq = moments(DIRAC, 3)
    assert np.array_equal(seq.coeffs, np.ones(4, dtype=complex))


def test_lebesgue_moments_vanish():
    seq = moments(lebesgue(), 3)
    assert seq.coeffs[0] == 1.0
    assert np.max(np.abs(seq.coeffs[1:])) < 1e-14


def test_bernoulli_moment_against_dyadic_sum_oracle():
    # independent oracle: brute-force sum over all dyadic atoms
    p, level = 1.0 / 3.0, 13
    n_atoms = 2 ** level
    re, im = [], []
    for k in range(n_atoms):
        w = bin(k).count("1")
        weight = p ** w * (1 - p) ** (level - w)
        z = cmath.exp(-2j * math.pi * k / n_atoms)
        re.append(weight * z.real)
        im.append(weight * z.imag)
    oracle = complex(math.fsum(re), math.fsum(im))
    got = moments(BernoulliMeasure(p, level), 1).coeffs[1]
    assert abs(got - oracle) < 1e-13
    # frozen value of the oracle, pinned once
    assert abs(got - (0.126179910467531 - 0.1880567021912263j)) < 1e-13
    # cross-check against the product route
    assert abs(got - bernoulli_moment_product(p, level, 1)) < 1e-12


def test_moments_rejects_bad_order():
    with pytest.raises(ArgumentError):
        moments(DIRAC, 0)


def test_moment_magnitudes_bounded():
    seq = moments(BernoulliMeasure(0.95, 13), 300)
    assert np.max(np.abs(seq.coeffs)) <= 1.0 + 1e-12


def test_toeplitz_moment_matrix_positive():
    for measure in (DIRAC, TWO_ATOM, BernoulliMeasure(1 / 3, 10), raised_cosine(1024)):
        seq = moments(measure, 8)
        gram = np.empty((8, 8), dtype=complex)
        for a in range(8):
            for b in range(8):
                gram[a, b] = seq.at(a - b)
        assert hermitian_eigvals(gram)[0] >= -1e-10


# ------------------------------------------------------------------- poisson


def test_poisson_lebesgue_is_one():
    # grid chosen so that the kernel alias 2 r^M sits far below the tolerance
    m = lebesgue(512)
    for r in (0.0, 0.3, 0.9):
        for eta in (0.0, 1.0, 4.5):
            assert abs(poisson_value(m, r, eta) - 1.0) < 1e-12


def test_poisson_dirac_closed_form():
    r, eta = 0.7, 1.3
    expect = (1 - r * r) / (1 + r * r - 2 * r * math.cos(eta))
    assert abs(poisson_value(DIRAC, r, eta) - expect) < 1e-14


def test_poisson_bernoulli_matches_moment_series():
    # independent route: 1 + 2 Re sum_s r^s mu^(s) exp(i s eta)
    p, level, r, eta = 1.0 / 3.0, 13, 0.99, 0.1
    order = math.ceil(math.log(1e-12 * (1 - r)) / math.log(r))
    seq = moments(BernoulliMeasure(p, level), order)
    s = np.arange(1, order + 1)
    g = np.sum(seq.coeffs[1:] * np.power(r, s) * np.exp(1j * s * eta))
    direct = poisson_value(BernoulliMeasure(p, level), r, eta)
    assert abs(direct - (1.0 + 2.0 * g.real)) < 1e-8


def test_poisson_at_zero_radius():
    for measure in (DIRAC, TWO_ATOM, BernoulliMeasure(0.2, 6)):
        assert abs(poisson_value(measure, 0.0, 2.0) - 1.0) < 1e-12


def test_poisson_mass_conservation():
    mesh = 2048
    etas = TWO_PI * np.arange(mesh) / mesh
    for measure in (TWO_ATOM, raised_cosine(512), BernoulliMeasure(1 / 3, 8)):
        for r in (0.5, 0.9):
            mean = math.fsum(poisson_value(measure, r, e) for e in etas) / mesh
            assert abs(mean - 1.0) < 1e-8


def test_poisson_rejects_bad_radius():
    with pytest.raises(ArgumentError):
        poisson_value(DIRAC, 1.0, 0.0)
    with pytest.raises(ArgumentError):
        poisson_value(DIRAC, -0.1, 0.0)


# ------------------------------------------------------------------- hilbert


def test_hilbert_lebesgue_vanishes():
    m = lebesgue(512)
    assert abs(hilbert_transform(m, m.grid[17])) < 1e-12
    assert abs(hilbert_transform(m, 0.5 * (m.grid[3] + m.grid[4]))) < 1e-12


def test_hilbert_dirac_antipodal():
    assert abs(hilbert_transform(DIRAC, np.pi, delta=0.1)) < 1e-15


def test_hilbert_convention_raised_cosine():
    # conjugate of 1 + cos is +sin/2 under the boundary-Im-G convention;
    # value pinned by a high-resolution principal-value quadrature oracle
    got = hilbert_transform(raised_cosine(), np.pi / 2)
    assert abs(got - 0.5) < 1e-3


def test_hilbert_delta_stability():
    m = raised_cosine()
    step = TWO_PI / m.grid_size
    eta = np.pi / 2
    coarse = hilbert_transform(m, eta, delta=8 * step)
    fine = hilbert_transform(m, eta, delta=4 * step)
    assert abs(fine - coarse) < 8 * step


def test_hilbert_atomic_requires_delta_and_flags_collisions():
    with pytest.raises(ArgumentError):
        hilbert_transform(TWO_ATOM, 1.0)
    with pytest.raises(ArgumentError):
        hilbert_transform(TWO_ATOM, 1.0, delta=-0.5)
    with pytest.raises(SingularityError) as err:
        hilbert_transform(TWO_ATOM, np.pi + 1e-4, delta=1e-3)
    assert err.value.atom_index == 1


def test_hilbert_on_grid_matches_pointwise_sum():
    m = raised_cosine(256)
    grid_vals = hilbert_on_grid(m)
    for k in (0, 7, 128, 200):
        assert abs(grid_vals[k] - hilbert_transform(m, m.grid[k])) < 1e-12
    assert np.max(np.abs(grid_vals - np.sin(m.grid) / 2.0)) < 4e-3


def test_hilbert_on_grid_rejects_atomic():
    with pytest.raises(ArgumentError):
        hilbert_on_grid(TWO_ATOM)
