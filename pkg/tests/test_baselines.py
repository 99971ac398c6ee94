import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from trapdyn.baselines import diffusion_current, rw_current, rw_first_passage
from trapdyn.errors import ArgumentError
from trapdyn.exponents import fit_exponent


def test_diffusion_current_examples():
    assert abs(diffusion_current(1.0, 1.0 / math.pi) + 1.0) < 1e-15
    t = 3.7
    assert abs(diffusion_current(4.0, t) - 2.0 * diffusion_current(1.0, t)) < 1e-15
    assert abs(diffusion_current(1.0, 100.0) + 1.0 / math.sqrt(100.0 * math.pi)) < 1e-17
    with pytest.raises(ArgumentError):
        diffusion_current(0.0, 1.0)
    with pytest.raises(ArgumentError):
        diffusion_current(1.0, -1.0)


def _enumerated_first_passage(x, t):
    # brute force over all 2^t step sequences
    hits = 0
    for steps in product((-1, 1), repeat=t):
        pos = x
        for i, s in enumerate(steps):
            pos += s
            if pos == 0:
                if i == t - 1:
                    hits += 1
                break
    return hits / 2 ** t


def test_first_passage_small_cases():
    assert rw_first_passage(1, 1) == 0.5
    assert rw_first_passage(2, 1) == 0.0
    assert rw_first_passage(3, 3) == 0.125
    assert rw_first_passage(0, 0) == 1.0
    assert rw_first_passage(0, 5) == 0.0
    assert rw_first_passage(4, 2) == 0.0  # unreachable
    assert rw_first_passage(2, 5) == 0.0  # parity
    with pytest.raises(ArgumentError):
        rw_first_passage(-1, 3)


def test_first_passage_against_enumeration():
    for x in range(1, 5):
        for t in range(0, 9):
            assert rw_first_passage(x, t) == _enumerated_first_passage(x, t)


def test_first_passage_recursion_exact_to_thirty():
    for t in range(1, 31):
        for x in range(1, t + 1):
            lhs = rw_first_passage(x, t)
            rhs = 0.5 * (rw_first_passage(x - 1, t - 1) + rw_first_passage(x + 1, t - 1))
            assert lhs == rhs


def test_column_sums_match_current():
    for t in range(1, 31):
        total = math.fsum(rw_first_passage(x, t) for x in range(1, t + 1))
        assert abs(total - rw_current(t).J) < 1e-12


def test_current_small_values():
    assert rw_current(1).J == 0.5
    assert rw_current(3).J == 0.25
    point = rw_current(7)
    assert point.t == 7
    assert 0.0 <= point.J <= 1.0
    with pytest.raises(ArgumentError):
        rw_current(0)


def test_current_is_eventually_nonincreasing():
    vals = [rw_current(t).J for t in range(2, 200)]
    assert all(b <= a for a, b in zip(vals, vals[1:]))


def test_loggamma_branch_matches_exact_combinatorics():
    # t = 600 forces the log-gamma path; compare against exact rationals
    t = 600
    exact = Fraction(math.comb(t - 1, (t - 1) // 2), 2 ** t)
    assert abs(rw_current(t).J - float(exact)) < 1e-13 * float(exact) + 1e-300


def test_asymptotic_normalization_at_thousand():
    value = rw_current(1000).J * math.sqrt(2000.0 * math.pi)
    assert abs(value - 1.0) <= 0.005


def test_exponent_hook_recovers_half():
    ts = 2 ** np.arange(6, 15)
    pts = np.column_stack([ts.astype(float), [rw_current(int(t)).J for t in ts]])
    fit = fit_exponent(pts, mode="gamma")
    assert abs(fit.exponent - 0.5) <= 0.01
