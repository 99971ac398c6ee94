"""Finite-dimensional matrix oracles for the trap currents.

Everything here verifies the moment-driven routes against explicit
matrices: the trace formulas for the trapped count and its current for a
general finite-rank trap, and a Gram-coordinate realization of the
sequential projection product for the rank-1 case.  The Gram oracle works
directly in the (generally non-orthogonal) basis ``U^-s phi``; the
sequential factors ``1 - P_s`` are not a projection onto an orthogonal
complement, so no orthonormalization is performed.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, InvalidMomentsError, ValidationError
from .jacobi import hermitian_eigvals
from .measures import MomentSequence
from .util import exact_sum

UNITARY_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRAP_BAND = 1e-10
GRAM_FLOOR = -1e-8


@dataclass
class TrapSystem:
    """A unitary one-step evolution together with a trap operator 0 <= A <= 1."""

    U: np.ndarray
    A: np.ndarray

    def __post_init__(self):
        U = np.asarray(self.U, dtype=complex)
        A = np.asarray(self.A, dtype=complex)
        if U.ndim != 2 or U.shape[0] != U.shape[1]:
            raise ValidationError("U must be a square matrix")
        if A.shape != U.shape:
            raise ValidationError("the trap must act on the same space as U")
        dim = U.shape[0]
        if float(np.max(np.abs(U @ U.conj().T - np.eye(dim)))) > UNITARY_TOL:
            raise ValidationError("U is not unitary to working accuracy")
        if float(np.max(np.abs(A - A.conj().T))) > HERMITIAN_TOL:
            raise ValidationError("the trap operator must be Hermitian")
        evals = hermitian_eigvals(A)
        if evals[0] < -TRAP_BAND or evals[-1] > 1.0 + TRAP_BAND:
            raise ValidationError("trap eigenvalues must lie in [0, 1]")
        self.U = U
        self.A = A

    @property
    def dim(self) -> int:
        return int(self.U.shape[0])

    @property
    def survival(self) -> np.ndarray:
        """The complement T = 1 - A applied after each step."""
        return np.eye(self.dim) - self.A


def shift_unitary(dim: int) -> np.ndarray:
    """Cyclic shift ``U e_j = e_(j+1 mod dim)``."""
    if dim < 2:
        raise ArgumentError("the shift model needs dimension at least 2")
    U = np.zeros((dim, dim), dtype=complex)
    U[(np.arange(dim) + 1) % dim, np.arange(dim)] = 1.0
    return U


def trap_operator(dim: int, probs, sites=None, vectors=None) -> np.ndarray:
    """Trap ``A = sum_j p_j |psi_j><psi_j|`` from basis sites or explicit vectors."""
    probs = np.asarray(probs, dtype=float)
    if probs.ndim != 1 or probs.size == 0:
        raise ArgumentError("the trap needs at least one eigenvalue")
    if (sites is None) == (vectors is None):
        raise ArgumentError("give the trap directions as either sites or vectors")
    if sites is not None:
        sites = np.asarray(sites, dtype=int)
        if sites.shape != probs.shape:
            raise ArgumentError("trap probabilities and sites must be parallel lists")
        if np.any(sites < 0) or np.any(sites >= dim) or np.unique(sites).size != sites.size:
            raise ArgumentError("trap sites must be distinct basis indices inside the space")
        basis = np.zeros((dim, probs.size), dtype=complex)
        basis[sites, np.arange(probs.size)] = 1.0
    else:
        basis = np.asarray(vectors, dtype=complex).T
        if basis.shape != (dim, probs.size):
            raise ArgumentError("trap vectors must be rows of length dim, one per eigenvalue")
        norms = np.linalg.norm(basis, axis=0)
        if np.any(norms == 0.0):
            raise ArgumentError("trap vectors must be nonzero")
        basis = basis / norms
    A = (basis * probs) @ basis.conj().T
    return 0.5 * (A + A.conj().T)


def shift_system(dim: int, trap_probs=(1.0,), trap_sites=(0,), trap_vectors=None) -> TrapSystem:
    """Cyclic shift with a finite-rank trap on basis sites or given states."""
    sites = None if trap_vectors is not None else trap_sites
    A = trap_operator(dim, trap_probs, sites=sites, vectors=trap_vectors)
    return TrapSystem(shift_unitary(dim), A)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Unitary from QR of a complex Gaussian, phase-fixed for uniqueness."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_system(dim: int, seed: int, trap_rank: int = 1, trap_probs=None) -> TrapSystem:
    """Seeded random system: Haar-like U and a rank-``trap_rank`` trap.

    Trap eigenvectors come from an independent draw, eigenvalues default to
    seeded uniforms on [0, 1].
    """
    if not 1 <= trap_rank <= dim:
        raise ArgumentError("trap rank must lie between 1 and dim")
    rng = np.random.default_rng(seed)
    U = haar_unitary(dim, rng)
    basis = haar_unitary(dim, rng)[:, :trap_rank]
    probs = rng.uniform(0.0, 1.0, trap_rank) if trap_probs is None else np.asarray(trap_probs, float)
    if probs.shape != (trap_rank,):
        raise ArgumentError("trap_probs must supply one eigenvalue per trap direction")
    if np.any(probs < 0.0) or np.any(probs > 1.0):
        raise ArgumentError("trap eigenvalues must lie in [0, 1]")
    A = (basis * probs) @ basis.conj().T
    A = 0.5 * (A + A.conj().T)
    return TrapSystem(U, A)


def state_moments(U, state, order: int) -> MomentSequence:
    """Moments ``mu^(m) = <phi, U^m phi>`` of a normalized state, m = 0..order."""
    U = np.asarray(U, dtype=complex)
    phi = np.asarray(state, dtype=complex)
    if order < 1:
        raise ArgumentError("moment order must be at least 1")
    norm = float(np.linalg.norm(phi))
    if norm == 0.0:
        raise ArgumentError("the trap state must be nonzero")
    phi = phi / norm
    coeffs = np.empty(order + 1, dtype=complex)
    coeffs[0] = 1.0
    v = phi
    for m in range(1, order + 1):
        v = U @ v
        coeffs[m] = np.vdot(phi, v)
    mags = np.abs(coeffs)
    over = (mags > 1.0) & (mags <= 1.0 + 1e-12)
    coeffs[over] /= mags[over]
    return MomentSequence(coeffs)


def trapped_number(system: TrapSystem, t: int) -> float:
    """Trace formula for the number caught up to time t: dim - ||(TU)^t||_F^2."""
    if t < 0:
        raise ArgumentError("time must be nonnegative")
    B = system.survival @ system.U
    P = np.eye(system.dim, dtype=complex)
    for _ in range(t):
        P = B @ P
    return float(system.dim - np.vdot(P, P).real)


def trap_current(system: TrapSystem, t: int) -> float:
    """Trace formula for the current at step t >= 1 (empty product at t = 1)."""
    if t < 1:
        raise ArgumentError("the current starts at t = 1")
    B = system.survival @ system.U
    C = np.eye(system.dim, dtype=complex)
    for _ in range(t - 1):
        C = B @ C
    absorb = np.eye(system.dim) - system.survival @ system.survival
    return float(np.trace(C @ absorb @ C.conj().T).real)


def trapped_number_series(system: TrapSystem, t_max: int) -> np.ndarray:
    """Trapped counts N(1..t_max) with one matrix product per step."""
    if t_max < 1:
        raise ArgumentError("t_max must be at least 1")
    B = system.survival @ system.U
    P = np.eye(system.dim, dtype=complex)
    out = np.empty(t_max)
    for t in range(1, t_max + 1):
        P = B @ P
        out[t - 1] = system.dim - np.vdot(P, P).real
    return out


def trap_current_series(system: TrapSystem, t_max: int) -> np.ndarray:
    """Currents J(1..t_max) by the trace formula, sharing the power iteration."""
    if t_max < 1:
        raise ArgumentError("t_max must be at least 1")
    B = system.survival @ system.U
    absorb = np.eye(system.dim) - system.survival @ system.survival
    C = np.eye(system.dim, dtype=complex)
    out = np.empty(t_max)
    for t in range(1, t_max + 1):
        out[t - 1] = float(np.trace(C @ absorb @ C.conj().T).real)
        C = B @ C
    return out


@dataclass
class GramOracle:
    """Toeplitz Gram matrix ``<U^-a phi, U^-b phi> = mu^(a-b)`` up to t_max."""

    moments: MomentSequence
    t_max: int
    gram: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.t_max < 1:
            raise ArgumentError("t_max must be at least 1")
        if self.moments.order < self.t_max:
            raise ArgumentError(
                f"Gram matrix to lag {self.t_max} needs moment order >= {self.t_max}"
            )
        n = self.t_max + 1
        gram = np.empty((n, n), dtype=complex)
        for a in range(n):
            for b in range(n):
                gram[a, b] = self.moments.at(a - b)
        evals = hermitian_eigvals(gram)
        if evals[0] < GRAM_FLOOR:
            raise InvalidMomentsError(
                f"Gram matrix has eigenvalue {evals[0]!r}; no measure has these moments"
            )
        self.gram = gram


def krylov_current(moment_seq: MomentSequence, t_max: int) -> np.ndarray:
    """Currents J(1..t_max) by sequential projections in Gram coordinates.

    The state starts at coordinate e_0; step s subtracts the Gram inner
    product against ``U^-s phi``.  This is the designated pre-build oracle
    that pins the sign convention of the moment recursion.
    """
    oracle = GramOracle(moment_seq, t_max)
    gram = oracle.gram
    c = np.zeros(t_max + 1, dtype=complex)
    c[0] = 1.0
    out = np.empty(t_max)
    out[0] = 1.0
    for s in range(1, t_max):
        c[s] -= (gram @ c)[s]
        norm_sq = float(np.real(np.conj(c) @ (gram @ c)))
        out[s] = max(norm_sq, 0.0)
    return out


def telescoping_residual(system: TrapSystem, t_max: int) -> float:
    """Largest deviation of N(t) from the partial sums of J(s)."""
    N = trapped_number_series(system, t_max)
    J = trap_current_series(system, t_max)
    partial = np.array([exact_sum(J[:t]) for t in range(1, t_max + 1)])
    return float(np.max(np.abs(N - partial)))
