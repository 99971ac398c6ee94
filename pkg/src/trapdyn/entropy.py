"""Entropy of quasi-free Fermionic states driven through a local trap.

A state is specified by a one-particle symbol 0 <= Q <= 1; its entropy is
``Tr(eta(Q) + eta(1 - Q))`` with ``eta(x) = -x ln x``.  The module builds
the purification of Q on a doubled space, the refined symbol obtained by
pushing a partition (V, W) through it, the evolved defect operator

    D_t = 1 - V_t* V_t,   V_t = (V U)^t U^-t,

and the exact entropy of the homogeneous state at filling kappa together
with its concavity lower bound ``(eta(kappa) + eta(1-kappa)) Tr D_t``.
All entropies are in nats.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ValidationError
from .jacobi import hermitian_eig, hermitian_eigvals
from .util import exact_sum

SYMBOL_BAND = 1e-10
AUX_SPACE_CUT = 1e-12
SPECTRUM_REPORT_CUT = 1e-13


def eta(x: float) -> float:
    """The entropy function -x ln x, zero at both endpoints."""
    if x < -SYMBOL_BAND or x > 1.0 + SYMBOL_BAND:
        raise ArgumentError(f"eta expects a value in [0, 1], got {x!r}")
    x = min(max(float(x), 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log(x)


def _eta_array(xs: np.ndarray) -> np.ndarray:
    xs = np.clip(xs, 0.0, 1.0)
    out = np.zeros_like(xs)
    inner = (xs > 0.0) & (xs < 1.0)
    out[inner] = -xs[inner] * np.log(xs[inner])
    return out


@dataclass
class Symbol:
    """A one-particle symbol: Hermitian with spectrum in [0, 1]."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError("a symbol must be a square matrix")
        if float(np.max(np.abs(m - m.conj().T))) > SYMBOL_BAND:
            raise ValidationError("a symbol must be Hermitian")
        m = 0.5 * (m + m.conj().T)
        evals = hermitian_eigvals(m)
        if evals[0] < -SYMBOL_BAND or evals[-1] > 1.0 + SYMBOL_BAND:
            raise ValidationError("symbol eigenvalues must lie in [0, 1]")
        self.matrix = m

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])


@dataclass
class EntropyReport:
    """Exact refined entropy at one time step and its trapped-count bound."""

    t: int | None
    kappa: float
    defect_spectrum: np.ndarray
    trace_defect: float
    h_exact: float
    h_lower: float

    def __post_init__(self):
        if self.h_lower > self.h_exact + 1e-10:
            raise ValidationError("concavity bound exceeded the exact entropy")


def state_entropy(symbol: Symbol) -> float:
    """Entropy Tr(eta(Q) + eta(1-Q)); zero exactly for projector symbols."""
    w = np.clip(hermitian_eigvals(symbol.matrix), 0.0, 1.0)
    return exact_sum(_eta_array(w) + _eta_array(1.0 - w))


def _aux_blocks(symbol: Symbol):
    """Eigen-data of Q and the basis of the auxiliary space K = ran Q(1-Q)."""
    w, v = hermitian_eig(symbol.matrix)
    w = np.clip(w, 0.0, 1.0)
    prod = w * (1.0 - w)
    keep = prod > AUX_SPACE_CUT
    root = v @ np.diag(np.sqrt(prod)) @ v.conj().T
    return w, v, root, v[:, keep]


def purify(symbol: Symbol) -> Symbol:
    """Projector on the doubled space whose first block restricts back to Q.

    The auxiliary block lives on the span of eigenvectors of Q(1-Q) above
    the truncation cut; a projector symbol has an empty auxiliary space and
    purifies to itself.
    """
    _, _, root, basis = _aux_blocks(symbol)
    d = symbol.dim
    k = basis.shape[1]
    out = np.empty((d + k, d + k), dtype=complex)
    out[:d, :d] = symbol.matrix
    out[:d, d:] = root @ basis
    out[d:, :d] = out[:d, d:].conj().T
    out[d:, d:] = basis.conj().T @ (np.eye(d) - symbol.matrix) @ basis
    return Symbol(out)


def partition_symbol(symbol: Symbol, V, W) -> Symbol:
    """Symbol of the state pushed through a quasi-free partition (V, W).

    Requires 0 <= W <= 1 - V*V.  The result lives on the original space
    plus the auxiliary purification space; with V = 1, W = 0 it degenerates
    to the purification itself.
    """
    V = np.asarray(V, dtype=complex)
    W = np.asarray(W, dtype=complex)
    d = symbol.dim
    if V.shape != (d, d) or W.shape != (d, d):
        raise ArgumentError("V and W must match the symbol dimension")
    if float(np.max(np.abs(W - W.conj().T))) > SYMBOL_BAND:
        raise ArgumentError("W must be Hermitian")
    if hermitian_eigvals(0.5 * (W + W.conj().T))[0] < -SYMBOL_BAND:
        raise ArgumentError("W must be nonnegative")
    slack = np.eye(d) - V.conj().T @ V - W
    if hermitian_eigvals(0.5 * (slack + slack.conj().T))[0] < -SYMBOL_BAND:
        raise ArgumentError("the partition needs W <= 1 - V*V")
    _, _, root, basis = _aux_blocks(symbol)
    k = basis.shape[1]
    out = np.empty((d + k, d + k), dtype=complex)
    out[:d, :d] = V.conj().T @ symbol.matrix @ V + W
    out[:d, d:] = V.conj().T @ root @ basis
    out[d:, :d] = basis.conj().T @ root @ V
    out[d:, d:] = basis.conj().T @ (np.eye(d) - symbol.matrix) @ basis
    return Symbol(out)


def evolved_defect(U, V, t: int) -> np.ndarray:
    """Defect operator ``1 - V_t* V_t`` of the t-fold refined partition."""
    if t < 1:
        raise ArgumentError("the defect operator starts at t = 1")
    U = np.asarray(U, dtype=complex)
    V = np.asarray(V, dtype=complex)
    if U.shape != V.shape or U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ArgumentError("U and V must be square matrices of equal size")
    dim = U.shape[0]
    if float(np.max(np.abs(U @ U.conj().T - np.eye(dim)))) > 1e-12:
        raise ValidationError("U is not unitary to working accuracy")
    gram = V.conj().T @ V
    if hermitian_eigvals(0.5 * (gram + gram.conj().T))[-1] > 1.0 + SYMBOL_BAND:
        raise ValidationError("V must be a contraction")
    vt = np.linalg.matrix_power(V @ U, t) @ np.linalg.matrix_power(U.conj().T, t)
    defect = np.eye(dim) - vt.conj().T @ vt
    return 0.5 * (defect + defect.conj().T)


def refined_entropy(kappa: float, defect, t: int | None = None) -> EntropyReport:
    """Exact refined entropy at filling kappa and its trapped-count bound.

    ``defect`` is either the Hermitian matrix D_t or directly its spectrum.
    The exact value is ``sum eta(1 - kappa d) + eta(kappa d)`` over the
    defect eigenvalues d; concavity of eta gives the lower bound
    ``(eta(kappa) + eta(1 - kappa)) Tr D_t``, tight exactly when every d is
    0 or 1.
    """
    if not 0.0 < kappa < 1.0:
        raise ArgumentError("the filling kappa must lie strictly between 0 and 1")
    defect = np.asarray(defect, dtype=complex)
    if defect.ndim == 2:
        spectrum = hermitian_eigvals(defect)
    elif defect.ndim == 1:
        if float(np.max(np.abs(defect.imag))) > 0.0:
            raise ArgumentError("a defect spectrum must be real")
        spectrum = np.sort(defect.real)
    else:
        raise ArgumentError("defect must be a matrix or a spectrum")
    if spectrum.size and (spectrum[0] < -SYMBOL_BAND or spectrum[-1] > 1.0 + SYMBOL_BAND):
        raise ValidationError("defect eigenvalues must lie in [0, 1]")
    spectrum = np.clip(spectrum, 0.0, 1.0)
    trace = exact_sum(spectrum)
    h_exact = exact_sum(_eta_array(1.0 - kappa * spectrum) + _eta_array(kappa * spectrum))
    h_lower = (eta(kappa) + eta(1.0 - kappa)) * trace
    reported = spectrum[np.abs(spectrum) > SPECTRUM_REPORT_CUT]
    return EntropyReport(
        t=t,
        kappa=float(kappa),
        defect_spectrum=np.sort(reported)[::-1].copy(),
        trace_defect=trace,
        h_exact=h_exact,
        h_lower=h_lower,
    )
