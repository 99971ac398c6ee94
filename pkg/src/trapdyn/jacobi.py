"""Cyclic Jacobi eigendecomposition for Hermitian matrices.

Self-contained solver used for every Hermitian eigenproblem in the
package.  Pivots are visited in a fixed row-major order, each annihilated
by a phase factor followed by a real Givens rotation, so runs are
bit-deterministic.  Convergence is declared when the off-diagonal
Frobenius norm falls below ``tol`` relative to the matrix scale; a hard
sweep cap guards against stagnation.  Adequate up to a few hundred rows,
which covers every oracle in this package.
"""

import math

import numpy as np

from .errors import ArgumentError, ValidationError

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 30


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diagonal(a))
    return float(np.linalg.norm(off))


def hermitian_eig(matrix, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    Returns ``(w, v)`` with ``matrix @ v[:, i] == w[i] * v[:, i]``.  Raises
    if the input is not square or not Hermitian to roundoff.
    """
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ArgumentError("eigendecomposition needs a square matrix")
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    if float(np.max(np.abs(a - a.conj().T))) > 1e-10 * scale:
        raise ValidationError("matrix is not Hermitian to working accuracy")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    if n == 1:
        return a.real.diagonal().copy(), v

    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                cp = a[:, p].copy()
                cq = a[:, q]
                a[:, p] = c * cp - s * np.conj(phase) * cq
                a[:, q] = s * cp + c * np.conj(phase) * cq
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = c * rp - s * phase * rq
                a[q, :] = s * rp + c * phase * rq
                # the pivot is annihilated by construction; pin it exactly
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * vp + c * np.conj(phase) * vq

    w = a.real.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigvals(matrix, tol: float = DEFAULT_TOL) -> np.ndarray:
    return hermitian_eig(matrix, tol=tol)[0]
