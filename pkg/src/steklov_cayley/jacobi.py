"""Cyclic Jacobi eigensolver for dense symmetric matrices."""
from __future__ import annotations

import numpy as np

__all__ = ["jacobi_eigh", "JacobiNotConverged"]


class JacobiNotConverged(RuntimeError):
    pass


def off_norm(A: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part."""
    return float(np.sqrt(max(np.sum(A * A) - np.sum(np.diag(A) ** 2), 0.0)))


def jacobi_eigh(A, tol: float = 1e-12, max_sweeps: int = 60):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps visit the pairs (p, q), p < q, in row-major order, so the result
    is bitwise reproducible for a given input. Iteration stops once the
    off-diagonal Frobenius norm is at most ``tol * ||A||_F``.

    Returns
    -------
    w : ndarray
        Eigenvalues in ascending order.
    V : ndarray
        Orthonormal eigenvectors, ``V[:, k]`` belonging to ``w[k]``.
    """
    A = np.array(A, dtype=float, copy=True)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    A = 0.5 * (A + A.T)
    V = np.eye(n)
    fro = float(np.linalg.norm(A))
    thresh = tol * fro
    for _ in range(max_sweeps):
        if off_norm(A) <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                ap = A[:, p].copy()
                aq = A[:, q]
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap = A[p, :].copy()
                aq = A[q, :]
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q]
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        if off_norm(A) > thresh:
            raise JacobiNotConverged(f"off-diagonal norm {off_norm(A):.3e} after {max_sweeps} sweeps")
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]
