"""Discrete Steklov spectrum of a graph with boundary.

The spectrum is computed as the eigenvalues of the Dirichlet-to-Neumann
matrix, i.e. the Schur complement of the interior block of the graph
Laplacian:

    Lambda = L_BB - L_BI L_II^{-1} L_IB

An independent check is :func:`minmax_oracle`, which never forms Lambda
and instead solves the generalized problem for the pair of quadratic forms
(edge energy, boundary mass) directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import cg

from .graph_boundary import GraphWithBoundary, InvalidGraphError, Violation
from .jacobi import jacobi_eigh

__all__ = [
    "SteklovSpectrum",
    "SigmaOneUndefined",
    "ZeroBoundaryNorm",
    "OracleSizeError",
    "laplacian_apply",
    "normal_derivative",
    "harmonic_extension",
    "dtn_matrix",
    "spectrum",
    "rayleigh",
    "minmax_oracle",
    "oracle_spectrum",
    "DENSE_INTERIOR_MAX",
]

DENSE_INTERIOR_MAX = 4000
CG_RTOL = 1e-12


class SigmaOneUndefined(ValueError):
    """sigma_1 needs at least two boundary vertices."""


class ZeroBoundaryNorm(ValueError):
    """The function vanishes on the whole boundary; the Rayleigh quotient is undefined."""


class OracleSizeError(ValueError):
    pass


def _as_vertex_function(g: GraphWithBoundary, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (g.n,):
        raise ValueError(f"expected a function on {g.n} vertices, got shape {v.shape}")
    return v


def laplacian_apply(g: GraphWithBoundary, v) -> np.ndarray:
    """(Lap v)(i) = sum over neighbours j of v(i) - v(j)."""
    v = _as_vertex_function(g, v)
    return g.laplacian @ v


def normal_derivative(g: GraphWithBoundary, v) -> np.ndarray:
    """Outward normal derivative on the boundary, in boundary-index order.

    Only interior neighbours contribute.
    """
    v = _as_vertex_function(g, v)
    out = np.zeros(g.b)
    pos = {int(i): k for k, i in enumerate(g.boundary_indices)}
    for i, j in g.edges:
        bi, bj = g.boundary[i], g.boundary[j]
        if bi and not bj:
            out[pos[i]] += v[i] - v[j]
        elif bj and not bi:
            out[pos[j]] += v[j] - v[i]
    return out


class _InteriorSolver:
    """Solves L_II x = rhs, reusing one factorization for many right-hand sides."""

    def __init__(self, g: GraphWithBoundary):
        L = g.laplacian
        I, B = g.interior_indices, g.boundary_indices
        self.L_II = L[I][:, I]
        self.L_IB = L[I][:, B]
        self.L_BB = L[B][:, B]
        self.n_int = len(I)
        self.dense = self.n_int <= DENSE_INTERIOR_MAX
        if self.n_int and self.dense:
            try:
                self.factor = scipy.linalg.cho_factor(self.L_II.toarray(), lower=True)
            except np.linalg.LinAlgError as exc:
                # L_II is positive definite whenever the graph is connected
                raise InvalidGraphError([Violation("disconnected", ("interior block is singular",))]) from exc

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        if self.n_int == 0:
            return np.zeros((0,) + rhs.shape[1:])
        if self.dense:
            return scipy.linalg.cho_solve(self.factor, rhs)
        rhs2 = rhs.reshape(self.n_int, -1)
        out = np.empty_like(rhs2, dtype=float)
        for k in range(rhs2.shape[1]):
            x, info = cg(self.L_II, rhs2[:, k], rtol=CG_RTOL, atol=0.0, maxiter=20 * self.n_int)
            if info != 0:
                raise RuntimeError(f"conjugate gradient did not converge (info={info})")
            out[:, k] = x
        return out.reshape(rhs.shape)


def _require_boundary(g: GraphWithBoundary) -> None:
    if g.b == 0:
        raise InvalidGraphError([Violation("empty_boundary")])


def harmonic_extension(g: GraphWithBoundary, f) -> np.ndarray:
    """The unique v with v = f on B and (Lap v)(i) = 0 at every interior vertex."""
    _require_boundary(g)
    f = np.asarray(f, dtype=float)
    if f.shape != (g.b,):
        raise ValueError(f"expected a boundary function of length {g.b}, got shape {f.shape}")
    solver = _InteriorSolver(g)
    v = np.empty(g.n)
    v[g.boundary_indices] = f
    v[g.interior_indices] = solver.solve(-(solver.L_IB @ f))
    return v


def _dtn(solver: _InteriorSolver, symmetrize: bool = True) -> np.ndarray:
    L_BB = solver.L_BB.toarray()
    if solver.n_int == 0:
        Lam = L_BB
    else:
        X = solver.solve(-solver.L_IB.toarray())
        Lam = L_BB + solver.L_IB.T @ X
    return 0.5 * (Lam + Lam.T) if symmetrize else Lam


def _relative_asymmetry(Lam: np.ndarray) -> float:
    scale = float(np.abs(Lam).max()) or 1.0
    return float(np.abs(Lam - Lam.T).max()) / scale


def dtn_matrix(g: GraphWithBoundary, symmetrize: bool = True) -> np.ndarray:
    """Dirichlet-to-Neumann matrix on the boundary vertices (boundary-index order).

    With ``symmetrize=False`` the raw Schur complement is returned, which is
    symmetric only up to roundoff.
    """
    _require_boundary(g)
    return _dtn(_InteriorSolver(g), symmetrize)


@dataclass
class SteklovSpectrum:
    """Steklov eigenvalues with boundary eigenvectors and their harmonic extensions.

    ``eigenvectors[:, k]`` lives on the boundary (ordered as
    ``boundary_indices``); ``extensions[:, k]`` is its harmonic extension to
    all vertices.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    extensions: np.ndarray
    boundary_indices: np.ndarray
    dtn: np.ndarray
    residuals: dict = field(default_factory=dict)

    @property
    def b(self) -> int:
        return len(self.eigenvalues)

    @property
    def sigma1(self) -> float:
        if self.b < 2:
            raise SigmaOneUndefined("sigma_1 undefined: the boundary has a single vertex")
        return float(self.eigenvalues[1])

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "sigma1": float(self.eigenvalues[1]) if self.b >= 2 else None,
            "residuals": dict(self.residuals),
        }


def _fix_signs(V: np.ndarray) -> np.ndarray:
    # first entry of largest magnitude made positive, for reproducible output
    V = V.copy()
    for k in range(V.shape[1]):
        i = int(np.argmax(np.abs(V[:, k]) > np.abs(V[:, k]).max() * (1 - 1e-9)))
        if V[i, k] < 0:
            V[:, k] = -V[:, k]
    return V


def spectrum(g: GraphWithBoundary, method: str = "lapack", tol: float = 1e-12) -> SteklovSpectrum:
    """Full Steklov spectrum of ``g``.

    Parameters
    ----------
    method : {"lapack", "jacobi"}
        Dense symmetric eigensolver applied to the DtN matrix. ``"jacobi"``
        is the pure cyclic Jacobi iteration stopped at off-diagonal norm
        ``tol * ||Lambda||_F``; ``"lapack"`` calls ``scipy.linalg.eigh``.
    """
    _require_boundary(g)
    solver = _InteriorSolver(g)
    raw = _dtn(solver, symmetrize=False)
    Lam = 0.5 * (raw + raw.T)
    if method == "jacobi":
        w, U = jacobi_eigh(Lam, tol=tol)
    elif method == "lapack":
        w, U = scipy.linalg.eigh(Lam)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    U = _fix_signs(U)
    ext = np.empty((g.n, len(w)))
    ext[g.boundary_indices] = U
    if solver.n_int:
        ext[g.interior_indices] = solver.solve(-(solver.L_IB @ U))
    LV = g.laplacian @ ext
    interior_res = float(np.abs(LV[g.interior_indices]).max()) if solver.n_int else 0.0
    bnd_res = float(np.abs(LV[g.boundary_indices] - U * w).max())
    residuals = {
        "interior_laplacian": interior_res,
        "boundary_equation": bnd_res,
        "dtn_asymmetry": _relative_asymmetry(raw),
        "row_sum": float(np.abs(Lam.sum(axis=1)).max()),
    }
    return SteklovSpectrum(w, U, ext, g.boundary_indices.copy(), Lam, residuals)


def rayleigh(g: GraphWithBoundary, v) -> float:
    """Edge energy over boundary mass; each unordered edge counted once."""
    v = _as_vertex_function(g, v)
    denom = float(np.sum(v[g.boundary_indices] ** 2))
    if denom == 0.0:
        raise ZeroBoundaryNorm("function vanishes on the boundary")
    if g.edges:
        e = np.asarray(g.edges)
        num = float(np.sum((v[e[:, 0]] - v[e[:, 1]]) ** 2))
    else:
        num = 0.0
    return num / denom


def oracle_spectrum(g: GraphWithBoundary, max_vertices: int = 32, shift: float = 1.0) -> np.ndarray:
    """All finite eigenvalues of the pencil (Q, M) without going through the DtN matrix.

    Q(v) is the edge energy and M(v) the boundary mass. Vectors vanishing on
    the boundary are infinite eigenvalues of the pencil; they are deflated by
    solving the definite problem M x = mu (Q + shift M) x, where they show up
    as mu = 0, and mapping the b nonzero mu back through sigma = 1/mu - shift.
    """
    if g.n > max_vertices:
        raise OracleSizeError(f"oracle limited to {max_vertices} vertices, graph has {g.n}")
    _require_boundary(g)
    Q = np.zeros((g.n, g.n))
    for i, j in g.edges:
        Q[i, i] += 1.0
        Q[j, j] += 1.0
        Q[i, j] -= 1.0
        Q[j, i] -= 1.0
    M = np.diag(np.asarray(g.boundary, dtype=float))
    mu = scipy.linalg.eigh(M, Q + shift * M, eigvals_only=True)
    top = np.sort(mu)[::-1][: g.b]
    return np.sort(1.0 / top - shift)


def minmax_oracle(g: GraphWithBoundary, j: int, max_vertices: int = 32) -> float:
    """sigma_j from the min-max characterization, computed without the DtN route."""
    if not 0 <= j < g.b:
        raise IndexError(f"index {j} out of range for {g.b} boundary vertices")
    return float(oracle_spectrum(g, max_vertices=max_vertices)[j])
