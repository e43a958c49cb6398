"""Symmetric eigendecomposition (cyclic Jacobi) and sub-hypergraph centrality."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._validation import check_hypergraph, check_symmetric_matrix
from ..hypergraph import Hypergraph, adjacency_matrix


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        u, lam = self.eigenvectors, self.eigenvalues
        return (u * lam) @ u.T


def _canonical_signs(vecs: np.ndarray) -> np.ndarray:
    if vecs.size == 0:
        return vecs
    pivot = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[pivot, np.arange(vecs.shape[1])])
    signs[signs == 0] = 1.0
    return vecs * signs


def eigendecompose(a, tol=1e-10, max_sweeps=100) -> SpectralDecomposition:
    """Full eigendecomposition of a real symmetric matrix by cyclic Jacobi.

    Pairs ``(p, q)`` are visited in row order each sweep; a sweep ends the
    iteration once the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||A||_F)``.  Eigenvalues come back in descending order and
    each eigenvector's largest-magnitude component is made positive.
    """
    a = check_symmetric_matrix(a, "adjacency matrix").copy()
    n = a.shape[0]
    v = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(a)))

    off_mask = ~np.eye(n, dtype=bool)

    def off_norm():
        # summed directly: subtracting the diagonal from ||A||_F cancels badly
        return float(np.linalg.norm(a[off_mask]))

    sweeps = 0
    while off_norm() > tol * scale:
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                with np.errstate(over="ignore"):
                    tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:  # tau * tau would overflow
                    t = 1.0 / (2.0 * tau)
                elif tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]

    lam = np.diag(a).copy()
    order = np.argsort(-lam, kind="stable")
    return SpectralDecomposition(lam[order], _canonical_signs(v[:, order]), sweeps)


def subhypergraph_centrality(h: Hypergraph) -> np.ndarray:
    """Per-node weighted count of closed walks, ``sum_j u_ij^2 exp(lambda_j)``."""
    check_hypergraph(h)
    if h.n_nodes == 0:
        return np.zeros(0)
    dec = eigendecompose(adjacency_matrix(h))
    return (dec.eigenvectors ** 2) @ np.exp(dec.eigenvalues)
