"""Subspaces of R^n and the principal-angle machinery.

A subspace is held as an orthonormal n x k representative matrix; all angle
computations reduce to singular values of the k x k cross-Gram U^T V, with a
slower recursive-maximization route kept as an independent structural check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, FullDimensionError
from .linalg import (
    DEFAULT_TOL,
    TolerancePolicy,
    as_matrix,
    clamp_unit_interval,
    jacobi_svd,
    orthonormalize,
    singular_values,
)

# Entries below this are treated as zero when picking the sign-convention pivot.
_SIGN_PIVOT_TOL = 1e-10


def sign_fix_columns(q: np.ndarray, zero_tol: float = _SIGN_PIVOT_TOL) -> np.ndarray:
    """Flip column signs so each column's first entry above `zero_tol` is positive."""
    q = np.array(q, dtype=float)
    for j in range(q.shape[1]):
        nz = np.flatnonzero(np.abs(q[:, j]) > zero_tol)
        if nz.size and q[nz[0], j] < 0.0:
            q[:, j] = -q[:, j]
    return q


@dataclass(frozen=True, eq=False)
class Subspace:
    """A k-dimensional subspace of R^n held as an orthonormal n x k representative."""

    rep: np.ndarray

    def __post_init__(self) -> None:
        rep = as_matrix(self.rep).copy()
        n, k = rep.shape
        if k > n:
            raise ValueError(f"subspace dimension {k} exceeds ambient dimension {n}")
        residual = float(np.max(np.abs(rep.T @ rep - np.eye(k))))
        if residual > DEFAULT_TOL.eps_orth:
            raise ValueError(
                f"representative is not orthonormal (residual {residual:.3e})"
            )
        rep.setflags(write=False)
        object.__setattr__(self, "rep", rep)

    @property
    def n(self) -> int:
        return self.rep.shape[0]

    @property
    def k(self) -> int:
        return self.rep.shape[1]

    def __repr__(self) -> str:
        return f"Subspace(k={self.k}, n={self.n})"


def subspace_from_spanning(a, tol: TolerancePolicy = DEFAULT_TOL) -> Subspace:
    """Subspace spanned by the columns of `a`, with the canonical sign-fixed basis."""
    return Subspace(sign_fix_columns(orthonormalize(a, tol)))


def random_subspace(n: int, k: int, rng: np.random.Generator) -> Subspace:
    """Haar-uniform random element of Gr(k, n) (QR of a Gaussian matrix)."""
    return subspace_from_spanning(rng.standard_normal((n, k)))


def require_same_grassmannian(u: Subspace, v: Subspace) -> None:
    if u.n != v.n or u.k != v.k:
        raise DimensionMismatchError(
            f"subspaces live on different Grassmannians: "
            f"Gr({u.k},{u.n}) vs Gr({v.k},{v.n})"
        )


def principal_angles(
    u: Subspace, v: Subspace, tol: TolerancePolicy = DEFAULT_TOL
) -> np.ndarray:
    """Principal angles in radians, ascending, via singular values of U^T V."""
    require_same_grassmannian(u, v)
    sig = singular_values(u.rep.T @ v.rep, tol)
    return np.array([np.arccos(clamp_unit_interval(s)) for s in sig])


def principal_angles_recursive(
    u: Subspace, v: Subspace, tol: TolerancePolicy = DEFAULT_TOL
) -> np.ndarray:
    """Principal angles by recursive maximization (slow; test oracle).

    Each step takes the top singular pair of the current cross-Gram matrix --
    the exact maximizer of <u, v> over unit vectors in the two subspaces --
    records its angle, and deflates both subspaces to the orthogonal
    complements of the maximizers.
    """
    require_same_grassmannian(u, v)
    basis_u = np.array(u.rep)
    basis_v = np.array(v.rep)
    angles: list[float] = []
    while basis_u.shape[1] > 0:
        left, sig, right = jacobi_svd(basis_u.T @ basis_v, tol)
        top = float(sig[0])
        if top <= 1e-13:
            # remaining directions are pairwise orthogonal
            angles.extend([np.pi / 2.0] * basis_u.shape[1])
            break
        angles.append(float(np.arccos(clamp_unit_interval(top))))
        if basis_u.shape[1] == 1:
            break
        basis_u = _deflate(basis_u, basis_u @ left[:, 0])
        basis_v = _deflate(basis_v, basis_v @ right[:, 0])
    return np.sort(np.array(angles))


def _deflate(basis: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the complement of unit vector w inside span(basis)."""
    coeff = basis.T @ w  # unit vector in the basis coordinates
    inner = _complete_basis(coeff.reshape(-1, 1), np.eye(basis.shape[1]))
    return basis @ inner


def _complete_basis(
    seed: np.ndarray, extra: np.ndarray, drop_tol: float = 1e-8
) -> np.ndarray:
    """Columns extending the orthonormal `seed` block to span seed + extra.

    Runs modified Gram-Schmidt over the `extra` columns against the seed and
    previously accepted columns, skipping the ones that turn out dependent.
    """
    found = [seed[:, j].copy() for j in range(seed.shape[1])]
    new: list[np.ndarray] = []
    for j in range(extra.shape[1]):
        col = extra[:, j].astype(float).copy()
        for _ in range(2):
            for q in found:
                col -= (q @ col) * q
        norm = float(np.linalg.norm(col))
        if norm > drop_tol:
            col /= norm
            found.append(col)
            new.append(col)
    return np.column_stack(new) if new else np.zeros((seed.shape[0], 0))


def projection_matrix(u: Subspace) -> np.ndarray:
    """Orthogonal projector U U^T onto the subspace (basis-independent)."""
    return u.rep @ u.rep.T


def complement(u: Subspace, tol: TolerancePolicy = DEFAULT_TOL) -> Subspace:
    """Orthogonal complement in Gr(n-k, n)."""
    if u.k == u.n:
        raise FullDimensionError(
            f"subspace fills R^{u.n}; its complement is the zero space"
        )
    ext = _complete_basis(np.asarray(u.rep), np.eye(u.n))
    if ext.shape[1] != u.n - u.k:
        raise RuntimeError("complement basis completion lost rank")
    return Subspace(sign_fix_columns(ext))


def nonzero_angles(spectrum: np.ndarray, eps_angle: float) -> np.ndarray:
    """Angles above the numerical-zero threshold, order preserved."""
    spectrum = np.asarray(spectrum, dtype=float)
    return spectrum[spectrum > eps_angle]


def complement_duality_check(
    u: Subspace,
    v: Subspace,
    tol: float = 1e-8,
    tol_policy: TolerancePolicy = DEFAULT_TOL,
) -> bool:
    """True iff the nonzero principal angles of (U, V) match those of (U-perp, V-perp).

    Multisets are compared as sorted lists after filtering angles <= eps_angle;
    a count mismatch is an immediate False.
    """
    require_same_grassmannian(u, v)
    direct = nonzero_angles(principal_angles(u, v, tol_policy), tol_policy.eps_angle)
    dual = nonzero_angles(
        principal_angles(complement(u, tol_policy), complement(v, tol_policy), tol_policy),
        tol_policy.eps_angle,
    )
    if direct.size != dual.size:
        return False
    if direct.size == 0:
        return True
    return bool(np.max(np.abs(direct - dual)) <= tol)
