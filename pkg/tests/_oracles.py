"""Independent oracles used by the tests.

These deliberately avoid the package's own decompositions: eigenvalues come
from characteristic-polynomial roots, determinants from cofactor expansion,
and projectors from the normal equations.
"""

import numpy as np


def charpoly_coefficients(a: np.ndarray) -> np.ndarray:
    """Characteristic polynomial coefficients via Faddeev-LeVerrier.

    Returns [1, c1, ..., cn] with det(xI - A) = x^n + c1 x^(n-1) + ... + cn.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    coeffs = [1.0]
    m = np.zeros_like(a)
    for i in range(1, n + 1):
        m = a @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-float(np.trace(a @ m)) / i)
    return np.array(coeffs)


def charpoly_eigenvalues(a: np.ndarray) -> np.ndarray:
    """Eigenvalues as roots of the characteristic polynomial, descending."""
    roots = np.roots(charpoly_coefficients(a))
    return np.sort(np.real(roots))[::-1]


def cofactor_det(a: np.ndarray) -> float:
    """Determinant by recursive cofactor expansion along the first row."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1.0) ** j * a[0, j] * cofactor_det(minor)
    return total


def projector_normal_equations(a: np.ndarray) -> np.ndarray:
    """Least-squares projector A (A^T A)^-1 A^T onto the column span of A."""
    a = np.asarray(a, dtype=float)
    return a @ np.linalg.solve(a.T @ a, a.T)
