"""The distance zoo over principal-angle spectra, as a uniform registry.

Angle distances (theta_1, theta_F, theta_k) return one of the principal
angles; chordal, geodesic and Fubini-Study are derived functions of the
spectrum.  All evaluators are pure and symmetric in their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnknownMetricError
from .grassmann import Subspace, principal_angles, require_same_grassmannian
from .linalg import DEFAULT_TOL, TolerancePolicy, clamp_unit_interval, determinant


@dataclass(frozen=True)
class Metric:
    """Registry entry: identifier plus the classification flags."""

    id: str
    cli_name: str
    is_angle_distance: bool
    is_proper: bool


THETA_1 = Metric("theta_1", "theta1", is_angle_distance=True, is_proper=False)
THETA_F = Metric("theta_F", "thetaF", is_angle_distance=True, is_proper=True)
THETA_K = Metric("theta_k", "thetaK", is_angle_distance=True, is_proper=True)
CHORDAL = Metric("chordal", "chordal", is_angle_distance=False, is_proper=True)
GEODESIC = Metric("geodesic", "geodesic", is_angle_distance=False, is_proper=True)
FUBINI_STUDY = Metric(
    "fubini_study", "fubini-study", is_angle_distance=False, is_proper=True
)

METRICS: dict[str, Metric] = {
    m.id: m for m in (THETA_1, THETA_F, THETA_K, CHORDAL, GEODESIC, FUBINI_STUDY)
}


def get_metric(name) -> Metric:
    """Look a metric up by id ("theta_F") or CLI name ("thetaF")."""
    if isinstance(name, Metric):
        return name
    for metric in METRICS.values():
        if name in (metric.id, metric.cli_name):
            return metric
    known = ", ".join(m.cli_name for m in METRICS.values())
    raise UnknownMetricError(f"unknown metric {name!r}; known: {known}")


def theta_1(spectrum) -> float:
    """Smallest principal angle (minimum angle between any pair of vectors)."""
    return float(np.asarray(spectrum)[0])


def theta_F(spectrum, eps_angle: float = DEFAULT_TOL.eps_angle) -> float:
    """Smallest nonzero principal angle; 0 when all angles are numerically zero.

    The zero return covers U = V, where there is no nonzero angle to take the
    minimum over; this keeps theta_F a proper distance.
    """
    spectrum = np.asarray(spectrum, dtype=float)
    nz = spectrum[spectrum > eps_angle]
    return float(nz[0]) if nz.size else 0.0


def theta_k(spectrum) -> float:
    """Largest principal angle."""
    return float(np.asarray(spectrum)[-1])


def chordal(spectrum) -> float:
    """sqrt(sum of sin^2 theta_i)."""
    spectrum = np.asarray(spectrum, dtype=float)
    return float(np.sqrt(np.sum(np.sin(spectrum) ** 2)))


def geodesic(spectrum) -> float:
    """sqrt(sum of theta_i^2): Riemannian distance on the Grassmannian."""
    spectrum = np.asarray(spectrum, dtype=float)
    return float(np.sqrt(np.sum(spectrum**2)))


def fubini_study(u: Subspace, v: Subspace, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """arccos|det(U^T V)|, computed in determinant form (no angle extraction)."""
    require_same_grassmannian(u, v)
    return float(np.arccos(clamp_unit_interval(abs(determinant(u.rep.T @ v.rep)))))


def fubini_study_from_spectrum(spectrum) -> float:
    """Product-of-cosines form of the Fubini-Study distance (cross-check route)."""
    spectrum = np.asarray(spectrum, dtype=float)
    return float(np.arccos(clamp_unit_interval(float(np.prod(np.cos(spectrum))))))


def chordal_trace_form(u: Subspace, v: Subspace) -> float:
    """sqrt(k - tr(V^T U U^T V)) trace form (cross-check route).

    tr(V^T U U^T V) equals the squared Frobenius norm of U^T V.
    """
    require_same_grassmannian(u, v)
    g = u.rep.T @ v.rep
    return float(np.sqrt(max(float(u.k) - float(np.sum(g * g)), 0.0)))


_FROM_SPECTRUM = {
    "theta_1": theta_1,
    "theta_k": theta_k,
    "chordal": chordal,
    "geodesic": geodesic,
    "fubini_study": fubini_study_from_spectrum,
}


def from_spectrum(
    metric, spectrum, eps_angle: float = DEFAULT_TOL.eps_angle
) -> float:
    """Evaluate a metric on a precomputed angle spectrum."""
    metric = get_metric(metric)
    if metric.id == "theta_F":
        return theta_F(spectrum, eps_angle)
    return _FROM_SPECTRUM[metric.id](spectrum)


def evaluate(metric, u: Subspace, v: Subspace, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """Distance between two subspaces under `metric` (Metric, id, or CLI name)."""
    metric = get_metric(metric)
    require_same_grassmannian(u, v)
    if metric.id == "fubini_study":
        return fubini_study(u, v, tol)
    return from_spectrum(metric, principal_angles(u, v, tol), tol.eps_angle)
