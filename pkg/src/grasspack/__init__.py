"""Principal angles, equiangular subspace families, and packing bounds on
real Grassmannians."""

from .constructions import (
    LineSet,
    SubspaceFamily,
    chordal_lift,
    complement_family,
    icosahedral_lines,
    lift_lines_to_subspaces,
    orthonormal_lines,
    plucker_embed,
    plucker_line_family,
    simplex_lines,
)
from .grassmann import (
    Subspace,
    complement,
    complement_duality_check,
    principal_angles,
    principal_angles_recursive,
    projection_matrix,
    random_subspace,
    subspace_from_spanning,
)
from .linalg import (
    DEFAULT_TOL,
    TolerancePolicy,
    determinant,
    orthonormalize,
    singular_values,
    symmetric_eigenvalues,
)
from .metrics import METRICS, Metric, evaluate, get_metric
from .packing import PackingProblem, PackingResult, perturb, solve
from .verify import (
    Certificate,
    EquiangularReport,
    EquiisoclinicReport,
    bound_blokhuis,
    bound_chordal,
    bound_decaen,
    bound_fubini_study,
    bound_gerzon,
    bound_lemmens_seidel,
    bound_angle_distance,
    polynomial_certificate,
    check_equiangular,
    check_equiisoclinic,
    size_chrss,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "DEFAULT_TOL",
    "EquiangularReport",
    "EquiisoclinicReport",
    "LineSet",
    "METRICS",
    "Metric",
    "PackingProblem",
    "PackingResult",
    "Subspace",
    "SubspaceFamily",
    "TolerancePolicy",
    "bound_blokhuis",
    "bound_chordal",
    "bound_decaen",
    "bound_fubini_study",
    "bound_gerzon",
    "bound_lemmens_seidel",
    "bound_angle_distance",
    "polynomial_certificate",
    "check_equiangular",
    "check_equiisoclinic",
    "chordal_lift",
    "complement",
    "complement_duality_check",
    "complement_family",
    "determinant",
    "evaluate",
    "get_metric",
    "icosahedral_lines",
    "lift_lines_to_subspaces",
    "orthonormal_lines",
    "orthonormalize",
    "perturb",
    "plucker_embed",
    "plucker_line_family",
    "principal_angles",
    "principal_angles_recursive",
    "projection_matrix",
    "random_subspace",
    "simplex_lines",
    "singular_values",
    "size_chrss",
    "solve",
    "subspace_from_spanning",
    "symmetric_eigenvalues",
]
