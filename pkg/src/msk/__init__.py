"""Exact computations with multisymplectic forms on polynomial charts."""

from msk.exterior import (
    AlternatingTensor,
    FlatMatrix,
    StructureError,
    basis_indices,
    flat_matrix,
    interior,
    is_decomposable,
    is_j_nondegenerate,
    wedge,
)
from msk.forms import (
    Chart,
    DifferentialForm,
    MultiVectorField,
    PolyMap,
    PreconditionError,
    exterior_derivative,
    homotopy_inverse_d,
    lie_bracket,
    lie_derivative,
    pullback,
)
from msk.hamiltonian import certify, solve_hamiltonian_field
from msk.homogeneity import check_local_homogeneity, hamiltonian_span_rank, invariance_probe
from msk.models import (
    DarbouxModel,
    build_darboux,
    build_darboux_horizontal,
    check_type_conditions,
    tautological_eval,
)
from msk.orthogonality import Subspace, classify, is_maximal_isotropic, orth_complement
from msk.polynomial import Polynomial, parse_polynomial

__version__ = "0.1.0"
