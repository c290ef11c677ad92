"""Locally Hamiltonian multivector fields and their Hamiltonian forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from msk import linalg
from msk.exterior import basis_indices, flat_matrix
from msk.forms import (
    DifferentialForm,
    MultiVectorField,
    PreconditionError,
    exterior_derivative,
    homotopy_inverse_d,
    interior,
)
from msk.polynomial import Polynomial, monomials_up_to

NOT_CLOSED = "not_closed"
LOCALLY_HAMILTONIAN = "locally_hamiltonian"
HAMILTONIAN = "hamiltonian"


@dataclass(frozen=True)
class HamiltonianCertificate:
    field: MultiVectorField
    degree: int
    contraction: DifferentialForm
    verdict: str
    locally_hamiltonian: bool
    hamiltonian: bool
    hamiltonian_form: Optional[DifferentialForm] = None


def certify(X: MultiVectorField, omega: DifferentialForm) -> HamiltonianCertificate:
    """Classify X against a closed form.

    On a polynomial chart every closed form of positive degree is exact, so
    whenever the contraction is closed the certificate carries a primitive.
    """
    if not exterior_derivative(omega).is_zero():
        raise PreconditionError("the form is not closed")
    m = X.degree
    if m >= omega.degree:
        raise ValueError(f"field degree {m} must be below the form degree {omega.degree}")
    beta = interior(X, omega)
    if not exterior_derivative(beta).is_zero():
        return HamiltonianCertificate(X, m, beta, NOT_CLOSED, False, False)
    zeta = homotopy_inverse_d(beta)
    return HamiltonianCertificate(X, m, beta, HAMILTONIAN, True, True, zeta)


@dataclass(frozen=True)
class HamiltonianSolution:
    """Result of solving ``i(X) Omega = d zeta`` within a degree bound.

    ``particular`` is None when no solution exists within the bound.
    """

    particular: Optional[MultiVectorField]
    homogeneous: tuple[MultiVectorField, ...] = field(default_factory=tuple)
    reason: str = ""

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def _require_constant(omega: DifferentialForm):
    if any(not c.is_constant() for c in omega.components.values()):
        raise ValueError("solve_hamiltonian_field needs a constant-coefficient form")


def solve_hamiltonian_field(zeta: DifferentialForm, omega: DifferentialForm, m: int,
                            degree_bound: int, with_homogeneous: bool = True) -> HamiltonianSolution:
    """Per-monomial linear solve of ``i(X) Omega = d zeta`` for a constant Omega."""
    _require_constant(omega)
    chart = omega.chart
    k = omega.degree
    if zeta.chart != chart:
        raise ValueError("zeta lives on another chart")
    if not 1 <= m < k:
        raise ValueError(f"field degree m={m} outside 1..{k - 1}")
    if zeta.degree != k - m - 1:
        raise ValueError(f"zeta must have degree {k - m - 1}, got {zeta.degree}")
    n = chart.dim
    flat = flat_matrix(omega.at(chart.origin()), m)
    cols = basis_indices(n, m)
    rows = basis_indices(n, k - m)
    row_pos = {I: i for i, I in enumerate(rows)}
    rhs = exterior_derivative(zeta)

    by_monomial: dict[tuple, list[Fraction]] = {}
    for I, c in rhs.components.items():
        for e, v in c.terms.items():
            by_monomial.setdefault(e, [Fraction(0)] * len(rows))[row_pos[I]] = v

    particular: dict[tuple, Polynomial] = {}
    for e in sorted(by_monomial):
        if sum(e) > degree_bound:
            return HamiltonianSolution(None, (), f"d zeta has degree {sum(e)} > bound {degree_bound}")
        x = linalg.solve(flat.matrix, by_monomial[e], len(cols))
        if x is None:
            return HamiltonianSolution(None, (), f"monomial {e} of d zeta is outside the flat image")
        for J, v in zip(cols, x):
            if v:
                t = Polynomial.monomial(e, v)
                particular[J] = particular[J] + t if J in particular else t
    X = MultiVectorField._raw(chart, m, particular)

    homogeneous = []
    if with_homogeneous:
        kernel = linalg.nullspace(flat.matrix, len(cols))
        for e in monomials_up_to(n, degree_bound):
            for vec in kernel:
                homogeneous.append(MultiVectorField._raw(
                    chart, m, {J: Polynomial.monomial(e, v) for J, v in zip(cols, vec) if v}))
    return HamiltonianSolution(X, tuple(homogeneous))
