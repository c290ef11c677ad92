"""Euler-field homogeneity, Hamiltonian spanning, and the invariant-form probe."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from msk import linalg
from msk.exterior import basis_indices
from msk.forms import (
    DifferentialForm,
    MultiVectorField,
    PreconditionError,
    StructureError,
    lie_derivative,
)
from msk.hamiltonian import NOT_CLOSED, certify, solve_hamiltonian_field
from msk.polynomial import Polynomial, monomials_up_to

MATCHES_THEOREM = "matches_theorem"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class HomogeneityReport:
    field: MultiVectorField
    success: bool
    factor: Optional[Polynomial]
    lie_derivative: DifferentialForm
    reason: str = ""


def check_local_homogeneity(omega: DifferentialForm, delta: MultiVectorField) -> HomogeneityReport:
    """Look for a polynomial f with ``L(delta) omega = f omega`` componentwise."""
    if omega.chart != delta.chart:
        raise StructureError("form and field live on different charts")
    if delta.degree != 1:
        raise ValueError("the Euler field must be a vector field")
    L = lie_derivative(delta, omega)
    n = omega.chart.dim
    if omega.is_zero():
        if L.is_zero():
            return HomogeneityReport(delta, True, Polynomial.zero(n), L)
        return HomogeneityReport(delta, False, None, L, "form is zero but its Lie derivative is not")
    for I in L.components:
        if I not in omega.components:
            return HomogeneityReport(delta, False, None, L, f"component {list(I)} appears only in L(delta) omega")
    factor: Optional[Polynomial] = None
    for I, c in omega.components.items():
        q = L.coefficient(I).exact_divide(c)
        if q is None:
            return HomogeneityReport(delta, False, None, L, f"component {list(I)} is not a polynomial multiple")
        if factor is None:
            factor = q
        elif q != factor:
            return HomogeneityReport(delta, False, None, L, "quotients differ between components")
    return HomogeneityReport(delta, True, factor, L)


@dataclass(frozen=True)
class SpanRankResult:
    rank: int
    full: bool
    closed: tuple[bool, ...]
    dim: int


def hamiltonian_span_rank(omega: DifferentialForm, fields: Sequence[MultiVectorField],
                          point: Sequence) -> SpanRankResult:
    """Rank at ``point`` of those fields whose contraction with omega is closed."""
    flags = []
    vecs = []
    for X in fields:
        ok = certify(X, omega).verdict != NOT_CLOSED
        flags.append(ok)
        if ok:
            vecs.append(X.at(point).to_vector())
    n = omega.chart.dim
    r = linalg.rank(vecs, n) if vecs else 0
    return SpanRankResult(r, r == n, tuple(flags), n)


@dataclass(frozen=True)
class InvarianceProbeResult:
    degree: int
    degree_bound: int
    generator_counts: tuple[int, int]
    basis: tuple[DifferentialForm, ...]
    verdict: str
    unknowns: int
    omega_in_space: Optional[bool] = None


@dataclass
class GeneratorFamily:
    vector_fields: list[MultiVectorField] = field(default_factory=list)
    multivector_fields: list[MultiVectorField] = field(default_factory=list)

    def __len__(self):
        return len(self.vector_fields) + len(self.multivector_fields)


def default_generators(omega: DifferentialForm, monomial_degree: int = 2) -> GeneratorFamily:
    """Hamiltonian fields of coordinate monomials plus coordinate (k-1)-wedges.

    Vector fields solve ``i(X) Omega = d(x^e dx^J)`` for every monomial of
    degree <= ``monomial_degree`` and every (k-2)-index J; (k-1)-fields are
    the constant wedges of coordinate fields together with the Hamiltonian
    (k-1)-fields of the monomials. Unsolvable right-hand sides are skipped.
    Requires constant coefficients.
    """
    chart = omega.chart
    n = chart.dim
    k = omega.degree
    monos = [e for e in monomials_up_to(n, monomial_degree) if any(e)]
    family = GeneratorFamily()
    seen: set = set()

    def keep(bucket, X):
        if X is None or X.is_zero() or X in seen:
            return
        seen.add(X)
        bucket.append(X)

    for J in basis_indices(n, k - 2):
        for e in monos:
            zeta = DifferentialForm._raw(chart, k - 2, {J: Polynomial.monomial(e)})
            sol = solve_hamiltonian_field(zeta, omega, 1, monomial_degree, with_homogeneous=False)
            keep(family.vector_fields, sol.particular)
    if k - 1 >= 1:
        for I in basis_indices(n, k - 1):
            keep(family.multivector_fields, MultiVectorField.basis(chart, I))
        if k - 1 > 1:
            for e in monos:
                zeta = DifferentialForm._raw(chart, 0, {(): Polynomial.monomial(e)})
                sol = solve_hamiltonian_field(zeta, omega, k - 1, monomial_degree, with_homogeneous=False)
                keep(family.multivector_fields, sol.particular)
    if k == 2:
        # vector fields and (k-1)-fields coincide; keep one copy of each list
        family.multivector_fields = [X for X in family.multivector_fields
                                     if X not in set(family.vector_fields)]
    return family


def invariance_probe(omega: DifferentialForm, p: int, degree_bound: int,
                     generators: Optional[GeneratorFamily] = None) -> InvarianceProbeResult:
    """Solve ``L(X) alpha = 0`` over all generators for degree-p forms alpha.

    alpha ranges over degree-p forms whose coefficients have degree <=
    ``degree_bound``. Only ``matches_theorem`` or ``inconclusive`` is ever
    reported; a finite family cannot refute the universal statement.
    """
    chart = omega.chart
    n = chart.dim
    k = omega.degree
    if p not in (k - 1, k):
        raise ValueError(f"p must be {k - 1} or {k}")
    if degree_bound < max(omega.max_coefficient_degree(), 0):
        raise ValueError("degree bound is below the degree of omega's coefficients")
    if generators is None:
        generators = default_generators(omega)
    gens = list(generators.vector_fields) + list(generators.multivector_fields)
    for idx, X in enumerate(gens):
        kind = "vector field" if idx < len(generators.vector_fields) else "multivector field"
        if X.chart != chart:
            raise StructureError(f"generator {idx} lives on another chart")
        if X.degree not in (1, k - 1):
            raise ValueError(f"generator {idx} has degree {X.degree}; expected 1 or {k - 1}")
        if certify(X, omega).verdict == NOT_CLOSED:
            raise PreconditionError(f"generator {idx} ({kind}) {X.to_str()} is not locally Hamiltonian")

    monos = monomials_up_to(n, degree_bound)
    unknowns = [(I, e) for I in basis_indices(n, p) for e in monos]
    col = {u: j for j, u in enumerate(unknowns)}
    reducer = linalg.RowReducer(len(unknowns))
    max_rank = len(unknowns) - (1 if p == k else 0)

    basis_forms = [DifferentialForm._raw(chart, p, {I: Polynomial.monomial(e)}) for I, e in unknowns]
    for X in gens:
        if reducer.rank >= max_rank:
            break
        rows: dict[tuple, dict[int, Fraction]] = {}
        for j, b in enumerate(basis_forms):
            if X.degree > p + 1:
                continue
            img = lie_derivative(X, b)
            for J, c in img.components.items():
                for e, v in c.terms.items():
                    rows.setdefault((J, e), {})[j] = v
        for key in sorted(rows):
            reducer.add(rows[key])
            if reducer.rank >= max_rank:
                break

    space = reducer.nullspace()
    basis = []
    for vec in space:
        comps: dict = {}
        for (I, e), v in zip(unknowns, vec):
            if v:
                t = Polynomial.monomial(e, v)
                comps[I] = comps[I] + t if I in comps else t
        basis.append(DifferentialForm._raw(chart, p, comps))

    omega_in = None
    if p == k:
        vec = {col[(I, e)]: v for I, c in omega.components.items() for e, v in c.terms.items()}
        omega_in = all(sum((v * vec.get(c, 0) for c, v in row.items()), Fraction(0)) == 0
                       for row in reducer.rows.values())
        if not omega_in:
            raise AssertionError("omega is not invariant under its own Hamiltonian generators")
        verdict = MATCHES_THEOREM if len(basis) == 1 else INCONCLUSIVE
    else:
        verdict = MATCHES_THEOREM if not basis else INCONCLUSIVE
    return InvarianceProbeResult(p, degree_bound, (len(generators.vector_fields),
                                                   len(generators.multivector_fields)),
                                 tuple(basis), verdict, len(unknowns), omega_in)
