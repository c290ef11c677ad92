"""Canonical multisymplectic models on bundles of forms and type-(k, r) checks.

Model charts list the base coordinates of Q first and then one momentum per
admissible multi-index, named ``p_`` plus the 1-based indices concatenated
(``p_13`` for I = {1, 3}); past nine base coordinates the indices are joined
with underscores (``p_2_10``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from msk import linalg
from msk.exterior import AlternatingTensor, MultiIndex, interior, is_j_nondegenerate, wedge_all
from msk.forms import (
    Chart,
    DifferentialForm,
    MultiVectorField,
    PreconditionError,
    exterior_derivative,
    lie_bracket,
)
from msk.orthogonality import Subspace, is_isotropic
from msk.polynomial import Polynomial


def momentum_name(index: MultiIndex, nbase: int) -> str:
    labels = [str(i + 1) for i in index]
    return "p_" + ("".join(labels) if nbase <= 9 else "_".join(labels))


@dataclass(frozen=True)
class DarbouxModel:
    base_dim: int
    form_degree: int
    chart: Chart
    momenta: tuple[MultiIndex, ...]
    theta: DifferentialForm
    omega: DifferentialForm
    horizontal: Optional[int] = None
    fiber: tuple[int, ...] = ()
    nondegenerate: bool = True

    @property
    def dim(self) -> int:
        return self.chart.dim

    def base_names(self) -> tuple[str, ...]:
        return self.chart.names[:self.base_dim]

    def momentum_names(self) -> tuple[str, ...]:
        return self.chart.names[self.base_dim:]

    def momentum_fields(self) -> list[MultiVectorField]:
        return [MultiVectorField.coordinate_field(self.chart, self.base_dim + a)
                for a in range(len(self.momenta))]

    def fiber_fields(self) -> list[MultiVectorField]:
        return [MultiVectorField.coordinate_field(self.chart, i) for i in self.fiber]

    def coordinate_fields(self) -> list[MultiVectorField]:
        return [MultiVectorField.coordinate_field(self.chart, i) for i in range(self.dim)]

    def euler_field(self) -> MultiVectorField:
        """``sum x^i d/dx^i + sum p_I d/dp_I``."""
        n = self.dim
        return MultiVectorField(self.chart, 1,
                                {(i,): Polynomial.variable(n, i) for i in range(n)})


def _build(base_names: Sequence[str], fiber: Sequence[int], k: int,
           r: Optional[int]) -> DarbouxModel:
    n = len(base_names)
    if not 1 <= k <= n:
        raise ValueError(f"form degree k={k} must satisfy 1 <= k <= {n}")
    fiber_set = set(fiber)
    momenta = tuple(
        I for I in combinations(range(n), k)
        if r is None or sum(1 for i in I if i in fiber_set) <= r - 1)
    if not momenta:
        raise ValueError(
            f"no admissible momenta for k={k}, r={r} with fiber coordinates "
            f"{[base_names[i] for i in fiber]} over base {list(base_names)}")
    names = tuple(base_names) + tuple(momentum_name(I, n) for I in momenta)
    chart = Chart(names, tuple(base_names), names[n:])
    N = chart.dim
    theta = DifferentialForm(chart, k, {I: Polynomial.variable(N, n + a)
                                        for a, I in enumerate(momenta)})
    omega = exterior_derivative(theta)
    expected = DifferentialForm(chart, k + 1, {})
    for a, I in enumerate(momenta):
        expected = expected + wedge_all_fields(
            [DifferentialForm.basis(chart, (n + a,))] +
            [DifferentialForm.basis(chart, (i,)) for i in I])
    if omega != expected:
        raise AssertionError("d(theta) differs from sum dp_I ^ dx^I")  # pragma: no cover
    # constant coefficients: nondegeneracy at the origin holds everywhere
    flat = omega.at(chart.origin())
    nondeg = is_j_nondegenerate(flat, 1)
    return DarbouxModel(n, k, chart, momenta, theta, omega, r, tuple(fiber), nondeg)


def wedge_all_fields(factors: Sequence[DifferentialForm]) -> DifferentialForm:
    out = factors[0]
    for f in factors[1:]:
        out = out ^ f
    return out


def default_base_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def build_darboux(n: int, k: int, base_names: Optional[Sequence[str]] = None) -> DarbouxModel:
    """Darboux chart on the bundle of k-forms over an n-dimensional base."""
    names = tuple(base_names) if base_names is not None else default_base_names(n)
    if len(names) != n:
        raise ValueError("need one name per base coordinate")
    model = _build(names, (), k, None)
    if not model.nondegenerate:
        raise AssertionError("canonical model is degenerate")  # pragma: no cover
    return model


def build_darboux_horizontal(base: Sequence[str], fiber: Sequence[str], k: int,
                             r: int) -> DarbouxModel:
    """Darboux chart on the r-horizontal k-forms of Q -> E.

    ``base`` are the coordinates of E and ``fiber`` the remaining coordinates
    of Q. Momenta p_I are kept for I containing at most r-1 fiber indices.
    Nondegeneracy is recorded on the model, not enforced: with r = 1 and a
    nonempty fiber the fiber directions lie in the kernel.
    """
    if not 1 <= r <= k:
        raise ValueError(f"horizontality level r={r} must satisfy 1 <= r <= k={k}")
    names = tuple(base) + tuple(fiber)
    fiber_idx = tuple(range(len(base), len(names)))
    return _build(names, fiber_idx, k, r)


def horizontal_momentum_count(nbase: int, nfiber: int, k: int, r: int) -> int:
    """Increasing k-indices over nbase+nfiber coordinates with <= r-1 fiber entries."""
    return sum(comb(nfiber, j) * comb(nbase, k - j) for j in range(0, min(r - 1, k) + 1))


def tautological_eval(model: DarbouxModel, point: Sequence, vectors: Sequence[Sequence]) -> Fraction:
    """``Theta_alpha(V1..Vk) = i(rho_* Vk ^ ... ^ rho_* V1) alpha``.

    ``alpha`` is the k-form on the base encoded by the momenta of ``point``
    and ``rho_*`` drops the momentum components.
    """
    k = model.form_degree
    N = model.dim
    n = model.base_dim
    point = [linalg.as_fraction(x) for x in point]
    if len(point) != N:
        raise ValueError(f"point needs {N} coordinates")
    if len(vectors) != k:
        raise ValueError(f"expected {k} tangent vectors, got {len(vectors)}")
    for v in vectors:
        if len(v) != N:
            raise ValueError(f"tangent vectors need {N} components")
    alpha = AlternatingTensor(n, k, True, {I: point[n + a] for a, I in enumerate(model.momenta)})
    pushed = [AlternatingTensor.vector([linalg.as_fraction(x) for x in v[:n]]) for v in vectors]
    X = wedge_all(reversed(pushed), n, covariant=False)
    return interior(X, alpha).coefficient(())


def theta_coordinate_eval(model: DarbouxModel, point: Sequence, vectors: Sequence[Sequence]) -> Fraction:
    """The Darboux expression ``sum p_I dx^I`` evaluated on the vectors in order."""
    return model.theta.at(point)(*vectors)


@dataclass(frozen=True)
class TypeConditionsReport:
    r: int
    one_isotropic: bool
    involutive: bool
    contraction_vanishing: Optional[bool]
    dimension_equality: bool
    quotient_dimension: bool
    verdict: bool
    dim_w: int
    expected_dim_w: int
    quotient_dim: int
    eps_dim: int
    contraction_vanishing_literal: Optional[bool] = None
    notes: tuple[str, ...] = field(default_factory=tuple)


def horizontal_form_count(q: int, e: int, degree: int, r: int) -> int:
    """Dimension of the degree-form space on a q-space vanishing on r vectors of an e-subspace."""
    if r == 0:
        return comb(q, degree)
    return sum(comb(e, j) * comb(q - e, degree - j) for j in range(0, min(r - 1, degree) + 1))


def _contractions_vanish(omega_p: AlternatingTensor, prefix: list[list[Fraction]],
                         pool: list[list[Fraction]], r: int) -> bool:
    n = omega_p.dim
    for subset in combinations(pool, r):
        X = wedge_all([AlternatingTensor.vector(v) for v in prefix + list(subset)],
                      n, covariant=False)
        if X.degree > omega_p.degree:
            continue
        if not interior(X, omega_p).is_zero():
            return False
    return True


def check_type_conditions(omega: DifferentialForm, W: Sequence[MultiVectorField],
                          eps: Sequence[Sequence], r: int, point: Sequence,
                          sample_points: Sequence[Sequence] = ()) -> TypeConditionsReport:
    """Evaluate the type-(k, 0) / type-(k, r) conditions at ``point``.

    ``eps`` holds representatives in the tangent space whose images span the
    subspace of the quotient by W. Condition (a) is checked in the form the
    Darboux models satisfy: for every w in W, i(w)Omega is r-horizontal on the
    quotient, i.e. ``i(w ^ v1 ^ ... ^ vr) Omega = 0`` whenever each vi projects
    into eps. The literal reading without the W slot is reported alongside.
    """
    k = omega.degree
    N = omega.chart.dim
    if not 0 <= r <= k - 1:
        raise ValueError(f"r={r} outside 0..{k - 1}")
    if not exterior_derivative(omega).is_zero():
        raise PreconditionError("form is not closed")
    point = tuple(linalg.as_fraction(x) for x in point)
    w_vecs = [f.at(point).to_vector() for f in W]
    if any(f.degree != 1 for f in W):
        raise ValueError("W must be spanned by vector fields")
    if linalg.rank(w_vecs, N) != len(w_vecs):
        raise PreconditionError("spanning fields of W are dependent at the point")
    W_p = Subspace.span(w_vecs, N)
    omega_p = omega.at(point)
    notes = []

    one_iso = is_isotropic(W_p, omega_p, 1) if k >= 2 else False

    involutive = True
    samples = [point, omega.chart.origin()] + [tuple(map(linalg.as_fraction, q)) for q in sample_points]
    for i, j in combinations(range(len(W)), 2):
        br = lie_bracket(W[i], W[j])
        for q in samples:
            span_q = Subspace.span([f.at(q).to_vector() for f in W], N)
            if not span_q.contains_vector(br.at(q).to_vector()):
                involutive = False
                notes.append(f"[W{i}, W{j}] leaves W at {[str(x) for x in q]}")
                break

    E_p = W_p + Subspace.span(list(eps), N) if eps else W_p
    eps_dim = E_p.rank - W_p.rank
    q_dim = N - W_p.rank

    contraction = literal = None
    if r >= 1:
        E_basis = E_p.vectors()
        contraction = all(
            _contractions_vanish(omega_p, [w], E_basis, r) for w in W_p.vectors())
        literal = _contractions_vanish(omega_p, [], E_basis, r)
        if contraction and not literal:
            notes.append("literal contraction condition fails through W itself")
        if not contraction:
            notes.append("condition (a) fails; the horizontal form count then depends on "
                         "the complement chosen for eps")

    expected = horizontal_form_count(q_dim, eps_dim, k - 1, r)
    dim_eq = W_p.rank == expected
    quotient_ok = q_dim > k - 1
    flags = [one_iso, involutive, dim_eq, quotient_ok]
    if contraction is not None:
        flags.append(contraction)
    return TypeConditionsReport(
        r=r, one_isotropic=one_iso, involutive=involutive,
        contraction_vanishing=contraction, dimension_equality=dim_eq,
        quotient_dimension=quotient_ok, verdict=all(flags), dim_w=W_p.rank,
        expected_dim_w=expected, quotient_dim=q_dim, eps_dim=eps_dim,
        contraction_vanishing_literal=literal, notes=tuple(notes))


def vertical_type_check(model: DarbouxModel, point: Optional[Sequence] = None) -> TypeConditionsReport:
    """Type conditions for the model's own vertical distribution."""
    point = model.chart.origin() if point is None else point
    r = model.horizontal or 0
    eps = [f.at(point).to_vector() for f in model.fiber_fields()] if r else []
    return check_type_conditions(model.omega, model.momentum_fields(), eps, r, point)
