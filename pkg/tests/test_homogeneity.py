import pytest

from msk.exterior import basis_indices
from msk.forms import Chart, DifferentialForm, MultiVectorField, PreconditionError
from msk.homogeneity import (
    INCONCLUSIVE,
    MATCHES_THEOREM,
    GeneratorFamily,
    check_local_homogeneity,
    default_generators,
    hamiltonian_span_rank,
    invariance_probe,
)
from msk.models import build_darboux
from msk.polynomial import Polynomial

XP = Chart(("x", "p"))
OMEGA = DifferentialForm(XP, 2, {(0, 1): -1})


def volume(n):
    ch = Chart(tuple(f"x{i + 1}" for i in range(n)))
    return DifferentialForm(ch, n, {tuple(range(n)): 1}), MultiVectorField.vector_field(ch, list(ch.names))


@pytest.mark.parametrize("n, k", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 2)])
def test_darboux_factor(n, k):
    M = build_darboux(n, k)
    rep = check_local_homogeneity(M.omega, M.euler_field())
    assert rep.success and rep.factor == Polynomial.constant(M.dim, k + 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_volume_factor(n):
    vol, euler = volume(n)
    assert check_local_homogeneity(vol, euler).factor == Polynomial.constant(n, n)


def test_translation_gives_zero_factor():
    rep = check_local_homogeneity(OMEGA, MultiVectorField.coordinate_field(XP, "x"))
    assert rep.success and rep.factor.is_zero()


def test_non_polynomial_factor_is_reported():
    w = DifferentialForm(XP, 1, {(0,): "x", (1,): 1})
    rep = check_local_homogeneity(w, MultiVectorField.vector_field(XP, ["x^2", 0]))
    assert not rep.success and rep.reason


def test_polynomial_factor():
    w = DifferentialForm(XP, 2, {(0, 1): "x"})
    rep = check_local_homogeneity(w, MultiVectorField.vector_field(XP, ["x^2", 0]))
    assert rep.success and rep.factor == XP.poly("3*x")


def test_span_rank_examples():
    dx, dp = (MultiVectorField.coordinate_field(XP, i) for i in range(2))
    full = hamiltonian_span_rank(OMEGA, [dx, dp], [0, 0])
    assert full.rank == 2 and full.full
    assert hamiltonian_span_rank(OMEGA, [dx], [0, 0]).rank == 1


def test_span_ignores_non_closed_fields():
    euler = MultiVectorField.vector_field(XP, ["x", "p"])
    res = hamiltonian_span_rank(OMEGA, [euler], [1, 1])
    assert res.rank == 0 and res.closed == (False,)


@pytest.mark.parametrize("n, k", [(1, 1), (2, 2), (3, 2), (3, 3)])
def test_coordinate_fields_span(n, k):
    M = build_darboux(n, k)
    assert hamiltonian_span_rank(M.omega, M.coordinate_fields(), M.chart.origin()).full


@pytest.mark.parametrize("p, dimension", [(2, 1), (1, 0)])
def test_symplectic_plane_probe(p, dimension):
    res = invariance_probe(OMEGA, p, 1)
    assert res.verdict == MATCHES_THEOREM and len(res.basis) == dimension
    if p == 2:
        b = res.basis[0]
        assert b == OMEGA.scale(-b.coefficient((0, 1)).constant_term())


def test_empty_family_is_inconclusive():
    res = invariance_probe(OMEGA, 2, 1, GeneratorFamily())
    assert res.verdict == INCONCLUSIVE
    assert len(res.basis) == len(basis_indices(2, 2)) * 3


def test_probe_rejects_non_hamiltonian_generators():
    euler = MultiVectorField.vector_field(XP, ["x", "p"])
    with pytest.raises(PreconditionError):
        invariance_probe(OMEGA, 2, 1, GeneratorFamily([euler]))


def test_default_generators_are_hamiltonian_fields():
    fam = default_generators(OMEGA)
    assert len(fam.vector_fields) == 5
    assert all(X.degree == 1 for X in fam.vector_fields)
