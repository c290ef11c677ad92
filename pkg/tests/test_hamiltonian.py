import random

import pytest
from hypothesis import given

from msk import sampling
from msk.forms import (
    Chart,
    DifferentialForm,
    MultiVectorField,
    PreconditionError,
    exterior_derivative,
    function,
    interior,
)
from msk.hamiltonian import HAMILTONIAN, NOT_CLOSED, certify, solve_hamiltonian_field
from msk.models import build_darboux
from tests.strategies import seeds

XP = Chart(("x", "p"))
OMEGA = DifferentialForm(XP, 2, {(0, 1): -1})
# p, x1, x2 with Omega = dp ^ dx1 ^ dx2
PXX = Chart(("p", "x1", "x2"))
OMEGA3 = DifferentialForm(PXX, 3, {(0, 1, 2): 1})


def test_coordinate_field_is_hamiltonian():
    cert = certify(MultiVectorField.coordinate_field(XP, "x"), OMEGA)
    assert cert.verdict == HAMILTONIAN
    assert cert.hamiltonian_form == function(XP, "-p")
    assert exterior_derivative(cert.hamiltonian_form) == cert.contraction


def test_euler_field_is_not_closed():
    cert = certify(MultiVectorField.vector_field(XP, ["x", "p"]), OMEGA)
    assert cert.verdict == NOT_CLOSED and not cert.locally_hamiltonian
    assert exterior_derivative(cert.contraction) == DifferentialForm(XP, 2, {(0, 1): -2})


def test_bivector_certificate():
    X = MultiVectorField.basis(PXX, (1, 2))
    cert = certify(X, OMEGA3)
    assert cert.contraction == DifferentialForm(PXX, 1, {(0,): -1})
    assert cert.hamiltonian_form == function(PXX, "-p")


def test_certify_needs_closed_form():
    with pytest.raises(PreconditionError):
        certify(MultiVectorField.coordinate_field(PXX, 0), DifferentialForm(PXX, 2, {(1, 2): "p"}))


def test_certify_rejects_top_degree_fields():
    with pytest.raises(ValueError):
        certify(MultiVectorField.basis(XP, (0, 1)), OMEGA)


def test_solve_for_momentum():
    sol = solve_hamiltonian_field(function(XP, "p"), OMEGA, 1, 2)
    assert sol.particular == MultiVectorField.vector_field(XP, [-1, 0])
    assert sol.homogeneous == ()


def test_solve_zero_gives_kernel():
    sol = solve_hamiltonian_field(function(PXX, 0), OMEGA3, 2, 1)
    assert sol.particular.is_zero()
    for X in sol.homogeneous:
        assert interior(X, OMEGA3).is_zero()


def test_solve_inverts_bivector_certificate():
    sol = solve_hamiltonian_field(function(PXX, "-p"), OMEGA3, 2, 1)
    assert sol.particular == MultiVectorField.basis(PXX, (1, 2))


def test_unsolvable_right_hand_side():
    ch = Chart(("x1", "x2", "x3"))
    degenerate = DifferentialForm(ch, 2, {(0, 1): 1})
    sol = solve_hamiltonian_field(function(ch, "x3"), degenerate, 1, 1)
    assert not sol.solvable and "flat image" in sol.reason


@given(seeds)
def test_round_trip(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    k = rng.randint(1, min(n, 3))
    M = build_darboux(n, k)
    m = rng.randint(1, k)
    zeta = sampling.form(rng, M.chart, k - m, max_degree=2, density=0.3)
    sol = solve_hamiltonian_field(zeta, M.omega, m, 2, with_homogeneous=False)
    if sol.solvable:
        cert = certify(sol.particular, M.omega)
        assert cert.verdict == HAMILTONIAN
        assert exterior_derivative(cert.hamiltonian_form - zeta).is_zero()
