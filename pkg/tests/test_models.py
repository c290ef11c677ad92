import random

import pytest
from hypothesis import given

from msk import sampling
from msk.exterior import is_j_nondegenerate
from msk.forms import MultiVectorField, PreconditionError, exterior_derivative
from msk.models import (
    build_darboux,
    build_darboux_horizontal,
    check_type_conditions,
    horizontal_form_count,
    horizontal_momentum_count,
    tautological_eval,
    theta_coordinate_eval,
    vertical_type_check,
)
from tests.strategies import seeds

MODELS = [(n, k) for n in range(1, 5) for k in range(1, min(n, 3) + 1)]


def test_cotangent_line():
    M = build_darboux(1, 1, ["x"])
    assert M.chart.names == ("x", "p_1")
    assert M.theta.to_str() == "(p_1) dx"
    assert exterior_derivative(M.theta) == M.omega


def test_three_base_two_forms():
    M = build_darboux(3, 2)
    assert M.dim == 6 and M.omega.degree == 3
    rng = random.Random(0)
    for _ in range(5):
        assert is_j_nondegenerate(M.omega.at(sampling.point(rng, 6)), 1)


def test_bad_degree():
    with pytest.raises(ValueError):
        build_darboux(2, 3)


@pytest.mark.parametrize("r, count", [(1, 1), (2, 3)])
def test_horizontal_momentum_counts(r, count):
    M = build_darboux_horizontal(["x1", "x2"], ["y"], 2, r)
    assert len(M.momenta) == count == horizontal_momentum_count(2, 1, 2, r)


def test_no_fiber_matches_plain_model():
    a = build_darboux_horizontal(["x1", "x2"], [], 2, 1)
    b = build_darboux(2, 2, ["x1", "x2"])
    assert a.omega == b.omega and a.theta == b.theta


def test_r1_with_fiber_is_recorded_degenerate():
    assert not build_darboux_horizontal(["x1", "x2"], ["y"], 2, 1).nondegenerate
    assert build_darboux_horizontal(["x1", "x2"], ["y"], 2, 2).nondegenerate


def test_tautological_example():
    M = build_darboux(1, 1)
    assert tautological_eval(M, [0, 2], [[1, 0]]) == 2
    assert tautological_eval(M, [0, 2], [[0, 1]]) == 0


@pytest.mark.parametrize("n, k", MODELS)
def test_tautological_identity(n, k):
    M = build_darboux(n, k)
    rng = random.Random(n * 10 + k)
    for _ in range(20):
        pt = sampling.point(rng, M.dim)
        vecs = [sampling.vector(rng, M.dim) for _ in range(k)]
        assert tautological_eval(M, pt, vecs) == theta_coordinate_eval(M, pt, vecs)


@pytest.mark.parametrize("n, k", MODELS)
def test_vertical_distribution(n, k):
    rep = vertical_type_check(build_darboux(n, k), [1] * build_darboux(n, k).dim)
    assert rep.one_isotropic and rep.involutive and rep.dimension_equality
    assert rep.quotient_dimension == (n > k)
    assert rep.verdict == (n > k)


@pytest.mark.parametrize("base, fiber, k, r", [
    (["x1", "x2"], ["y"], 2, 2), (["x1", "x2"], ["y1", "y2"], 2, 2),
    (["x1", "x2"], ["y"], 3, 2), (["x1", "x2", "x3"], ["y"], 2, 1),
])
def test_horizontal_vertical_distribution(base, fiber, k, r):
    rep = vertical_type_check(build_darboux_horizontal(base, fiber, k, r))
    assert rep.contraction_vanishing and rep.dimension_equality and rep.involutive


def test_horizontal_form_count_cases():
    assert horizontal_form_count(4, 2, 2, 0) == 6
    assert horizontal_form_count(4, 2, 2, 1) == 1
    assert horizontal_form_count(4, 2, 2, 2) == 5


def test_non_involutive_distribution_is_flagged():
    M = build_darboux(2, 1)
    ch = M.chart
    a = MultiVectorField.vector_field(ch, [0, 0, 1, 0])
    b = MultiVectorField.vector_field(ch, [0, 0, "x1", 1])
    twisted = MultiVectorField.vector_field(ch, [1, 0, 0, "p_1"])
    assert not check_type_conditions(M.omega, [a, twisted], [], 0, [0, 0, 0, 0]).involutive
    assert check_type_conditions(M.omega, [a, b], [], 0, [0, 0, 0, 0]).involutive


def test_dependent_distribution_is_rejected():
    M = build_darboux(2, 1)
    v = MultiVectorField.coordinate_field(M.chart, 2)
    with pytest.raises(PreconditionError):
        check_type_conditions(M.omega, [v, v], [], 0, [0, 0, 0, 0])


@given(seeds)
def test_theta_is_a_primitive(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    k = rng.randint(1, min(n, 3))
    M = build_darboux(n, k)
    assert exterior_derivative(M.theta) == M.omega
    pt = sampling.point(rng, M.dim)
    assert is_j_nondegenerate(M.omega.at(pt), 1)


def test_failed_contraction_condition_is_flagged():
    M = build_darboux(3, 2)
    rep = check_type_conditions(M.omega, M.momentum_fields(), [[0, 0, 1, 0, 0, 0]], 1, M.chart.origin())
    assert rep.contraction_vanishing is False and not rep.verdict
    assert any("complement" in note for note in rep.notes)
