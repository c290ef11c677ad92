"""Seeded random instances for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from msk.exterior import AlternatingTensor, basis_indices, wedge
from msk.forms import Chart, DifferentialForm, MultiVectorField, PolyMap
from msk.orthogonality import Subspace, orth_complement
from msk.polynomial import Polynomial, monomials_up_to


def rational(rng: random.Random, bound: int = 5, denominators=(1, 1, 1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice(denominators))


def vector(rng: random.Random, n: int) -> list[Fraction]:
    return [rational(rng) for _ in range(n)]


def tensor(rng: random.Random, n: int, degree: int, covariant: bool = True,
           density: float = 0.6) -> AlternatingTensor:
    comps = {I: rational(rng) for I in basis_indices(n, degree) if rng.random() < density}
    return AlternatingTensor(n, degree, covariant, comps)


def decomposable(rng: random.Random, n: int, m: int) -> tuple[AlternatingTensor, list[list[Fraction]]]:
    vecs = [vector(rng, n) for _ in range(m)]
    out = AlternatingTensor(n, 0, False, {(): 1})
    for v in vecs:
        out = wedge(out, AlternatingTensor.vector(v))
    return out, vecs


def polynomial(rng: random.Random, nvars: int, max_degree: int, terms: int = 3) -> Polynomial:
    monos = monomials_up_to(nvars, max_degree)
    out = {}
    for _ in range(rng.randint(0, terms)):
        out[rng.choice(monos)] = rational(rng)
    return Polynomial(nvars, out)


def chart(n: int) -> Chart:
    return Chart(tuple(f"x{i + 1}" for i in range(n)))


def form(rng: random.Random, ch: Chart, degree: int, max_degree: int = 3,
         density: float = 0.5) -> DifferentialForm:
    comps = {I: polynomial(rng, ch.dim, max_degree)
             for I in basis_indices(ch.dim, degree) if rng.random() < density}
    return DifferentialForm(ch, degree, comps)


def field(rng: random.Random, ch: Chart, degree: int, max_degree: int = 2,
          density: float = 0.5) -> MultiVectorField:
    comps = {I: polynomial(rng, ch.dim, max_degree)
             for I in basis_indices(ch.dim, degree) if rng.random() < density}
    return MultiVectorField(ch, degree, comps)


def poly_map(rng: random.Random, source: Chart, target: Chart, max_degree: int = 2) -> PolyMap:
    return PolyMap(source, target,
                   tuple(polynomial(rng, source.dim, max_degree) for _ in range(target.dim)))


def subspace(rng: random.Random, n: int, max_rank: int | None = None) -> Subspace:
    k = rng.randint(0, n if max_rank is None else max_rank)
    return Subspace.span([vector(rng, n) for _ in range(k)], n)


def isotropic_subspace(rng: random.Random, omega: AlternatingTensor, r: int) -> Subspace:
    """Grow a random r-isotropic subspace one complement vector at a time."""
    n = omega.dim
    W = Subspace.zero(n)
    for _ in range(rng.randint(0, n)):
        comp = orth_complement(W, omega, r)
        extra = [v for v in comp.vectors() if not W.contains_vector(v)]
        if not extra:
            break
        coeffs = [rational(rng) for _ in comp.vectors()]
        v = [sum((c * b[j] for c, b in zip(coeffs, comp.vectors())), Fraction(0)) for j in range(n)]
        if W.contains_vector(v):
            v = rng.choice(extra)
        candidate = W + Subspace.span([v], n)
        if candidate <= orth_complement(candidate, omega, r):
            W = candidate
        else:
            break
    return W


def point(rng: random.Random, n: int) -> list[Fraction]:
    return vector(rng, n)
