"""r-orthogonal complements and the isotropic/coisotropic/Lagrangian classes.

All computations are pointwise: subspaces of a single tangent space, with the
form given as an ``AlternatingTensor``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from msk import linalg
from msk.exterior import AlternatingTensor, StructureError, basis_indices, interior, wedge_all
from msk.forms import PreconditionError


@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored as its reduced row echelon basis."""

    dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], dim: Optional[int] = None) -> "Subspace":
        rows = linalg.to_matrix(vectors)
        if dim is None:
            if not rows:
                raise ValueError("ambient dimension needed for an empty spanning set")
            dim = len(rows[0])
        if any(len(r) != dim for r in rows):
            raise ValueError(f"spanning vectors must have length {dim}")
        red, _ = linalg.rref(rows, dim) if rows else ([], [])
        return cls(dim, tuple(tuple(r) for r in red))

    @classmethod
    def whole(cls, dim: int) -> "Subspace":
        return cls.span([[int(i == j) for j in range(dim)] for i in range(dim)], dim)

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Sequence) -> bool:
        return linalg.rank(list(self.basis) + [list(v)], self.dim) == self.rank

    def __le__(self, other: "Subspace") -> bool:
        if self.dim != other.dim:
            raise StructureError("subspaces of different spaces")
        return linalg.rank(list(self.basis) + list(other.basis), self.dim) == other.rank

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.dim != other.dim:
            raise StructureError("subspaces of different spaces")
        return Subspace.span(list(self.basis) + list(other.basis), self.dim)

    def meets_trivially(self, other: "Subspace") -> bool:
        return (self + other).rank == self.rank + other.rank

    def intersection(self, other: "Subspace") -> "Subspace":
        # solve a.U = b.V for coefficient vectors (a, b)
        if not self.basis or not other.basis:
            return Subspace.zero(self.dim)
        cols = [list(u) for u in self.basis] + [[-x for x in v] for v in other.basis]
        kernel = linalg.nullspace(linalg.transpose(cols), len(cols))
        vecs = []
        for coeffs in kernel:
            a = coeffs[:self.rank]
            vecs.append([sum((ai * u[j] for ai, u in zip(a, self.basis)), Fraction(0))
                         for j in range(self.dim)])
        return Subspace.span(vecs, self.dim)

    def vectors(self) -> list[list[Fraction]]:
        return [list(r) for r in self.basis]


def _vector_tensor(v: Sequence[Fraction]) -> AlternatingTensor:
    return AlternatingTensor.vector(list(v))


def _check_args(W: Subspace, omega: AlternatingTensor, r: int):
    if not omega.covariant:
        raise StructureError("the multisymplectic form must be covariant")
    if W.dim != omega.dim:
        raise StructureError(f"subspace lives in dimension {W.dim}, form in {omega.dim}")
    if not 1 <= r <= omega.degree - 1:
        raise ValueError(f"r={r} outside 1..{omega.degree - 1}")


def orth_complement(W: Subspace, omega: AlternatingTensor, r: int) -> Subspace:
    """``{v : i(v ^ w1 ^ ... ^ wr) omega = 0 for all wi in W}``."""
    _check_args(W, omega, r)
    n = W.dim
    if W.rank < r:
        return Subspace.whole(n)
    rows: list[list[Fraction]] = []
    target = basis_indices(n, omega.degree - r - 1)
    for subset in combinations(W.basis, r):
        w = wedge_all([_vector_tensor(x) for x in subset], n, covariant=False)
        cols = []
        for j in range(n):
            e_j = AlternatingTensor.basis(n, (j,), covariant=False)
            img = interior(wedge_all([e_j, w], n, covariant=False), omega)
            cols.append([img.coefficient(I) for I in target])
        rows.extend(linalg.transpose(cols) if target else [])
    if not rows:
        return Subspace.whole(n)
    return Subspace.span(linalg.nullspace(rows, n), n)


@dataclass(frozen=True)
class ClassificationReport:
    r: int
    isotropic: bool
    coisotropic: bool
    lagrangian: bool
    multisymplectic: Optional[bool]
    complement: Subspace


def classify(W: Subspace, omega: AlternatingTensor, r: int) -> ClassificationReport:
    comp = orth_complement(W, omega, r)
    iso = W <= comp
    coiso = comp <= W
    multi = None
    if r == omega.degree - 1:
        multi = W.meets_trivially(comp)
    return ClassificationReport(r, iso, coiso, iso and coiso, multi, comp)


def is_isotropic(W: Subspace, omega: AlternatingTensor, r: int) -> bool:
    return W <= orth_complement(W, omega, r)


def _unit(n: int, i: int) -> list[Fraction]:
    return [Fraction(int(i == j)) for j in range(n)]


def is_maximal_isotropic(W: Subspace, omega: AlternatingTensor, r: int) -> bool:
    """True iff no one-vector extension ``W + span{v}``, v not in W, stays r-isotropic.

    Candidates are the complement's basis vectors and the coordinate vectors;
    every extending v lies in the complement, so if any extension exists one
    of the complement's basis vectors outside W is an extension too.
    """
    _check_args(W, omega, r)
    if not is_isotropic(W, omega, r):
        raise PreconditionError(f"subspace is not {r}-isotropic")
    comp = orth_complement(W, omega, r)
    candidates = comp.vectors() + [_unit(W.dim, i) for i in range(W.dim)]
    for v in candidates:
        if W.contains_vector(v):
            continue
        if is_isotropic(W + Subspace.span([v], W.dim), omega, r):
            return False
    return True
