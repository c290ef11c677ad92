"""Pointwise exterior algebra on a coordinate vector space.

A multi-index is a strictly increasing tuple of 0-based coordinate indices.
``dx^I`` and ``e_I`` denote the wedges of the coordinate covectors/vectors in
that order. Wedge products follow the determinant convention, so
``dx^I(e_I) = 1`` when the form is evaluated on the vectors in order.

The interior product of a decomposable multivector applies the rightmost
factor first::

    i(X1 ^ ... ^ Xm) w = i(X1) i(X2) ... i(Xm) w

which makes ``i(e_J) w`` equal to ``w(e_jm, ..., e_j1, ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from msk import linalg

MultiIndex = tuple[int, ...]


class StructureError(ValueError):
    """Operands live in different spaces or have incompatible kinds."""


def basis_indices(n: int, degree: int) -> list[MultiIndex]:
    """All increasing multi-indices of the given degree, lexicographically."""
    return list(combinations(range(n), degree))


def check_multi_index(index: Sequence[int], n: int) -> MultiIndex:
    index = tuple(index)
    if any(b <= a for a, b in zip(index, index[1:])):
        raise ValueError(
            f"multi-index {list(index)} is not strictly increasing; "
            f"sort it and fold the permutation sign into the coefficient")
    if index and (index[0] < 0 or index[-1] >= n):
        raise ValueError(f"multi-index {list(index)} out of range for dimension {n}")
    return index


def merge_sign(a: MultiIndex, b: MultiIndex) -> tuple[int, Optional[MultiIndex]]:
    """Sign and sorted union of ``a + b``; ``(0, None)`` if they overlap."""
    sa = set(a)
    if any(j in sa for j in b):
        return 0, None
    inversions = 0
    for j in b:
        inversions += sum(1 for i in a if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


def contract_index(inner: MultiIndex, outer: MultiIndex) -> tuple[int, Optional[MultiIndex]]:
    """``i(e_inner) dx^outer`` as (sign, remaining index), rightmost factor first."""
    sign = 1
    rest = list(outer)
    for j in reversed(inner):
        try:
            pos = rest.index(j)
        except ValueError:
            return 0, None
        if pos % 2:
            sign = -sign
        del rest[pos]
    return sign, tuple(rest)


@dataclass(frozen=True)
class AlternatingTensor:
    """A k-form (covariant) or m-vector (contravariant) with exact coefficients."""

    dim: int
    degree: int
    covariant: bool = True
    components: Mapping[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        # degree > dim is allowed only as the zero tensor (e.g. an overflowing wedge)
        clean = {}
        for idx, c in self.components.items():
            idx = check_multi_index(idx, self.dim)
            if len(idx) != self.degree:
                raise ValueError(f"index {idx} has wrong degree for a degree-{self.degree} tensor")
            c = linalg.as_fraction(c)
            if c:
                clean[idx] = c
        object.__setattr__(self, "components", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, dim: int, degree: int, covariant: bool = True) -> "AlternatingTensor":
        return cls(dim, degree, covariant, {})

    @classmethod
    def basis(cls, dim: int, index: Sequence[int], covariant: bool = True) -> "AlternatingTensor":
        index = tuple(index)
        return cls(dim, len(index), covariant, {index: Fraction(1)})

    @classmethod
    def vector(cls, values: Sequence) -> "AlternatingTensor":
        return cls(len(values), 1, False, {(i,): v for i, v in enumerate(values)})

    @classmethod
    def covector(cls, values: Sequence) -> "AlternatingTensor":
        return cls(len(values), 1, True, {(i,): v for i, v in enumerate(values)})

    def is_zero(self) -> bool:
        return not self.components

    def coefficient(self, index: Sequence[int]) -> Fraction:
        return self.components.get(tuple(index), Fraction(0))

    def to_vector(self) -> list[Fraction]:
        """Coefficients in lexicographic basis order."""
        return [self.coefficient(I) for I in basis_indices(self.dim, self.degree)]

    @classmethod
    def from_vector(cls, dim: int, degree: int, values: Sequence, covariant: bool = True):
        return cls(dim, degree, covariant, dict(zip(basis_indices(dim, degree), values)))

    def _same_space(self, other: "AlternatingTensor"):
        if self.dim != other.dim:
            raise StructureError(f"ambient dimensions differ: {self.dim} vs {other.dim}")
        if self.covariant != other.covariant:
            raise StructureError("cannot combine a form with a multivector here")

    def __add__(self, other: "AlternatingTensor") -> "AlternatingTensor":
        self._same_space(other)
        if self.degree != other.degree:
            raise StructureError("degree mismatch in sum")
        out = dict(self.components)
        for k, v in other.components.items():
            out[k] = out.get(k, 0) + v
        return AlternatingTensor(self.dim, self.degree, self.covariant, out)

    def __neg__(self) -> "AlternatingTensor":
        return self.scale(-1)

    def __sub__(self, other: "AlternatingTensor") -> "AlternatingTensor":
        return self + (-other)

    def scale(self, c) -> "AlternatingTensor":
        c = linalg.as_fraction(c)
        return AlternatingTensor(self.dim, self.degree, self.covariant,
                                 {k: c * v for k, v in self.components.items()})

    def __rmul__(self, c) -> "AlternatingTensor":
        return self.scale(c)

    def __xor__(self, other: "AlternatingTensor") -> "AlternatingTensor":
        return wedge(self, other)

    def __call__(self, *vectors: Sequence) -> Fraction:
        """Evaluate a covariant tensor on ``degree`` vectors (determinant convention)."""
        if not self.covariant:
            raise StructureError("only forms can be evaluated on vectors")
        if len(vectors) != self.degree:
            raise ValueError(f"expected {self.degree} vectors, got {len(vectors)}")
        vs = [[linalg.as_fraction(x) for x in v] for v in vectors]
        if any(len(v) != self.dim for v in vs):
            raise ValueError("vector has wrong dimension")
        total = Fraction(0)
        for idx, c in self.components.items():
            total += c * _det([[v[i] for i in idx] for v in vs])
        return total

    def __repr__(self) -> str:
        kind = "form" if self.covariant else "multivector"
        return f"AlternatingTensor({kind}, n={self.dim}, deg={self.degree}, {self.components})"


def _det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    m = [row[:] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def wedge(a: AlternatingTensor, b: AlternatingTensor) -> AlternatingTensor:
    a._same_space(b)
    degree = a.degree + b.degree
    if degree > a.dim:
        return AlternatingTensor.zero(a.dim, degree, a.covariant)
    out: dict[MultiIndex, Fraction] = {}
    for I, x in a.components.items():
        for J, y in b.components.items():
            sign, K = merge_sign(I, J)
            if sign:
                out[K] = out.get(K, 0) + sign * x * y
    return AlternatingTensor(a.dim, degree, a.covariant, out)


def _negative_degree_zero(dim: int, degree: int, covariant: bool) -> AlternatingTensor:
    # contraction by more slots than the form has: the zero of a trivial space
    t = object.__new__(AlternatingTensor)
    object.__setattr__(t, "dim", dim)
    object.__setattr__(t, "degree", degree)
    object.__setattr__(t, "covariant", covariant)
    object.__setattr__(t, "components", {})
    return t


def wedge_all(factors: Iterable[AlternatingTensor], dim: int, covariant: bool) -> AlternatingTensor:
    out = AlternatingTensor(dim, 0, covariant, {(): Fraction(1)})
    for f in factors:
        out = wedge(out, f)
    return out


def interior(X: AlternatingTensor, w: AlternatingTensor) -> AlternatingTensor:
    """Contraction of a multivector into a form, rightmost factor first."""
    if X.dim != w.dim:
        raise StructureError(f"ambient dimensions differ: {X.dim} vs {w.dim}")
    if X.covariant or not w.covariant:
        raise StructureError("interior expects (multivector, form)")
    if X.degree > w.degree:
        return _negative_degree_zero(w.dim, w.degree - X.degree, True)
    out: dict[MultiIndex, Fraction] = {}
    for J, x in X.components.items():
        for I, c in w.components.items():
            sign, rest = contract_index(J, I)
            if sign:
                out[rest] = out.get(rest, 0) + sign * x * c
    return AlternatingTensor(w.dim, w.degree - X.degree, True, out)


def contract_form_into(phi: AlternatingTensor, X: AlternatingTensor) -> AlternatingTensor:
    """Contraction of a form into a multivector (same slot convention)."""
    if phi.dim != X.dim:
        raise StructureError("ambient dimensions differ")
    if not phi.covariant or X.covariant:
        raise StructureError("expects (form, multivector)")
    if phi.degree > X.degree:
        return _negative_degree_zero(X.dim, X.degree - phi.degree, False)
    out: dict[MultiIndex, Fraction] = {}
    for J, x in phi.components.items():
        for I, c in X.components.items():
            sign, rest = contract_index(J, I)
            if sign:
                out[rest] = out.get(rest, 0) + sign * x * c
    return AlternatingTensor(X.dim, X.degree - phi.degree, False, out)


@dataclass(frozen=True)
class FlatMatrix:
    """Matrix of ``X -> i(X) w`` from degree-m multivectors to (k-m)-forms.

    Rows are indexed by ``basis_indices(n, k - m)``, columns by
    ``basis_indices(n, m)``.
    """

    source_degree: int
    target_degree: int
    dim: int
    matrix: list[list[Fraction]]

    @property
    def columns(self) -> list[MultiIndex]:
        return basis_indices(self.dim, self.source_degree)

    @property
    def rows(self) -> list[MultiIndex]:
        return basis_indices(self.dim, self.target_degree)

    def apply(self, X: AlternatingTensor) -> AlternatingTensor:
        vals = linalg.mat_vec(self.matrix, X.to_vector())
        return AlternatingTensor.from_vector(self.dim, self.target_degree, vals)

    def rank(self) -> int:
        return linalg.rank(self.matrix, len(self.columns))

    def kernel(self) -> list[AlternatingTensor]:
        return [AlternatingTensor.from_vector(self.dim, self.source_degree, v, covariant=False)
                for v in linalg.nullspace(self.matrix, len(self.columns))]


def flat_matrix(w: AlternatingTensor, m: int) -> FlatMatrix:
    if not w.covariant:
        raise StructureError("flat map needs a form")
    if not 1 <= m <= w.degree:
        raise ValueError(f"source degree m={m} outside 1..{w.degree}")
    n = w.dim
    rows = basis_indices(n, w.degree - m)
    row_pos = {I: r for r, I in enumerate(rows)}
    cols = basis_indices(n, m)
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for c, J in enumerate(cols):
        for I, coef in w.components.items():
            sign, rest = contract_index(J, I)
            if sign:
                mat[row_pos[rest]][c] += sign * coef
    return FlatMatrix(m, w.degree - m, n, mat)


def is_j_nondegenerate(w: AlternatingTensor, j: int) -> bool:
    # j = degree is admitted: the flat map is still defined there
    if not 1 <= j <= w.degree:
        raise ValueError(f"j={j} outside 1..{w.degree}")
    fm = flat_matrix(w, j)
    return fm.rank() == comb(w.dim, j)


def is_decomposable(X: AlternatingTensor) -> bool:
    """Plücker test: ``(i(phi) X) ^ X = 0`` for every basis (m-1)-covector."""
    if X.covariant:
        raise StructureError("decomposability is tested on multivectors")
    m = X.degree
    if not 1 <= m <= X.dim:
        raise ValueError(f"degree {m} outside 1..{X.dim}")
    if m in (1, X.dim, X.dim - 1) or X.is_zero():
        return True
    for J in basis_indices(X.dim, m - 1):
        v = contract_form_into(AlternatingTensor.basis(X.dim, J), X)
        if not wedge(v, X).is_zero():
            return False
    return True
