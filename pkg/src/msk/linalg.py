"""Exact rational linear algebra over ``fractions.Fraction``.

Matrices are plain lists of rows. Every routine copies its input, so callers
may pass shared data.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Matrix = list[list[Fraction]]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass ints, strings or Fractions")
    return Fraction(value)


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[as_fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(map(as_fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        row = m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column, in column order.

    The basis is canonical: the free coordinate of each vector is 1 and the
    other free coordinates are 0.
    """
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> Optional[list[Fraction]]:
    """One solution of A x = b with free variables set to zero, or None."""
    aug = [list(r) + [as_fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def mat_vec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a: Sequence[Sequence[Fraction]], nrows_out: Optional[int] = None) -> Matrix:
    if not a:
        return [[] for _ in range(nrows_out or 0)]
    return [list(col) for col in zip(*a)]


class RowReducer:
    """Incrementally maintained reduced row space.

    Rows are sparse dicts ``{column: Fraction}``. Adding a row reduces it
    against the current basis; it is kept only when independent.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        row = {c: v for c, v in row.items() if v}
        # basis rows are fully reduced: subtracting one never reintroduces
        # another pivot column, so a single pass suffices
        for hit in [c for c in row if c in self.rows]:
            f = row.get(hit)
            if not f:
                continue
            for c, v in self.rows[hit].items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return row

    def add(self, row: dict[int, Fraction]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        piv = min(row)
        lead = row[piv]
        row = {c: v / lead for c, v in row.items()}
        # keep the basis fully reduced so nullspace extraction is direct
        for p, other in self.rows.items():
            f = other.get(piv)
            if f:
                for c, v in row.items():
                    nv = other.get(c, 0) - f * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        self.rows[piv] = row
        return True

    def nullspace(self) -> Matrix:
        pivots = self.rows
        basis = []
        for free in range(self.ncols):
            if free in pivots:
                continue
            v = [Fraction(0)] * self.ncols
            v[free] = Fraction(1)
            for pc, row in pivots.items():
                coef = row.get(free)
                if coef:
                    v[pc] = -coef
            basis.append(v)
        return basis
