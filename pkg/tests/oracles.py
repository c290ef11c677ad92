"""Independent reference implementations used only by the tests.

Forms are expanded into dense, fully antisymmetric arrays indexed by every
ordered tuple of coordinates; polynomial calculus goes through sympy.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial

import sympy

from msk.exterior import AlternatingTensor
from msk.forms import Chart, DifferentialForm


def perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
            elif seq[i] == seq[j]:
                return 0
    return sign


def dense(t: AlternatingTensor) -> dict[tuple, Fraction]:
    out = {}
    for I, c in t.components.items():
        for p in permutations(I):
            out[p] = perm_sign(p) * c
    return out


def from_dense(T: dict, n: int, degree: int, covariant: bool = True) -> AlternatingTensor:
    comps = {I: v for I, v in T.items() if list(I) == sorted(set(I)) and v}
    return AlternatingTensor(n, degree, covariant, comps)


def dense_interior(X: AlternatingTensor, w: AlternatingTensor) -> AlternatingTensor:
    """i(e_J) w fills the leading slots with e_J reversed."""
    n, k, m = w.dim, w.degree, X.degree
    Wd = dense(w)
    out = {}
    for rest in product(range(n), repeat=k - m):
        total = Fraction(0)
        for J, x in X.components.items():
            total += x * Wd.get(tuple(reversed(J)) + rest, 0)
        if total:
            out[rest] = total
    return from_dense(out, n, k - m)


def dense_wedge(a: AlternatingTensor, b: AlternatingTensor) -> AlternatingTensor:
    """Alt-based wedge scaled to the determinant convention."""
    n, p, q = a.dim, a.degree, b.degree
    A, B = dense(a), dense(b)
    out = {}
    for idx in product(range(n), repeat=p + q):
        if len(set(idx)) < p + q or list(idx) != sorted(idx):
            continue
        total = Fraction(0)
        for perm in permutations(range(p + q)):
            s = perm_sign(perm)
            ordered = [idx[i] for i in perm]
            total += s * A.get(tuple(ordered[:p]), 0) * B.get(tuple(ordered[p:]), 0)
        out[idx] = total / (factorial(p) * factorial(q))
    return from_dense(out, n, p + q, a.covariant)


def dense_eval(w: AlternatingTensor, vectors) -> Fraction:
    """Sum over all index tuples; no determinants involved."""
    k = w.degree
    Wd = dense(w)
    total = Fraction(0)
    for idx, c in Wd.items():
        prod = Fraction(c)
        for slot in range(k):
            prod *= Fraction(vectors[slot][idx[slot]])
        total += prod
    return total


# --- polynomial calculus via sympy --------------------------------------------

def symbols(chart: Chart):
    return sympy.symbols(" ".join(f"s_{i}" for i in range(chart.dim)) + " _pad")[:chart.dim]


def to_sympy(poly, syms):
    expr = sympy.Integer(0)
    for e, c in poly.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return sympy.expand(expr)


def form_to_dense_sympy(w: DifferentialForm, syms) -> dict:
    out = {}
    for I, c in w.components.items():
        e = to_sympy(c, syms)
        for p in permutations(I):
            out[p] = perm_sign(p) * e
    return out


def dense_sympy_to_components(T: dict, n: int, degree: int) -> dict:
    out = {}
    for I in product(range(n), repeat=degree):
        if list(I) == sorted(set(I)) and len(set(I)) == degree:
            v = sympy.expand(T.get(I, 0))
            if v != 0:
                out[I] = v
    return out


def sympy_d(w: DifferentialForm) -> dict:
    syms = symbols(w.chart)
    n, k = w.chart.dim, w.degree
    T = form_to_dense_sympy(w, syms)
    out = {}
    for idx in product(range(n), repeat=k + 1):
        if list(idx) != sorted(set(idx)) or len(set(idx)) != k + 1:
            continue
        total = sympy.Integer(0)
        for j in range(k + 1):
            rest = idx[:j] + idx[j + 1:]
            total += (-1) ** j * sympy.diff(T.get(rest, 0), syms[idx[j]])
        out[idx] = total
    return dense_sympy_to_components(out, n, k + 1)


def sympy_components(w: DifferentialForm) -> dict:
    syms = symbols(w.chart)
    return {I: to_sympy(c, syms) for I, c in w.components.items()}


def sympy_pullback(phi, w: DifferentialForm) -> dict:
    """(phi^* w)_A = sum_I w_I(phi) det(d phi^I / d x^A)."""
    src_syms = symbols(phi.source)
    tgt_syms = symbols(phi.target)
    images = [to_sympy(c, src_syms) for c in phi.components]
    sub = dict(zip(tgt_syms, images))
    k = w.degree
    n = phi.source.dim
    out = {}
    for A in product(range(n), repeat=k):
        if list(A) != sorted(set(A)) or len(set(A)) != k:
            continue
        total = sympy.Integer(0)
        for I, c in w.components.items():
            coeff = to_sympy(c, tgt_syms).subs(sub, simultaneous=True)
            jac = sympy.Matrix(k, k, lambda r, s: sympy.diff(images[I[r]], src_syms[A[s]]))
            total += coeff * jac.det()
        total = sympy.expand(total)
        if total != 0:
            out[A] = total
    return out
