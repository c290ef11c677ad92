"""Differential forms and multivector fields with polynomial coefficients.

Everything lives on a single :class:`Chart`. Components are keyed by
0-based increasing multi-indices, exactly as in :mod:`msk.exterior`, and
evaluating a field at a rational point yields an ``AlternatingTensor``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Optional, Sequence

from msk.exterior import (
    AlternatingTensor,
    MultiIndex,
    StructureError,
    check_multi_index,
    contract_index,
    merge_sign,
)
from msk.polynomial import Polynomial, parse_polynomial


class PreconditionError(ValueError):
    """An operation's mathematical precondition does not hold."""


@dataclass(frozen=True)
class Chart:
    names: tuple[str, ...]
    base: Optional[tuple[str, ...]] = None
    fiber: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"coordinate names are not unique: {self.names}")
        if (self.base is None) != (self.fiber is None):
            raise ValueError("a fibration split needs both base and fiber lists")
        if self.base is not None:
            object.__setattr__(self, "base", tuple(self.base))
            object.__setattr__(self, "fiber", tuple(self.fiber))
            if sorted(self.base + self.fiber) != sorted(self.names) or \
                    set(self.base) & set(self.fiber):
                raise ValueError("fibration split must partition the coordinates")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate {name!r}") from None

    def coordinate(self, name: str) -> Polynomial:
        return Polynomial.variable(self.dim, self.index(name))

    def poly(self, text) -> Polynomial:
        if isinstance(text, Polynomial):
            return text
        if isinstance(text, (int, Fraction)):
            return Polynomial.constant(self.dim, text)
        return parse_polynomial(str(text), self.names)

    def origin(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) * self.dim


def _check_chart(a, b):
    if a.chart != b.chart:
        raise StructureError(f"objects live on different charts: {a.chart.names} vs {b.chart.names}")


class _Field:
    """Shared storage for forms and multivector fields."""

    covariant: bool

    def __init__(self, chart: Chart, degree: int,
                 components: Optional[Mapping[Sequence[int], object]] = None):
        if degree < 0:
            raise ValueError("negative degree")
        self.chart = chart
        self.degree = degree
        clean: dict[MultiIndex, Polynomial] = {}
        for idx, c in (components or {}).items():
            idx = check_multi_index(idx, chart.dim)
            if len(idx) != degree:
                raise ValueError(f"index {list(idx)} has wrong length for degree {degree}")
            c = chart.poly(c)
            if c.nvars != chart.dim:
                raise ValueError("coefficient lives in a ring of the wrong size")
            if idx in clean:
                c = clean[idx] + c
            if c:
                clean[idx] = c
            else:
                clean.pop(idx, None)
        self.components = dict(sorted(clean.items()))

    @classmethod
    def _raw(cls, chart: Chart, degree: int, components: dict[MultiIndex, Polynomial]):
        obj = object.__new__(cls)
        obj.chart = chart
        obj.degree = degree
        obj.components = dict(sorted((k, v) for k, v in components.items() if v))
        return obj

    @classmethod
    def zero(cls, chart: Chart, degree: int):
        return cls._raw(chart, degree, {})

    @classmethod
    def basis(cls, chart: Chart, index: Sequence[int], coeff=1):
        return cls(chart, len(tuple(index)), {tuple(index): coeff})

    def is_zero(self) -> bool:
        return not self.components

    def coefficient(self, index: Sequence[int]) -> Polynomial:
        return self.components.get(tuple(index), Polynomial.zero(self.chart.dim))

    def max_coefficient_degree(self) -> int:
        return max((c.total_degree() for c in self.components.values()), default=-1)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return (self.chart == other.chart and self.degree == other.degree
                and self.components == other.components)

    def __hash__(self):
        return hash((type(self).__name__, self.chart, self.degree,
                     tuple(self.components.items())))

    def _same(self, other):
        if type(other) is not type(self):
            raise StructureError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        _check_chart(self, other)
        if self.degree != other.degree:
            raise StructureError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._same(other)
        out = dict(self.components)
        for k, v in other.components.items():
            out[k] = out[k] + v if k in out else v
        return type(self)._raw(self.chart, self.degree, out)

    def __neg__(self):
        return type(self)._raw(self.chart, self.degree, {k: -v for k, v in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, Polynomial):
            return type(self)._raw(self.chart, self.degree, {k: c * v for k, v in self.components.items()})
        c = Fraction(c)
        return type(self)._raw(self.chart, self.degree, {k: v.scale(c) for k, v in self.components.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __xor__(self, other):
        return wedge(self, other)

    def at(self, point: Sequence) -> AlternatingTensor:
        point = tuple(Fraction(x) for x in point)
        if len(point) != self.chart.dim:
            raise ValueError(f"point has {len(point)} coordinates, chart has {self.chart.dim}")
        return AlternatingTensor(self.chart.dim, self.degree, self.covariant,
                                 {k: v.evaluate(point) for k, v in self.components.items()})

    def to_str(self) -> str:
        if not self.components:
            return "0"
        sym = "d" if self.covariant else "∂"
        parts = []
        for idx, c in self.components.items():
            basis = "^".join(f"{sym}{self.chart.names[i]}" for i in idx) or "1"
            parts.append(f"({c.to_str(self.chart.names)}) {basis}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(deg={self.degree}, {self.to_str()})"


class DifferentialForm(_Field):
    covariant = True


class MultiVectorField(_Field):
    covariant = False

    @classmethod
    def vector_field(cls, chart: Chart, coeffs: Sequence) -> "MultiVectorField":
        return cls(chart, 1, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def coordinate_field(cls, chart: Chart, name_or_index) -> "MultiVectorField":
        i = chart.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return cls.basis(chart, (i,))


def function(chart: Chart, p) -> DifferentialForm:
    """A 0-form."""
    return DifferentialForm(chart, 0, {(): chart.poly(p)})


def differential(chart: Chart, name: str) -> DifferentialForm:
    return DifferentialForm.basis(chart, (chart.index(name),))


def wedge(a: _Field, b: _Field) -> _Field:
    if type(a) is not type(b):
        raise StructureError("wedge needs two forms or two multivector fields")
    _check_chart(a, b)
    out: dict[MultiIndex, Polynomial] = {}
    for I, x in a.components.items():
        for J, y in b.components.items():
            sign, K = merge_sign(I, J)
            if sign:
                t = x * y
                if sign < 0:
                    t = -t
                out[K] = out[K] + t if K in out else t
    return type(a)._raw(a.chart, a.degree + b.degree, out)


def interior(X: MultiVectorField, w: DifferentialForm) -> DifferentialForm:
    """Pointwise contraction ``i(X) w``; rightmost factor of X applied first."""
    if not isinstance(X, MultiVectorField) or not isinstance(w, DifferentialForm):
        raise StructureError("interior expects (MultiVectorField, DifferentialForm)")
    _check_chart(X, w)
    if X.degree > w.degree:
        return _overcontracted(w.chart)
    out: dict[MultiIndex, Polynomial] = {}
    for J, x in X.components.items():
        for I, c in w.components.items():
            sign, rest = contract_index(J, I)
            if sign:
                t = x * c
                if sign < 0:
                    t = -t
                out[rest] = out[rest] + t if rest in out else t
    return DifferentialForm._raw(w.chart, w.degree - X.degree, out)


def _overcontracted(chart: Chart) -> DifferentialForm:
    # more slots than the form has; callers treat this as an absent term
    return DifferentialForm._raw(chart, -1, {})


def exterior_derivative(w: DifferentialForm) -> DifferentialForm:
    """Coordinate exterior derivative; a top-degree input yields the empty form."""
    n = w.chart.dim
    out: dict[MultiIndex, Polynomial] = {}
    for I, c in w.components.items():
        for j in range(n):
            if j in I:
                continue
            dc = c.diff(j)
            if not dc:
                continue
            sign, K = merge_sign((j,), I)
            t = dc if sign > 0 else -dc
            out[K] = out[K] + t if K in out else t
    return DifferentialForm._raw(w.chart, w.degree + 1, out)


def lie_bracket(X: MultiVectorField, Y: MultiVectorField) -> MultiVectorField:
    """``[X, Y]^i = X^j d_j Y^i - Y^j d_j X^i``."""
    _check_chart(X, Y)
    if X.degree != 1 or Y.degree != 1:
        raise StructureError("lie_bracket is defined here for vector fields only")
    n = X.chart.dim
    zero = Polynomial.zero(n)
    xs = [X.components.get((i,), zero) for i in range(n)]
    ys = [Y.components.get((i,), zero) for i in range(n)]
    out = {}
    for i in range(n):
        acc = zero
        for j in range(n):
            if xs[j]:
                acc = acc + xs[j] * ys[i].diff(j)
            if ys[j]:
                acc = acc - ys[j] * xs[i].diff(j)
        out[(i,)] = acc
    return MultiVectorField._raw(X.chart, 1, out)


def lie_derivative(X: MultiVectorField, w: DifferentialForm) -> DifferentialForm:
    """``L(X) w = d i(X) w - (-1)^m i(X) d w`` for X of degree m."""
    _check_chart(X, w)
    m = X.degree
    if m > w.degree + 1:
        raise ValueError(f"field degree {m} exceeds form degree + 1 = {w.degree + 1}")
    out = DifferentialForm.zero(w.chart, w.degree - m + 1)
    if m <= w.degree:
        out = out + exterior_derivative(interior(X, w))
    second = interior(X, exterior_derivative(w))
    if m % 2 == 0:
        second = -second
    return out + second


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map ``source -> target``: one polynomial per target coordinate."""

    source: Chart
    target: Chart
    components: tuple[Polynomial, ...] = field(default_factory=tuple)

    def __post_init__(self):
        comps = tuple(self.source.poly(c) for c in self.components)
        if len(comps) != self.target.dim:
            raise ValueError(f"map needs {self.target.dim} components, got {len(comps)}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def identity(cls, chart: Chart) -> "PolyMap":
        return cls(chart, chart, tuple(Polynomial.variable(chart.dim, i) for i in range(chart.dim)))

    def then(self, other: "PolyMap") -> "PolyMap":
        """``other ∘ self``."""
        if self.target != other.source:
            raise StructureError("maps are not composable")
        return PolyMap(self.source, other.target,
                       tuple(c.compose(self.components) for c in other.components))

    def __call__(self, point: Sequence) -> tuple[Fraction, ...]:
        return tuple(c.evaluate(point) for c in self.components)


def pullback(phi: PolyMap, w: DifferentialForm) -> DifferentialForm:
    if w.chart != phi.target:
        raise StructureError("form does not live on the map's target chart")
    src = phi.source
    dphi = [exterior_derivative(DifferentialForm._raw(src, 0, {(): c})) for c in phi.components]
    out = DifferentialForm.zero(src, w.degree)
    for I, c in w.components.items():
        term = DifferentialForm._raw(src, 0, {(): c.compose(phi.components)})
        for i in I:
            term = wedge(term, dphi[i])
        out = out + term
    return out


def homotopy_inverse_d(w: DifferentialForm) -> DifferentialForm:
    """Radial Poincaré homotopy operator centered at the origin.

    For closed ``w`` of degree k >= 1 returns ``eta`` with ``d eta = w``; the
    result is re-verified before it is returned.
    """
    if w.degree < 1:
        raise ValueError("homotopy operator needs degree >= 1")
    dw = exterior_derivative(w)
    if not dw.is_zero():
        raise PreconditionError(
            f"form is not closed; nonzero components of dw: {dw.to_str()}")
    eta = _radial_homotopy(w)
    if exterior_derivative(eta) != w:
        raise AssertionError("homotopy operator failed to invert d")  # pragma: no cover
    return eta


def _radial_homotopy(w: DifferentialForm) -> DifferentialForm:
    n = w.chart.dim
    k = w.degree
    out: dict[MultiIndex, Polynomial] = {}
    for I, c in w.components.items():
        integrated = c.radial_integral(k)
        for pos, i in enumerate(I):
            rest = I[:pos] + I[pos + 1:]
            t = integrated * Polynomial.variable(n, i)
            if pos % 2:
                t = -t
            out[rest] = out[rest] + t if rest in out else t
    return DifferentialForm._raw(w.chart, k - 1, out)


def form_dimension(chart: Chart, degree: int) -> int:
    return comb(chart.dim, degree)
