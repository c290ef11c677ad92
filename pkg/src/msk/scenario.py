"""Scenario files, the task runner, and canonical reports.

A scenario is a JSON document::

    {
      "schema": "msk-scenario/1",
      "name": "symplectic-plane",
      "seed": 0,
      "chart": {"coordinates": ["x", "p"], "base": ["x"], "fiber": ["p"]},
      "forms":     {"Omega": {"degree": 2, "components": [{"index": [1, 2], "coeff": "-1"}]}},
      "fields":    {"E": {"degree": 1, "components": [{"index": [1], "coeff": "x"}]}},
      "subspaces": {"W": {"rows": [["1", "0"]]}},
      "points":    {"q": ["0", "1/2"]},
      "maps":      {"swap": {"components": ["p", "-x"]}},
      "models":    {"M": {"base_dim": 1, "degree": 1}},
      "tasks": [{"id": "nondeg", "op": "is_j_nondegenerate",
                 "args": {"form": "Omega", "j": 1}, "expect": {"value": true}}]
    }

Multi-indices are 1-based positions in ``chart.coordinates`` (coordinate
names are accepted too) and must be strictly increasing. Coefficients use
the polynomial grammar of :mod:`msk.polynomial`; rationals are strings
``"a/b"``. Only ``chart`` and ``tasks`` are required.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from msk import exterior, forms, hamiltonian, homogeneity, models, orthogonality, sampling
from msk.exterior import AlternatingTensor
from msk.forms import Chart, DifferentialForm, MultiVectorField, PolyMap
from msk.orthogonality import Subspace
from msk.polynomial import PolynomialSyntaxError

SCENARIO_SCHEMA = "msk-scenario/1"
REPORT_SCHEMA = "msk-report/1"
DEFAULT_SEED = 0

PASS, FAIL, ERROR, INCONCLUSIVE = "pass", "fail", "error", "inconclusive"


class ScenarioSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ScenarioError(ValueError):
    """Semantic problem: undefined reference, wrong degree, malformed entry."""


# --- canonical serialization -------------------------------------------------

def frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def field_to_json(f) -> dict:
    return {"degree": f.degree,
            "components": [{"index": [i + 1 for i in I], "coeff": c.to_str(f.chart.names)}
                           for I, c in f.components.items()]}


def tensor_to_json(t: AlternatingTensor) -> dict:
    return {"degree": t.degree,
            "components": [{"index": [i + 1 for i in I], "coeff": frac(c)}
                           for I, c in t.components.items()]}


def rows_to_json(rows) -> list[list[str]]:
    return [[frac(x) for x in r] for r in rows]


def subspace_to_json(W: Subspace) -> dict:
    return {"dim": W.rank, "rows": rows_to_json(W.basis)}


# --- scenario model -----------------------------------------------------------

@dataclass
class Task:
    id: str
    op: str
    args: dict = field(default_factory=dict)
    expect: Optional[dict] = None


@dataclass
class Scenario:
    chart: Chart
    name: str = ""
    seed: Optional[int] = None
    forms: dict[str, DifferentialForm] = field(default_factory=dict)
    fields: dict[str, MultiVectorField] = field(default_factory=dict)
    subspaces: dict[str, Subspace] = field(default_factory=dict)
    points: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)
    maps: dict[str, PolyMap] = field(default_factory=dict)
    models: dict[str, dict] = field(default_factory=dict)
    tasks: list[Task] = field(default_factory=list)

    def model(self, name: str) -> models.DarbouxModel:
        return _build_model(self.models[name])


def _build_model(spec: dict) -> models.DarbouxModel:
    if "horizontal" in spec:
        return models.build_darboux_horizontal(spec["base"], spec["fiber"], spec["degree"],
                                               spec["horizontal"])
    names = spec.get("base")
    n = spec["base_dim"] if names is None else len(names)
    return models.build_darboux(n, spec["degree"], names)


# --- parsing ------------------------------------------------------------------

def _expect_type(value, kind, where: str):
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        name = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise ScenarioError(f"{where}: expected {name}, got {type(value).__name__}")
    return value


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ScenarioError(f"{where}: rationals are written as integers or 'a/b' strings")
    try:
        return Fraction(value) if isinstance(value, int) else Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ScenarioError(f"{where}: {value!r} is not a rational number") from None


def _index(chart: Chart, raw, where: str) -> tuple[int, ...]:
    _expect_type(raw, list, where)
    out = []
    for j, entry in enumerate(raw):
        if isinstance(entry, str):
            if entry not in chart.names:
                raise ScenarioError(f"{where}[{j}]: unknown coordinate {entry!r}")
            out.append(chart.index(entry))
        elif isinstance(entry, int) and not isinstance(entry, bool):
            if not 1 <= entry <= chart.dim:
                raise ScenarioError(f"{where}[{j}]: index {entry} outside 1..{chart.dim}")
            out.append(entry - 1)
        else:
            raise ScenarioError(f"{where}[{j}]: indices are 1-based integers or coordinate names")
    if any(b <= a for a, b in zip(out, out[1:])):
        shown = [i + 1 for i in out]
        raise ScenarioError(
            f"{where}: index {shown} is not strictly increasing; write it as "
            f"{sorted(set(shown))} and absorb the permutation sign into the coefficient")
    return tuple(out)


def _parse_field(cls, chart: Chart, raw, where: str):
    _expect_type(raw, dict, where)
    degree = _expect_type(raw.get("degree"), int, f"{where}.degree")
    if not 0 <= degree <= chart.dim:
        raise ScenarioError(f"{where}.degree: {degree} outside 0..{chart.dim}")
    comps: dict = {}
    for j, comp in enumerate(_expect_type(raw.get("components", []), list, f"{where}.components")):
        w = f"{where}.components[{j}]"
        _expect_type(comp, dict, w)
        idx = _index(chart, comp.get("index"), f"{w}.index")
        if len(idx) != degree:
            raise ScenarioError(f"{w}.index: length {len(idx)} does not match degree {degree}")
        coeff = comp.get("coeff", "1")
        if isinstance(coeff, int) and not isinstance(coeff, bool):
            coeff = str(coeff)
        _expect_type(coeff, str, f"{w}.coeff")
        try:
            poly = chart.poly(coeff)
        except PolynomialSyntaxError as exc:
            raise ScenarioError(f"{w}.coeff: {exc}") from None
        comps[idx] = comps[idx] + poly if idx in comps else poly
    return cls(chart, degree, comps)


def _parse_point(chart: Chart, raw, where: str) -> tuple[Fraction, ...]:
    _expect_type(raw, list, where)
    if len(raw) != chart.dim:
        raise ScenarioError(f"{where}: point needs {chart.dim} coordinates, got {len(raw)}")
    return tuple(_rational(x, f"{where}[{j}]") for j, x in enumerate(raw))


def _parse_chart(raw) -> Chart:
    _expect_type(raw, dict, "chart")
    coords = _expect_type(raw.get("coordinates"), list, "chart.coordinates")
    for j, c in enumerate(coords):
        _expect_type(c, str, f"chart.coordinates[{j}]")
        if not c.isidentifier():
            raise ScenarioError(f"chart.coordinates[{j}]: {c!r} is not an identifier")
    base, fiber = raw.get("base"), raw.get("fiber")
    try:
        return Chart(tuple(coords), None if base is None else tuple(base),
                     None if fiber is None else tuple(fiber))
    except ValueError as exc:
        raise ScenarioError(f"chart: {exc}") from None


def _parse_model(raw, where: str) -> dict:
    _expect_type(raw, dict, where)
    spec = {"degree": _expect_type(raw.get("degree"), int, f"{where}.degree")}
    if "horizontal" in raw:
        spec["horizontal"] = _expect_type(raw["horizontal"], int, f"{where}.horizontal")
        spec["base"] = list(_expect_type(raw.get("base"), list, f"{where}.base"))
        spec["fiber"] = list(_expect_type(raw.get("fiber"), list, f"{where}.fiber"))
    elif "base" in raw:
        spec["base"] = list(_expect_type(raw["base"], list, f"{where}.base"))
    else:
        spec["base_dim"] = _expect_type(raw.get("base_dim"), int, f"{where}.base_dim")
    try:
        _build_model(spec)
    except (ValueError, KeyError) as exc:
        raise ScenarioError(f"{where}: {exc}") from None
    return spec


# argument kinds: name references resolve against scenario tables
REF_KINDS = {"form": "forms", "field": "fields", "subspace": "subspaces", "map": "maps",
             "model": "models"}

OP_ARGS: dict[str, dict[str, tuple[str, bool]]] = {
    "wedge": {"a": ("form|field", True), "b": ("form|field", True)},
    "interior": {"field": ("field", True), "form": ("form", True), "point": ("point", False)},
    "flat_matrix": {"form": ("form", True), "m": ("int", True), "point": ("point", False)},
    "is_j_nondegenerate": {"form": ("form", True), "j": ("int", True), "point": ("point", False)},
    "is_decomposable": {"field": ("field", True), "point": ("point", False)},
    "exterior_derivative": {"form": ("form", True)},
    "lie_bracket": {"a": ("field", True), "b": ("field", True)},
    "lie_derivative": {"field": ("field", True), "form": ("form", True)},
    "pullback": {"map": ("map", True), "form": ("form", True)},
    "homotopy_inverse_d": {"form": ("form", True)},
    "orth_complement": {"subspace": ("subspace", True), "form": ("form", True),
                        "r": ("int", True), "point": ("point", False)},
    "classify": {"subspace": ("subspace", True), "form": ("form", True),
                 "r": ("int", True), "point": ("point", False)},
    "is_maximal_isotropic": {"subspace": ("subspace", True), "form": ("form", True),
                             "r": ("int", True), "point": ("point", False)},
    "tautological_eval": {"model": ("model", True), "point": ("point", True),
                          "vectors": ("vectors", True)},
    "check_type_conditions": {"form": ("form", True), "distribution": ("fields", True),
                              "eps": ("vectors", False), "r": ("int", True),
                              "point": ("point", False), "samples": ("points", False)},
    "certify": {"field": ("field", True), "form": ("form", True)},
    "solve_hamiltonian_field": {"zeta": ("form", True), "form": ("form", True),
                                "m": ("int", True), "degree_bound": ("int", True)},
    "check_local_homogeneity": {"form": ("form", True), "field": ("field", True)},
    "hamiltonian_span_rank": {"form": ("form", True), "fields": ("fields", True),
                              "point": ("point", False)},
    "invariance_probe": {"form": ("form", True), "p": ("int", True),
                         "degree_bound": ("int", True), "vector_fields": ("fields", False),
                         "multivector_fields": ("fields", False)},
    "property": {"name": ("str", True), "trials": ("int", False)},
}


def _check_arg(scn: Scenario, kind: str, value, where: str):
    if kind == "int":
        _expect_type(value, int, where)
    elif kind == "str":
        _expect_type(value, str, where)
    elif kind == "point":
        if isinstance(value, str):
            if value not in scn.points:
                raise ScenarioError(f"{where}: undefined point {value!r}")
        else:
            _parse_point(scn.chart, value, where)
    elif kind == "points":
        for j, v in enumerate(_expect_type(value, list, where)):
            _check_arg(scn, "point", v, f"{where}[{j}]")
    elif kind == "vectors":
        for j, v in enumerate(_expect_type(value, list, where)):
            _expect_type(v, list, f"{where}[{j}]")
            for i, x in enumerate(v):
                _rational(x, f"{where}[{j}][{i}]")
    elif kind == "fields":
        for j, v in enumerate(_expect_type(value, list, where)):
            _check_arg(scn, "field", v, f"{where}[{j}]")
    else:
        _expect_type(value, str, where)
        options = kind.split("|")
        if not any(value in getattr(scn, REF_KINDS[o]) for o in options):
            raise ScenarioError(f"{where}: undefined {' or '.join(options)} {value!r}")


def _validate_task(scn: Scenario, task: Task, where: str):
    if task.op not in OP_ARGS:
        raise ScenarioError(f"{where}.op: unknown operation {task.op!r}")
    spec = OP_ARGS[task.op]
    for name in task.args:
        if name not in spec:
            raise ScenarioError(f"{where}.args: unexpected argument {name!r} for {task.op}")
    for name, (kind, required) in spec.items():
        if name not in task.args:
            if required:
                raise ScenarioError(f"{where}.args: {task.op} needs argument {name!r}")
            continue
        _check_arg(scn, kind, task.args[name], f"{where}.args.{name}")
    if task.op == "property" and task.args["name"] not in PROPERTIES:
        raise ScenarioError(f"{where}.args.name: unknown property {task.args['name']!r}")
    if task.op == "tautological_eval":
        model = scn.model(task.args["model"])
        # model coordinates are matched to the scenario chart by position
        if model.chart.dim != scn.chart.dim:
            raise ScenarioError(f"{where}: model {task.args['model']!r} has dimension "
                                f"{model.chart.dim}, the scenario chart has {scn.chart.dim}")
    for key in ("form", "zeta"):
        if key in task.args and task.op not in ("property",):
            f = scn.forms[task.args[key]]
            for int_arg in ("j", "m", "r"):
                if int_arg in task.args and task.op in ("is_j_nondegenerate", "flat_matrix") \
                        and not 1 <= task.args[int_arg] <= f.degree:
                    raise ScenarioError(
                        f"{where}.args.{int_arg}: {task.args[int_arg]} outside 1..{f.degree} "
                        f"for the degree-{f.degree} form {task.args[key]!r}")


def parse_scenario(text: str) -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    _expect_type(raw, dict, "scenario")
    schema = raw.get("schema", SCENARIO_SCHEMA)
    if schema != SCENARIO_SCHEMA:
        raise ScenarioError(f"schema: unsupported version {schema!r}; expected {SCENARIO_SCHEMA!r}")
    known = {"schema", "name", "seed", "chart", "forms", "fields", "subspaces", "points",
             "maps", "models", "tasks"}
    for key in raw:
        if key not in known:
            raise ScenarioError(f"unknown top-level key {key!r}")
    if "chart" not in raw:
        raise ScenarioError("scenario needs a 'chart'")
    chart = _parse_chart(raw["chart"])
    scn = Scenario(chart=chart, name=_expect_type(raw.get("name", ""), str, "name"))
    if raw.get("seed") is not None:
        scn.seed = _expect_type(raw["seed"], int, "seed")

    for name, entry in _expect_type(raw.get("forms", {}), dict, "forms").items():
        scn.forms[name] = _parse_field(DifferentialForm, chart, entry, f"forms.{name}")
    for name, entry in _expect_type(raw.get("fields", {}), dict, "fields").items():
        scn.fields[name] = _parse_field(MultiVectorField, chart, entry, f"fields.{name}")
    for name, entry in _expect_type(raw.get("subspaces", {}), dict, "subspaces").items():
        w = f"subspaces.{name}"
        _expect_type(entry, dict, w)
        rows = _expect_type(entry.get("rows", []), list, f"{w}.rows")
        vecs = [_parse_point(chart, r, f"{w}.rows[{j}]") for j, r in enumerate(rows)]
        scn.subspaces[name] = Subspace.span(vecs, chart.dim)
    for name, entry in _expect_type(raw.get("points", {}), dict, "points").items():
        scn.points[name] = _parse_point(chart, entry, f"points.{name}")
    for name, entry in _expect_type(raw.get("maps", {}), dict, "maps").items():
        w = f"maps.{name}"
        _expect_type(entry, dict, w)
        comps = _expect_type(entry.get("components"), list, f"{w}.components")
        if len(comps) != chart.dim:
            raise ScenarioError(f"{w}.components: need {chart.dim} polynomials, got {len(comps)}")
        try:
            polys = tuple(chart.poly(_expect_type(c, str, f"{w}.components[{j}]"))
                          for j, c in enumerate(comps))
        except PolynomialSyntaxError as exc:
            raise ScenarioError(f"{w}: {exc}") from None
        scn.maps[name] = PolyMap(chart, chart, polys)
    for name, entry in _expect_type(raw.get("models", {}), dict, "models").items():
        scn.models[name] = _parse_model(entry, f"models.{name}")

    seen_ids = set()
    for j, entry in enumerate(_expect_type(raw.get("tasks", []), list, "tasks")):
        w = f"tasks[{j}]"
        _expect_type(entry, dict, w)
        tid = _expect_type(entry.get("id", f"task{j + 1}"), str, f"{w}.id")
        if tid in seen_ids:
            raise ScenarioError(f"{w}.id: duplicate task id {tid!r}")
        seen_ids.add(tid)
        task = Task(tid, _expect_type(entry.get("op"), str, f"{w}.op"),
                    dict(_expect_type(entry.get("args", {}), dict, f"{w}.args")),
                    entry.get("expect"))
        if task.expect is not None:
            _expect_type(task.expect, dict, f"{w}.expect")
        _validate_task(scn, task, w)
        scn.tasks.append(task)
    return scn


def scenario_to_json(scn: Scenario) -> dict:
    out: dict[str, Any] = {"schema": SCENARIO_SCHEMA}
    if scn.name:
        out["name"] = scn.name
    if scn.seed is not None:
        out["seed"] = scn.seed
    chart = {"coordinates": list(scn.chart.names)}
    if scn.chart.base is not None:
        chart["base"] = list(scn.chart.base)
        chart["fiber"] = list(scn.chart.fiber)
    out["chart"] = chart
    if scn.forms:
        out["forms"] = {k: field_to_json(v) for k, v in scn.forms.items()}
    if scn.fields:
        out["fields"] = {k: field_to_json(v) for k, v in scn.fields.items()}
    if scn.subspaces:
        out["subspaces"] = {k: {"rows": rows_to_json(v.basis)} for k, v in scn.subspaces.items()}
    if scn.points:
        out["points"] = {k: [frac(x) for x in v] for k, v in scn.points.items()}
    if scn.maps:
        out["maps"] = {k: {"components": [c.to_str(scn.chart.names) for c in v.components]}
                       for k, v in scn.maps.items()}
    if scn.models:
        out["models"] = {k: dict(v) for k, v in scn.models.items()}
    tasks = []
    for t in scn.tasks:
        entry = {"id": t.id, "op": t.op, "args": t.args}
        if t.expect is not None:
            entry["expect"] = t.expect
        tasks.append(entry)
    out["tasks"] = tasks
    return out


def dump_scenario(scn: Scenario) -> str:
    return json.dumps(scenario_to_json(scn), indent=2, ensure_ascii=False) + "\n"


# --- execution ----------------------------------------------------------------

@dataclass
class Entry:
    id: str
    op: str
    status: str
    payload: dict
    message: str = ""
    seconds: Optional[float] = None


@dataclass
class Report:
    scenario: str
    seed: int
    entries: list[Entry] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 1 if any(e.status in (FAIL, ERROR) for e in self.entries) else 0

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, ERROR: 0, INCONCLUSIVE: 0}
        for e in self.entries:
            out[e.status] += 1
        return out


class _Context:
    def __init__(self, scn: Scenario, seed: int):
        self.scn = scn
        self.seed = seed

    def point(self, args) -> tuple[Fraction, ...]:
        raw = args.get("point")
        if raw is None:
            return self.scn.chart.origin()
        if isinstance(raw, str):
            return self.scn.points[raw]
        return _parse_point(self.scn.chart, raw, "point")

    def form(self, name):
        return self.scn.forms[name]

    def field(self, name):
        return self.scn.fields[name]

    def fields(self, names):
        return [self.scn.fields[n] for n in names]

    def vectors(self, raw):
        return [[_rational(x, "vector") for x in v] for v in raw]

    def ref(self, name):
        return self.scn.forms.get(name) or self.scn.fields[name]


def _op_wedge(ctx, a):
    x, y = ctx.ref(a["a"]), ctx.ref(a["b"])
    return {"result": field_to_json(forms.wedge(x, y))}


def _op_interior(ctx, a):
    out = forms.interior(ctx.field(a["field"]), ctx.form(a["form"]))
    payload = {"result": field_to_json(out)}
    if "point" in a:
        payload["at_point"] = tensor_to_json(out.at(ctx.point(a)))
    return payload


def _op_flat_matrix(ctx, a):
    fm = exterior.flat_matrix(ctx.form(a["form"]).at(ctx.point(a)), a["m"])
    return {"matrix": rows_to_json(fm.matrix), "rank": fm.rank(),
            "columns": [[i + 1 for i in I] for I in fm.columns],
            "rows": [[i + 1 for i in I] for I in fm.rows]}


def _op_nondeg(ctx, a):
    return {"value": exterior.is_j_nondegenerate(ctx.form(a["form"]).at(ctx.point(a)), a["j"])}


def _op_decomposable(ctx, a):
    return {"value": exterior.is_decomposable(ctx.field(a["field"]).at(ctx.point(a)))}


def _op_d(ctx, a):
    return {"result": field_to_json(forms.exterior_derivative(ctx.form(a["form"])))}


def _op_bracket(ctx, a):
    return {"result": field_to_json(forms.lie_bracket(ctx.field(a["a"]), ctx.field(a["b"])))}


def _op_lie(ctx, a):
    return {"result": field_to_json(forms.lie_derivative(ctx.field(a["field"]), ctx.form(a["form"])))}


def _op_pullback(ctx, a):
    return {"result": field_to_json(forms.pullback(ctx.scn.maps[a["map"]], ctx.form(a["form"])))}


def _op_homotopy(ctx, a):
    return {"result": field_to_json(forms.homotopy_inverse_d(ctx.form(a["form"])))}


def _pointwise(ctx, a):
    return ctx.scn.subspaces[a["subspace"]], ctx.form(a["form"]).at(ctx.point(a)), a["r"]


def _op_complement(ctx, a):
    return {"complement": subspace_to_json(orthogonality.orth_complement(*_pointwise(ctx, a)))}


def _op_classify(ctx, a):
    rep = orthogonality.classify(*_pointwise(ctx, a))
    return {"r": rep.r, "isotropic": rep.isotropic, "coisotropic": rep.coisotropic,
            "lagrangian": rep.lagrangian, "multisymplectic": rep.multisymplectic,
            "complement": subspace_to_json(rep.complement)}


def _op_maximal(ctx, a):
    return {"value": orthogonality.is_maximal_isotropic(*_pointwise(ctx, a))}


def _op_tautological(ctx, a):
    model = ctx.scn.model(a["model"])
    pt, vecs = ctx.point(a), ctx.vectors(a["vectors"])
    intrinsic = models.tautological_eval(model, pt, vecs)
    coordinate = models.theta_coordinate_eval(model, pt, vecs)
    return {"value": frac(intrinsic), "coordinate_value": frac(coordinate),
            "agree": intrinsic == coordinate}


def _op_type_conditions(ctx, a):
    pt = ctx.point(a)
    samples = [ctx.point({"point": s}) for s in a.get("samples", [])]
    rep = models.check_type_conditions(ctx.form(a["form"]), ctx.fields(a["distribution"]),
                                       ctx.vectors(a.get("eps", [])), a["r"], pt, samples)
    return {"r": rep.r, "one_isotropic": rep.one_isotropic, "involutive": rep.involutive,
            "contraction_vanishing": rep.contraction_vanishing,
            "contraction_vanishing_literal": rep.contraction_vanishing_literal,
            "dimension_equality": rep.dimension_equality,
            "quotient_dimension": rep.quotient_dimension, "verdict": rep.verdict,
            "dim_w": rep.dim_w, "expected_dim_w": rep.expected_dim_w,
            "quotient_dim": rep.quotient_dim, "eps_dim": rep.eps_dim, "notes": list(rep.notes)}


def _op_certify(ctx, a):
    cert = hamiltonian.certify(ctx.field(a["field"]), ctx.form(a["form"]))
    payload = {"verdict": cert.verdict, "degree": cert.degree,
               "locally_hamiltonian": cert.locally_hamiltonian, "hamiltonian": cert.hamiltonian,
               "contraction": field_to_json(cert.contraction)}
    if cert.hamiltonian_form is not None:
        payload["hamiltonian_form"] = field_to_json(cert.hamiltonian_form)
    return payload


def _op_solve(ctx, a):
    sol = hamiltonian.solve_hamiltonian_field(ctx.form(a["zeta"]), ctx.form(a["form"]),
                                              a["m"], a["degree_bound"])
    return {"solvable": sol.solvable,
            "particular": None if sol.particular is None else field_to_json(sol.particular),
            "homogeneous": [field_to_json(h) for h in sol.homogeneous], "reason": sol.reason}


def _op_homogeneity(ctx, a):
    rep = homogeneity.check_local_homogeneity(ctx.form(a["form"]), ctx.field(a["field"]))
    names = ctx.scn.chart.names
    return {"success": rep.success,
            "factor": None if rep.factor is None else rep.factor.to_str(names),
            "lie_derivative": field_to_json(rep.lie_derivative), "reason": rep.reason}


def _op_span(ctx, a):
    res = homogeneity.hamiltonian_span_rank(ctx.form(a["form"]), ctx.fields(a["fields"]), ctx.point(a))
    return {"rank": res.rank, "full": res.full, "closed": list(res.closed), "dim": res.dim}


def _op_probe(ctx, a):
    omega = ctx.form(a["form"])
    gens = None
    if "vector_fields" in a or "multivector_fields" in a:
        gens = homogeneity.GeneratorFamily(ctx.fields(a.get("vector_fields", [])),
                                           ctx.fields(a.get("multivector_fields", [])))
    res = homogeneity.invariance_probe(omega, a["p"], a["degree_bound"], gens)
    return {"verdict": res.verdict, "p": res.degree, "degree_bound": res.degree_bound,
            "dimension": len(res.basis), "unknowns": res.unknowns,
            "generators": list(res.generator_counts),
            "basis": [field_to_json(b) for b in res.basis]}


# --- randomized property tasks ---------------------------------------------------

def _prop_d_squared(rng: random.Random) -> bool:
    ch = sampling.chart(rng.randint(1, 4))
    w = sampling.form(rng, ch, rng.randint(0, ch.dim))
    return forms.exterior_derivative(forms.exterior_derivative(w)).is_zero()


def _prop_naturality(rng: random.Random) -> bool:
    src = sampling.chart(rng.randint(1, 3))
    tgt = sampling.chart(rng.randint(1, 3))
    phi = sampling.poly_map(rng, src, tgt)
    w = sampling.form(rng, tgt, rng.randint(0, tgt.dim), max_degree=2)
    return forms.pullback(phi, forms.exterior_derivative(w)) == \
        forms.exterior_derivative(forms.pullback(phi, w))


def _prop_poincare(rng: random.Random) -> bool:
    ch = sampling.chart(rng.randint(1, 4))
    eta = sampling.form(rng, ch, rng.randint(0, ch.dim - 1))
    w = forms.exterior_derivative(eta)
    if w.is_zero():
        return True
    return forms.exterior_derivative(forms.homotopy_inverse_d(w)) == w


def _prop_contraction_law(rng: random.Random) -> bool:
    n = rng.randint(1, 6)
    k = rng.randint(1, min(n, 4))
    m = rng.randint(1, k)
    X, vecs = sampling.decomposable(rng, n, m)
    w = sampling.tensor(rng, n, k)
    iterated = w
    for v in reversed(vecs):
        iterated = exterior.interior(AlternatingTensor.vector(v), iterated)
    return exterior.interior(X, w) == iterated


def _prop_monotonicity(rng: random.Random) -> bool:
    n = rng.randint(2, 5)
    k = rng.randint(3, min(n, 4)) if n >= 3 else 2
    w = sampling.tensor(rng, n, k)
    W = sampling.subspace(rng, n)
    r = rng.randint(1, k - 2) if k >= 3 else None
    if r is None:
        return True
    return orthogonality.orth_complement(W, w, r) <= orthogonality.orth_complement(W, w, r + 1)


PROPERTIES: dict[str, Callable[[random.Random], bool]] = {
    "d_squared_zero": _prop_d_squared,
    "pullback_naturality": _prop_naturality,
    "poincare_round_trip": _prop_poincare,
    "contraction_law": _prop_contraction_law,
    "complement_monotonicity": _prop_monotonicity,
}


def _op_property(ctx, a, task_index: int):
    trials = a.get("trials", 20)
    rng = random.Random(f"{ctx.seed}:{task_index}:{a['name']}")
    prop = PROPERTIES[a["name"]]
    failures = [t for t in range(trials) if not prop(rng)]
    return {"name": a["name"], "trials": trials, "failures": len(failures),
            "holds": not failures}


HANDLERS: dict[str, Callable] = {
    "wedge": _op_wedge,
    "interior": _op_interior,
    "flat_matrix": _op_flat_matrix,
    "is_j_nondegenerate": _op_nondeg,
    "is_decomposable": _op_decomposable,
    "exterior_derivative": _op_d,
    "lie_bracket": _op_bracket,
    "lie_derivative": _op_lie,
    "pullback": _op_pullback,
    "homotopy_inverse_d": _op_homotopy,
    "orth_complement": _op_complement,
    "classify": _op_classify,
    "is_maximal_isotropic": _op_maximal,
    "tautological_eval": _op_tautological,
    "check_type_conditions": _op_type_conditions,
    "certify": _op_certify,
    "solve_hamiltonian_field": _op_solve,
    "check_local_homogeneity": _op_homogeneity,
    "hamiltonian_span_rank": _op_span,
    "invariance_probe": _op_probe,
}


def _normalize(value, chart: Chart):
    """Canonical form of an expected value so it compares with a payload."""
    if isinstance(value, dict):
        if "degree" in value and "components" in value:
            cls = DifferentialForm
            try:
                f = _parse_field(cls, chart, value, "expect")
            except ScenarioError:
                return value
            return field_to_json(f)
        return {k: _normalize(v, chart) for k, v in value.items()}
    if isinstance(value, list):
        return [_normalize(v, chart) for v in value]
    if isinstance(value, str):
        try:
            return frac(Fraction(value))
        except (ValueError, ZeroDivisionError):
            try:
                return chart.poly(value).to_str(chart.names)
            except (PolynomialSyntaxError, ValueError):
                return value
    return value


def _compare(expect: dict, payload: dict, chart: Chart) -> list[str]:
    problems = []
    for key, want in expect.items():
        if key not in payload:
            problems.append(f"payload has no key {key!r}")
            continue
        got = payload[key]
        if _normalize(want, chart) != _normalize(got, chart):
            problems.append(f"{key}: expected {json.dumps(want)}, got {json.dumps(got)}")
    return problems


def _status_for(op: str, payload: dict) -> str:
    if op == "invariance_probe" and payload["verdict"] == homogeneity.INCONCLUSIVE:
        return INCONCLUSIVE
    if op == "property" and not payload["holds"]:
        return FAIL
    if op == "tautological_eval" and not payload["agree"]:
        return FAIL
    return PASS


def run(scn: Scenario, seed: Optional[int] = None, task: Optional[str] = None,
        timings: bool = False) -> Report:
    """Execute tasks in order; a failing task never stops the ones after it."""
    if seed is None:
        seed = scn.seed if scn.seed is not None else DEFAULT_SEED
    ctx = _Context(scn, seed)
    report = Report(scn.name, seed)
    selected = [t for t in scn.tasks if task is None or t.id == task]
    if task is not None and not selected:
        raise ScenarioError(f"no task with id {task!r}")
    for t in selected:
        index = scn.tasks.index(t)
        start = time.perf_counter()
        try:
            if t.op == "property":
                payload = _op_property(ctx, t.args, index)
            else:
                payload = HANDLERS[t.op](ctx, t.args)
            status = _status_for(t.op, payload)
            message = ""
            if t.expect is not None:
                problems = _compare(t.expect, payload, scn.chart)
                if problems:
                    status, message = FAIL, "; ".join(problems)
                elif status == INCONCLUSIVE and "verdict" in t.expect:
                    status = PASS
        except Exception as exc:  # task errors are reported, not raised
            payload, status, message = {}, ERROR, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        report.entries.append(Entry(t.id, t.op, status, payload, message,
                                    elapsed if timings else None))
    return report


def report_to_json(report: Report) -> dict:
    entries = []
    for e in report.entries:
        entry = {"id": e.id, "op": e.op, "status": e.status, "payload": e.payload}
        if e.message:
            entry["message"] = e.message
        if e.seconds is not None:
            entry["seconds"] = round(e.seconds, 6)
        entries.append(entry)
    return {"schema": REPORT_SCHEMA, "scenario": report.scenario, "seed": report.seed,
            "summary": report.counts(), "entries": entries}


def render_json(report: Report) -> str:
    return json.dumps(report_to_json(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _short(payload: dict) -> str:
    keys = ("value", "verdict", "rank", "full", "factor", "success", "holds", "dimension",
            "lagrangian", "agree", "solvable")
    bits = [f"{k}={json.dumps(payload[k])}" for k in keys if k in payload]
    if "complement" in payload:
        bits.append(f"complement_dim={payload['complement']['dim']}")
    return " ".join(bits)


def render_text(report: Report) -> str:
    lines = [f"scenario {report.scenario or '<unnamed>'} (seed {report.seed})"]
    for e in report.entries:
        line = f"[{e.status:>12}] {e.id}: {e.op}"
        detail = _short(e.payload)
        if detail:
            line += f"  {detail}"
        if e.message:
            line += f"  -- {e.message}"
        if e.seconds is not None:
            line += f"  ({e.seconds:.3f}s)"
        lines.append(line)
    c = report.counts()
    lines.append(f"{c[PASS]} pass, {c[FAIL]} fail, {c[ERROR]} error, {c[INCONCLUSIVE]} inconclusive")
    return "\n".join(lines) + "\n"
