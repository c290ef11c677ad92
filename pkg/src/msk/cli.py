"""Command-line entry point: ``msk run`` and ``msk darboux``."""

from __future__ import annotations

import argparse
import sys

from msk import models
from msk.scenario import (
    Scenario,
    ScenarioError,
    ScenarioSyntaxError,
    Task,
    dump_scenario,
    parse_scenario,
    render_json,
    render_text,
    run,
)

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario file")
    p_run.add_argument("scenario", help="path to a scenario JSON file, or - for stdin")
    p_run.add_argument("--task", help="run only the task with this id")
    p_run.add_argument("--format", choices=("json", "text"), default="json")
    p_run.add_argument("--seed", type=_u64, help="seed for property tasks (default: scenario seed, else 0)")
    p_run.add_argument("--timings", action="store_true",
                       help="include per-task wall time (reports stop being byte-stable)")
    p_run.add_argument("-o", "--output", help="write the report here instead of stdout")

    p_dx = sub.add_parser("darboux", help="emit a scenario for a canonical model")
    p_dx.add_argument("--base-dim", type=int, required=True)
    p_dx.add_argument("--degree", type=int, required=True)
    p_dx.add_argument("--fiber-coords", help="comma-separated names of the last base coordinates forming the fiber")
    p_dx.add_argument("--horizontal", type=int, help="horizontality level r")
    return parser


def darboux_scenario(n: int, k: int, fiber: list[str] | None = None,
                     r: int | None = None) -> Scenario:
    """Ready-made checks for the Darboux model on k-forms over an n-dimensional base."""
    names = models.default_base_names(n)
    if r is None:
        model = models.build_darboux(n, k)
        spec = {"base_dim": n, "degree": k}
    else:
        fiber = list(fiber or [])
        unknown = [f for f in fiber if f not in names]
        if unknown:
            raise ValueError(f"fiber coordinates {unknown} are not among {list(names)}")
        base = [x for x in names if x not in fiber]
        model = models.build_darboux_horizontal(base, fiber, k, r)
        spec = {"base": base, "fiber": fiber, "degree": k, "horizontal": r}
    chart = model.chart
    N = chart.dim
    euler = model.euler_field()
    scn = Scenario(chart=chart, name=f"darboux-n{n}-k{k}" + ("" if r is None else f"-r{r}"), seed=0)
    scn.forms = {"Theta": model.theta, "Omega": model.omega}
    scn.fields = {"Euler": euler}
    scn.fields.update({f"d_{name}": f for name, f in zip(chart.names, model.coordinate_fields())})
    vertical = [f"d_{name}" for name in model.momentum_names()]
    scn.models = {"M": spec}
    scn.points = {"q": tuple(range(1, N + 1))}
    eps = [f.at(chart.origin()).to_vector() for f in model.fiber_fields()] if r else []
    vectors = [[int(i == j) for i in range(N)] for j in range(k)]
    closed = {"degree": k + 2, "components": []}
    scn.tasks = [
        Task("theta-primitive", "exterior_derivative", {"form": "Theta"},
             {"result": {"degree": k + 1, "components": [
                 {"index": [i + 1 for i in I], "coeff": c.to_str(chart.names)}
                 for I, c in model.omega.components.items()]}}),
        Task("closed", "exterior_derivative", {"form": "Omega"}, {"result": closed}),
        Task("nondegenerate", "is_j_nondegenerate", {"form": "Omega", "j": 1, "point": "q"},
             {"value": model.nondegenerate}),
        Task("tautological", "tautological_eval", {"model": "M", "point": "q", "vectors": vectors},
             {"agree": True}),
        Task("homogeneity", "check_local_homogeneity", {"form": "Omega", "field": "Euler"},
             {"success": True, "factor": str(k + 1)}),
        Task("span", "hamiltonian_span_rank",
             {"form": "Omega", "fields": [f"d_{name}" for name in chart.names], "point": "q"},
             {"full": True}),
        Task("vertical-type", "check_type_conditions",
             {"form": "Omega", "distribution": vertical, "eps": [[str(x) for x in v] for v in eps],
              "r": r or 0, "point": "q"}),
    ]
    if k >= 2:
        scn.tasks.append(Task("euler-certificate", "certify", {"field": "Euler", "form": "Omega"}))
    return scn


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _cmd_run(args) -> int:
    try:
        text = _read(args.scenario)
    except OSError as exc:
        print(f"msk: cannot read {args.scenario}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    try:
        scn = parse_scenario(text)
        report = run(scn, seed=args.seed, task=args.task, timings=args.timings)
    except ScenarioSyntaxError as exc:
        print(f"msk: {args.scenario}: syntax error at {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as exc:
        print(f"msk: {args.scenario}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = render_json(report) if args.format == "json" else render_text(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return report.exit_code


def _cmd_darboux(args) -> int:
    if (args.horizontal is None) != (args.fiber_coords is None):
        print("msk: --fiber-coords and --horizontal go together", file=sys.stderr)
        return EXIT_USAGE
    fiber = [s.strip() for s in args.fiber_coords.split(",") if s.strip()] if args.fiber_coords else None
    try:
        scn = darboux_scenario(args.base_dim, args.degree, fiber, args.horizontal)
    except ValueError as exc:
        print(f"msk: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(dump_scenario(scn))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_darboux(args)


if __name__ == "__main__":
    sys.exit(main())
