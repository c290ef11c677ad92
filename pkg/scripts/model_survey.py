"""Tabulate the canonical models: dimensions, nondegeneracy, type conditions, homogeneity.

    python scripts/model_survey.py --max-base 4 --max-degree 3
"""

import argparse
from dataclasses import dataclass

from msk.homogeneity import check_local_homogeneity
from msk.models import build_darboux, build_darboux_horizontal, vertical_type_check


@dataclass
class SurveyConfig:
    max_base: int = 4
    max_degree: int = 3
    fiber_dim: int = 1


def flags(rep) -> str:
    marks = [("iso", rep.one_isotropic), ("inv", rep.involutive),
             ("dim", rep.dimension_equality), ("quot", rep.quotient_dimension)]
    if rep.contraction_vanishing is not None:
        marks.insert(2, ("contr", rep.contraction_vanishing))
    return " ".join(name if ok else name.upper() + "!" for name, ok in marks)


def describe(label, M):
    rep = vertical_type_check(M)
    hom = check_local_homogeneity(M.omega, M.euler_field())
    factor = hom.factor.to_str(M.chart.names) if hom.success else "-"
    print(f"{label:<26} dim={M.dim:<3} momenta={len(M.momenta):<3} nondeg={str(M.nondegenerate):<5} "
          f"factor={factor:<3} type={'ok ' if rep.verdict else 'NO '} [{flags(rep)}]")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-base", type=int, default=SurveyConfig.max_base)
    parser.add_argument("--max-degree", type=int, default=SurveyConfig.max_degree)
    parser.add_argument("--fiber-dim", type=int, default=SurveyConfig.fiber_dim)
    args = parser.parse_args()
    cfg = SurveyConfig(args.max_base, args.max_degree, args.fiber_dim)

    print("plain models, bundle of k-forms over R^n")
    for n in range(1, cfg.max_base + 1):
        for k in range(1, min(n, cfg.max_degree) + 1):
            describe(f"n={n} k={k}", build_darboux(n, k))

    print(f"\nhorizontal models, fiber dimension {cfg.fiber_dim}")
    for e in range(1, cfg.max_base + 1 - cfg.fiber_dim):
        base = [f"x{i + 1}" for i in range(e)]
        fiber = [f"y{i + 1}" for i in range(cfg.fiber_dim)]
        for k in range(1, min(e + cfg.fiber_dim, cfg.max_degree) + 1):
            for r in range(1, k + 1):
                try:
                    M = build_darboux_horizontal(base, fiber, k, r)
                except ValueError:
                    continue
                describe(f"e={e} q={e + cfg.fiber_dim} k={k} r={r}", M)


if __name__ == "__main__":
    main()
