"""Sweep the invariant-form probe over canonical models and degree bounds.

    python scripts/invariance_sweep.py --max-base 3 --max-degree 2 --bounds 0 1
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from msk.homogeneity import default_generators, invariance_probe
from msk.models import build_darboux


@dataclass
class SweepConfig:
    max_base: int = 3
    max_degree: int = 2
    bounds: list[int] = field(default_factory=lambda: [1])
    monomial_degree: int = 2


@dataclass
class SweepRow:
    base_dim: int
    bundle_degree: int
    chart_dim: int
    p: int
    degree_bound: int
    unknowns: int
    solution_dim: int
    verdict: str
    seconds: float


def sweep(cfg: SweepConfig) -> list[SweepRow]:
    rows = []
    for n in range(1, cfg.max_base + 1):
        for k in range(1, min(n, cfg.max_degree) + 1):
            M = build_darboux(n, k)
            gens = default_generators(M.omega, cfg.monomial_degree)
            K = M.omega.degree
            for d in cfg.bounds:
                for p in (K, K - 1):
                    start = time.perf_counter()
                    res = invariance_probe(M.omega, p, d, gens)
                    rows.append(SweepRow(n, k, M.dim, p, d, res.unknowns, len(res.basis),
                                         res.verdict, round(time.perf_counter() - start, 3)))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-base", type=int, default=SweepConfig.max_base)
    parser.add_argument("--max-degree", type=int, default=SweepConfig.max_degree)
    parser.add_argument("--bounds", type=int, nargs="+", default=[1])
    parser.add_argument("--monomial-degree", type=int, default=SweepConfig.monomial_degree)
    parser.add_argument("--json", action="store_true", help="emit JSON rows instead of a table")
    args = parser.parse_args()
    cfg = SweepConfig(args.max_base, args.max_degree, args.bounds, args.monomial_degree)
    rows = sweep(cfg)
    if args.json:
        print(json.dumps({"config": asdict(cfg), "rows": [asdict(r) for r in rows]}, indent=2))
        return
    print(f"{'n':>2} {'k':>2} {'dim':>4} {'p':>2} {'d':>2} {'unknowns':>9} {'sol':>4}  verdict          secs")
    for r in rows:
        print(f"{r.base_dim:>2} {r.bundle_degree:>2} {r.chart_dim:>4} {r.p:>2} {r.degree_bound:>2} "
              f"{r.unknowns:>9} {r.solution_dim:>4}  {r.verdict:<16} {r.seconds:.3f}")


if __name__ == "__main__":
    main()
