"""Run every bundled scenario and write canonical JSON reports.

    python scripts/run_corpus.py --out reports/
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from msk.scenario import parse_scenario, render_json, run

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class CorpusConfig:
    corpus: Path = ROOT / "scenarios"
    out: Path = ROOT / "reports"
    seed: int | None = None
    include_failing: bool = False


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--corpus", type=Path, default=CorpusConfig.corpus)
    parser.add_argument("--out", type=Path, default=CorpusConfig.out)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--include-failing", action="store_true")
    args = parser.parse_args()
    cfg = CorpusConfig(args.corpus, args.out, args.seed, args.include_failing)

    pattern = "**/*.json" if cfg.include_failing else "*.json"
    cfg.out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for path in sorted(cfg.corpus.glob(pattern)):
        report = run(parse_scenario(path.read_text(encoding="utf-8")), seed=cfg.seed)
        (cfg.out / f"{path.stem}.report.json").write_text(render_json(report), encoding="utf-8")
        counts = report.counts()
        print(f"{path.relative_to(cfg.corpus)}: " + ", ".join(f"{v} {k}" for k, v in counts.items()))
        worst = max(worst, report.exit_code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
