"""Run the statement registry over a named corpus and write a JSON summary.

Example::

    python scripts/run_suite.py --corpus finite --statements Thm7,Prop31 --out suite.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from leibfrat import catalog
from leibfrat.lattice import EnumBudget
from leibfrat.verify import run_suite

CORPORA = {
    "finite": catalog.finite_catalog,
    "rational": catalog.rational_catalog,
    "acceptance": catalog.acceptance_corpus,
    "dim2-gf2": lambda: catalog.exhaustive_dim2(2),
    "dim2-gf3": lambda: catalog.exhaustive_dim2(3),
}


@dataclass
class SuiteConfig:
    corpus: str = "finite"
    statements: tuple[str, ...] | None = None
    seed: int = 0
    max_subspaces: int = EnumBudget().max_subspaces
    out: str | None = None


def parse_args(argv=None) -> SuiteConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--corpus", choices=sorted(CORPORA), default="finite")
    ap.add_argument("--statements", help="comma-separated statement IDs")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-subspaces", type=int, default=EnumBudget().max_subspaces)
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    stmts = tuple(a.statements.split(",")) if a.statements else None
    return SuiteConfig(a.corpus, stmts, a.seed, a.max_subspaces, a.out)


def main(cfg: SuiteConfig) -> dict:
    corpus = CORPORA[cfg.corpus]()
    budget = EnumBudget(max_subspaces=cfg.max_subspaces)
    start = time.perf_counter()
    results, summary = run_suite(corpus, cfg.statements, budget=budget, seed=cfg.seed)
    summary["config"] = asdict(cfg)
    summary["elapsed_s"] = round(time.perf_counter() - start, 3)
    for sid, counts in summary["per_statement"].items():
        print(f"{sid:8s} pass {counts['pass']:4d}  fail {counts['fail']:3d}  skipped {counts['skipped']:4d}")
    print(f"totals {summary['totals']} in {summary['elapsed_s']}s over {len(corpus)} algebras")
    for r in results:
        if r.verdict == "fail":
            print(f"FAIL {r.statement_id} on {r.algebra}: {r.witness}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(summary, fh, indent=2, default=str)
    return summary


if __name__ == "__main__":
    main(parse_args())
