"""Frattini landscape of gl(2) and sl(2) over small prime fields.

Prints the dimension of each Frattini-type subspace and whether nFrat and R
are nilpotent, which is where characteristic 2 behaves differently.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from leibfrat import catalog
from leibfrat.algebra import is_nilpotent
from leibfrat.exactlin import GF
from leibfrat.frattini import frattini_report

KEYS = ("F", "Phi", "R", "T", "tau", "nFrat", "Nil", "Rad")


@dataclass
class LandscapeConfig:
    primes: tuple[int, ...] = (2, 3)


def main(cfg: LandscapeConfig) -> list[dict]:
    rows = []
    print(f"{'algebra':14s} " + " ".join(f"{k:>5s}" for k in KEYS) + "  nFrat-nil  R-nil")
    for p in cfg.primes:
        for entry in catalog.matrix_algebras(GF(p), 2):
            A = entry.algebra
            rep = frattini_report(A)
            row = {"algebra": entry.label, **{k: getattr(rep, k).dim for k in KEYS},
                   "nFrat_nilpotent": is_nilpotent(A, rep.nFrat), "R_nilpotent": is_nilpotent(A, rep.R)}
            rows.append(row)
            print(f"{entry.label:14s} " + " ".join(f"{row[k]:5d}" for k in KEYS)
                  + f"  {str(row['nFrat_nilpotent']):>9s}  {str(row['R_nilpotent']):>5s}")
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    main(LandscapeConfig(tuple(ap.parse_args().primes)))
