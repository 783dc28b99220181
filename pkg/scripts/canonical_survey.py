"""Survey of the b+ canonical basis: sparsity, degrees and positivity per size."""
import argparse
import csv
import os
import time
from dataclasses import dataclass, field
from typing import List

from fockhall import fock
from fockhall.combinatorics import is_n_regular


@dataclass
class SurveyConfig:
    ns: List[int] = field(default_factory=lambda: [2, 3, 4])
    max_size: int = 7
    sign: str = "+"
    out: str = "results/canonical_survey.csv"


COLUMNS = ["n", "N", "partitions", "regular", "nonzero_offdiag", "max_degree",
           "max_coefficient", "positive", "seconds"]


def survey_one(n: int, N: int, sign: str) -> dict:
    t0 = time.perf_counter()
    table = fock.canonical_basis(n, N, sign, max_size=max(N, 8))
    secs = time.perf_counter() - t0
    off = [table.entry(mu, lam) for lam in table.order for mu in table.order if mu != lam]
    off = [c for c in off if c]
    return {
        "n": n,
        "N": N,
        "partitions": len(table.order),
        "regular": sum(1 for lam in table.order if is_n_regular(lam, n)),
        "nonzero_offdiag": len(off),
        "max_degree": max((abs(e) for c in off for e, _ in c.items()), default=0),
        "max_coefficient": max((a for c in off for _, a in c.items()), default=0),
        "positive": table.is_positive(),
        "seconds": round(secs, 2),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", default="2,3,4")
    ap.add_argument("--max-size", type=int, default=7)
    ap.add_argument("--sign", default="+", choices="+-")
    ap.add_argument("--out", default=SurveyConfig.out)
    a = ap.parse_args()
    cfg = SurveyConfig([int(x) for x in a.ns.split(",")], a.max_size, a.sign, a.out)
    os.makedirs(os.path.dirname(os.path.abspath(cfg.out)), exist_ok=True)
    with open(cfg.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, COLUMNS)
        w.writeheader()
        for n in cfg.ns:
            for N in range(cfg.max_size + 1):
                row = survey_one(n, N, cfg.sign)
                w.writerow(row)
                fh.flush()
                print(" ".join(f"{k}={row[k]}" for k in COLUMNS), flush=True)
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main()
