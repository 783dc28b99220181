"""Run every verification check for several n and record timings as JSON."""
import argparse
import json
import os
import platform
import time
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from fockhall import checks


@dataclass
class AcceptanceConfig:
    ns: List[int] = field(default_factory=lambda: [2, 3])
    max_size: int = 6
    checks: Optional[List[str]] = None
    # checks restricted to n = 2
    n2_only: List[str] = field(default_factory=lambda: ["column_coproduct", "orbit_counts", "green"])
    out: str = "results/acceptance.json"


def run(cfg: AcceptanceConfig) -> dict:
    names = cfg.checks or list(checks.CHECKS)
    rows = []
    t0 = time.perf_counter()
    for n in cfg.ns:
        for name in names:
            if n != 2 and name in cfg.n2_only:
                continue
            r = checks.CHECKS[name](n, cfg.max_size)
            print(f"{'PASS' if r.ok else 'FAIL'} criterion {r.criterion:2d} {r.name:28s} {r.seconds:8.1f}s  {r.detail}",
                  flush=True)
            rows.append({"check": name, "n": n, "name": r.name, "criterion": r.criterion,
                         "ok": r.ok, "seconds": round(r.seconds, 2), "detail": r.detail})
    return {
        "config": asdict(cfg),
        "python": platform.python_version(),
        "total_seconds": round(time.perf_counter() - t0, 1),
        "ok": all(r["ok"] for r in rows),
        "results": rows,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", default="2,3")
    ap.add_argument("--max-size", type=int, default=6)
    ap.add_argument("--checks")
    ap.add_argument("--out", default=AcceptanceConfig.out)
    a = ap.parse_args()
    cfg = AcceptanceConfig(ns=[int(x) for x in a.ns.split(",")], max_size=a.max_size,
                           checks=a.checks.split(",") if a.checks else None, out=a.out)
    report = run(cfg)
    os.makedirs(os.path.dirname(os.path.abspath(cfg.out)), exist_ok=True)
    with open(cfg.out, "w") as fh:
        json.dump(report, fh, indent=2)
    print(f"{'all checks passed' if report['ok'] else 'some checks failed'} in {report['total_seconds']}s -> {cfg.out}")
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
