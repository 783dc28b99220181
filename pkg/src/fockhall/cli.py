"""Command line front end.

Subcommands::

    fockhall canonical  transition matrices of b+ and b- per weight, plus a positivity report
    fockhall crystal    the crystal graph on partitions as a DOT file
    fockhall verify     the verification checks, as a JSON report

Exit codes: 0 pass, 1 usage, 2 verification failure, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Sequence

from . import checks, fock, hall, wedge
from .combinatorics import Partition, format_partition, is_n_regular, partitions_of
from .laurent import LaurentPoly

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2, 3
MAX_SIZE_CAP = 10
FORMATS = ("csv", "json", "dot")
REPORT_SCHEMA = 1


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    def __init__(self, record: Dict[str, Any]):
        super().__init__(record.get("message", "verification failure"))
        self.record = record


@dataclass
class RunConfig:
    n: int = 2
    max_size: int = 6
    fields: List[int] = field(default_factory=lambda: list(hall.FIELD_SIZES))
    truncation_cap: int = 64
    out: str = "fockhall-out"
    cache: Optional[str] = None
    format: Optional[str] = None
    checks: Optional[List[str]] = None

    def validate(self) -> "RunConfig":
        if not isinstance(self.n, int) or self.n < 2:
            raise UsageError("n must be an integer >= 2")
        if not isinstance(self.max_size, int) or not 0 <= self.max_size <= MAX_SIZE_CAP:
            raise UsageError(f"max-size must be between 0 and {MAX_SIZE_CAP}")
        if self.truncation_cap < 1:
            raise UsageError("truncation cap must be positive")
        if self.format is not None and self.format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")
        if self.checks is not None:
            unknown = [c for c in self.checks if c not in checks.CHECKS]
            if unknown:
                raise UsageError(f"unknown checks: {', '.join(unknown)}")
        try:
            hall.set_field_sizes(self.fields)
        except ValueError as err:
            raise UsageError(f"bad field sample: {err}") from err
        return self


def load_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise UsageError(f"cannot read config file {path}: {err}") from err
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    data = {k.replace("-", "_"): v for k, v in data.items()}
    extra = sorted(set(data) - known)
    if extra:
        raise UsageError(f"unknown config keys: {', '.join(extra)}")
    return data


def _split_list(s: str) -> List[str]:
    return [x.strip() for x in s.split(",") if x.strip()]


def build_config(args: argparse.Namespace) -> RunConfig:
    values: Dict[str, Any] = {}
    if args.config:
        values.update(load_config_file(args.config))
    # flags override the file
    if args.n is not None:
        values["n"] = args.n
    if args.max_size is not None:
        values["max_size"] = args.max_size
    if args.fields is not None:
        try:
            values["fields"] = [int(x) for x in _split_list(args.fields)]
        except ValueError as err:
            raise UsageError(f"bad --fields: {err}") from err
    if args.truncation_cap is not None:
        values["truncation_cap"] = args.truncation_cap
    for key in ("out", "cache", "format"):
        if getattr(args, key) is not None:
            values[key] = getattr(args, key)
    if args.checks is not None:
        values["checks"] = _split_list(args.checks)
    try:
        return RunConfig(**values).validate()
    except TypeError as err:
        raise UsageError(str(err)) from err


# serialization helpers

def partition_label(lam: Sequence[int]) -> str:
    return f"({format_partition(lam)})"


def laurent_json(c: LaurentPoly) -> List[List[int]]:
    return [[e, a] for e, a in sorted(c.items())]


def _write(path: str, text: str) -> str:
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# canonical

def transition_matrix(table: fock.CanonicalBasisTable) -> List[List[LaurentPoly]]:
    """Rows indexed by ``mu``, columns by ``lam``: coefficient of ``|mu>`` in ``b_lam``."""
    return [[table.entry(mu, lam) for lam in table.order] for mu in table.order]


def _table_csv(table: fock.CanonicalBasisTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["mu\\lambda"] + [partition_label(l) for l in table.order])
    for mu, row in zip(table.order, transition_matrix(table)):
        w.writerow([partition_label(mu)] + [str(c) for c in row])
    return buf.getvalue()


def _table_json(table: fock.CanonicalBasisTable) -> Dict[str, Any]:
    return {
        "n": table.n,
        "N": table.N,
        "sign": table.sign,
        "order": [list(p) for p in table.order],
        "matrix": [[laurent_json(c) for c in row] for row in transition_matrix(table)],
    }


def cmd_canonical(cfg: RunConfig) -> List[str]:
    os.makedirs(cfg.out, exist_ok=True)
    written: List[str] = []
    tables: List[Dict[str, Any]] = []
    positivity: List[Dict[str, Any]] = []
    failures: List[str] = []
    want_csv = cfg.format in (None, "csv")
    want_json = cfg.format in (None, "json")
    for N in range(cfg.max_size + 1):
        for sign in "+-":
            table = fock.canonical_basis(cfg.n, N, sign, max_size=MAX_SIZE_CAP)
            err = checks.canonical_report(table, cfg.n)
            if err:
                failures.append(f"N={N}: {err}")
            tag = "plus" if sign == "+" else "minus"
            if want_csv:
                written.append(_write(os.path.join(cfg.out, f"canonical_{tag}_N{N}.csv"), _table_csv(table)))
            if want_json:
                tables.append(_table_json(table))
            if sign == "+":
                negative = [
                    [list(mu), list(lam)]
                    for lam in table.order for mu in table.order
                    if any(a < 0 for _, a in table.entry(mu, lam).items())
                ]
                positivity.append({"N": N, "partitions": len(table.order), "positive": not negative,
                                   "negative_entries": negative})
    if want_json:
        written.append(_write(os.path.join(cfg.out, "canonical.json"),
                              _dump_json({"n": cfg.n, "max_size": cfg.max_size, "tables": tables})))
    report = {
        "n": cfg.n,
        "max_size": cfg.max_size,
        "claim": "every entry of every b+ table lies in N[v]",
        "ok": all(p["positive"] for p in positivity),
        "weights": positivity,
    }
    written.append(_write(os.path.join(cfg.out, "positivity.json"), _dump_json(report)))
    if not report["ok"]:
        failures.append("b+ has negative coefficients; see positivity.json")
    if failures:
        raise VerificationFailure({"command": "canonical", "message": failures[0], "failures": failures})
    return written


# crystal

def _node(lam: Sequence[int]) -> str:
    return "p" + ("_".join(map(str, lam)) if lam else "empty")


def crystal_edges(n: int, N: int):
    """Edges ``(lam, i, f_i lam)`` with both ends of size at most ``N``."""
    edges = []
    for size in range(N):
        for lam in partitions_of(size):
            for i in range(n):
                mu = fock.crystal_f(i, lam, n)
                oracle = fock.crystal_f_signature(i, lam, n)
                if mu != oracle:
                    raise VerificationFailure({
                        "command": "crystal",
                        "message": f"crystal_f({i}, {partition_label(lam)}) disagrees with the signature rule",
                        "lattice": None if mu is None else list(mu),
                        "signature": None if oracle is None else list(oracle),
                    })
                if mu is not None:
                    edges.append((lam, i, mu))
    return edges


def crystal_dot(n: int, N: int, edges) -> str:
    lines = [f"digraph crystal_n{n}_N{N} {{", "  rankdir=TB;"]
    for size in range(N + 1):
        for lam in partitions_of(size):
            style = "" if is_n_regular(lam, n) else ", style=dashed"
            label = partition_label(lam) if lam else "()"
            lines.append(f'  {_node(lam)} [label="{label}"{style}];')
    for lam, i, mu in edges:
        lines.append(f'  {_node(lam)} -> {_node(mu)} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_crystal(cfg: RunConfig) -> List[str]:
    if cfg.format not in (None, "dot"):
        raise UsageError("crystal only writes DOT")
    os.makedirs(cfg.out, exist_ok=True)
    edges = crystal_edges(cfg.n, cfg.max_size)
    # the component of the empty partition is the set of n-regular partitions
    reached = {Partition()}
    for lam, _, mu in edges:  # edges are listed by increasing size
        if lam in reached:
            reached.add(mu)
    regular = {lam for s in range(cfg.max_size + 1) for lam in partitions_of(s) if is_n_regular(lam, cfg.n)}
    path = _write(os.path.join(cfg.out, f"crystal_n{cfg.n}_N{cfg.max_size}.dot"),
                  crystal_dot(cfg.n, cfg.max_size, edges))
    if reached != regular:
        diff = sorted(reached ^ regular)
        raise VerificationFailure({
            "command": "crystal",
            "message": "component of the empty partition differs from the n-regular partitions",
            "difference": [list(p) for p in diff],
        })
    return [path]


# verify

def cmd_verify(cfg: RunConfig, stream=None) -> List[str]:
    stream = stream or sys.stdout
    os.makedirs(cfg.out, exist_ok=True)
    names = cfg.checks or list(checks.CHECKS)
    results = []
    for name in names:
        r = checks.CHECKS[name](cfg.n, cfg.max_size)
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.name} [criterion {r.criterion}] {r.seconds:.2f}s  {r.detail}", file=stream, flush=True)
        results.append(r)
    # timings go to the terminal only, so the report file is reproducible
    report = {
        "schema": REPORT_SCHEMA,
        "n": cfg.n,
        "max_size": cfg.max_size,
        "fields": list(hall.FIELD_SIZES),
        "ok": all(r.ok for r in results),
        "checks": [{"check": name, "name": r.name, "criterion": r.criterion, "ok": r.ok, "detail": r.detail}
                   for name, r in zip(names, results)],
    }
    path = _write(os.path.join(cfg.out, "verify.json"), _dump_json(report))
    if not report["ok"]:
        failed = [r.name for r in results if not r.ok]
        raise VerificationFailure({"command": "verify", "message": f"failed checks: {', '.join(failed)}",
                                   "failed": failed})
    return [path]


COMMANDS = {"canonical": cmd_canonical, "crystal": cmd_crystal, "verify": cmd_verify}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default settings; flags take precedence")
    common.add_argument("--n", type=int, help="number of residues (>= 2)")
    common.add_argument("--max-size", type=int, dest="max_size", help=f"largest partition size N (<= {MAX_SIZE_CAP})")
    common.add_argument("--fields", help="comma separated field sizes used for interpolation")
    common.add_argument("--truncation-cap", type=int, dest="truncation_cap", help="largest wedge truncation tried")
    common.add_argument("--out", help="output directory")
    common.add_argument("--cache", help="Hall count cache (JSON)")
    common.add_argument("--format", choices=FORMATS, help="restrict the output format")
    common.add_argument("--checks", help="comma separated check names (verify only)")
    parser = _Parser(prog="fockhall", description="Fock space and Hall algebra computations")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("canonical", parents=[common], help="canonical basis transition matrices")
    sub.add_parser("crystal", parents=[common], help="crystal graph as DOT")
    sub.add_parser("verify", parents=[common], help="run the verification checks")
    sub.add_parser("list-checks", help="print the available check names")
    return parser


def _failure_record(cfg: Optional[RunConfig], record: Dict[str, Any]) -> None:
    print(f"verification failure: {record.get('message')}", file=sys.stderr)
    if cfg is None:
        return
    try:
        os.makedirs(cfg.out, exist_ok=True)
        record = dict(record, config=asdict(cfg))
        _write(os.path.join(cfg.out, "failure.json"), _dump_json(record))
    except OSError:
        pass


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "list-checks":
        for name, _ in sorted(checks.CHECKS.items()):
            print(name)
        return EXIT_OK
    cfg = None
    try:
        cfg = build_config(args)
        wedge.TRUNCATION_CAP = cfg.truncation_cap
        try:
            cache = hall.use_cache(cfg.cache)
        except (OSError, ValueError) as err:
            raise VerificationFailure({"command": args.command, "message": f"unreadable cache {cfg.cache}: {err}"})
        try:
            written = COMMANDS[args.command](cfg)
        finally:
            cache.save()
        for path in written:
            print(path)
        return EXIT_OK
    except UsageError as err:
        print(f"fockhall: usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailure as err:
        _failure_record(cfg, err.record)
        return EXIT_FAIL
    except hall.HallError as err:
        _failure_record(cfg, {"command": args.command, "message": f"interpolation error: {err}"})
        return EXIT_FAIL
    except Exception as err:  # noqa: BLE001
        print(f"fockhall: internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
