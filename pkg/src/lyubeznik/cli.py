"""Command line front end.

    lyubeznik table FILE...            Lyubeznik table
    lyubeznik m0 FILE...               dim M_0 table
    lyubeznik veronese FILE -t T       re-embedded ideal, in input-file form
    lyubeznik compare FILE [FILE...]   m0 and lambda tables across embeddings
    lyubeznik oracle-check FILE...     main pipeline vs the monomial oracle

Exit codes: 0 success, 2 bad input, 3 resource cap hit, 4 oracle mismatch.
"""
from __future__ import annotations

import argparse
import json
import multiprocessing
import re
import signal
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from importlib import metadata

from .cone import ConeComputation, ConeInput
from .embeddings import EmbeddingPresentation, compare_invariants, veronese, veronese_ideal
from .errors import (
    DimensionMismatch,
    EmptyScheme,
    ImproperIdeal,
    IndexOutOfRange,
    NonHomogeneous,
    NonMonomialInput,
    NonPrimeField,
    OracleInconclusive,
    ParseError,
    ResourceLimit,
)
from .oracle import oracle_lyubeznik_monomial
from .parse import format_input, parse_input

__all__ = ["main", "parse_input", "JobConfig", "run"]

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_MISMATCH = 0, 2, 3, 4
INPUT_ERRORS = (
    ParseError, NonHomogeneous, NonPrimeField, EmptyScheme, ImproperIdeal,
    IndexOutOfRange, NonMonomialInput, DimensionMismatch, OSError, UnicodeDecodeError,
)
RESOURCE_ERRORS = (ResourceLimit, OracleInconclusive)


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def _dumps(doc: dict) -> str:
    """Indented JSON with innermost scalar lists (table rows, names) kept on one line."""
    text = json.dumps(doc, indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]"
                          if m.group(1).strip() else "[]", text)


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


@dataclass
class JobConfig:
    command: str
    inputs: list[str]
    field: int | None = None
    cells: tuple[range, range] | None = None
    format: str = "pretty"
    jobs: int = 1
    timings: bool = False
    max_vars: int = 12
    time_budget_secs: float | None = None
    veronese_t: int | None = None

    def __post_init__(self):
        if self.max_vars < 1 or self.jobs < 1:
            raise ValueError("caps must be positive")
        if self.time_budget_secs is not None and self.time_budget_secs <= 0:
            raise ValueError("caps must be positive")

    def wants(self, i: int, j: int) -> bool:
        return self.cells is None or (i in self.cells[0] and j in self.cells[1])


@dataclass
class Timer:
    enabled: bool
    phases: list[tuple[str, float]] = field(default_factory=list)

    @contextmanager
    def phase(self, name: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.phases.append((name, time.perf_counter() - start))

    def report(self, err) -> None:
        if self.enabled:
            for name, secs in self.phases:
                print(f"time {name}: {secs:.3f}s", file=err)


def _parse_cells(text: str) -> tuple[range, range]:
    try:
        ri, rj = text.split(",")
        out = []
        for part in (ri, rj):
            lo, hi = part.split("..")
            out.append(range(int(lo), int(hi) + 1))
        return out[0], out[1]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cells must look like i0..i1,j0..j1, got {text!r}")


def _load(path: str, job: JobConfig) -> ConeInput:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    c = parse_input(text, field=job.field)
    if c.ring.nvars > job.max_vars:
        raise ResourceLimit(f"{path}: {c.ring.nvars} variables exceed --max-vars {job.max_vars}")
    return c


@contextmanager
def _budget(seconds: float | None):
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def expire(signum, frame):
        raise ResourceLimit(f"time budget of {seconds}s exhausted")

    old = signal.signal(signal.SIGALRM, expire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


# -- table computation, optionally fanned out over columns j ------------------

_SHARED: ConeComputation | None = None


def _column(args) -> list[tuple[int, int, int, int]]:
    j, rows = args
    comp = _SHARED
    return [(i, j, comp.lyubeznik_number(i, j), comp.m0_dimension(i, j)) for i in rows]


def _tables(c: ConeInput, job: JobConfig, timer: Timer):
    global _SHARED
    size = c.d + 2
    lam = [[None] * size for _ in range(size)]
    m0 = [[None] * size for _ in range(size)]
    with timer.phase("resolution of R/I"):
        comp = ConeComputation(c)
    work = [(j, [i for i in range(size) if job.wants(i, j)]) for j in range(size)]
    work = [w for w in work if w[1]]
    with timer.phase("cells"):
        _SHARED = comp
        try:
            if job.jobs > 1 and len(work) > 1 and "fork" in multiprocessing.get_all_start_methods():
                ctx = multiprocessing.get_context("fork")
                with ProcessPoolExecutor(max_workers=job.jobs, mp_context=ctx) as pool:
                    results = list(pool.map(_column, work))
            else:
                results = [_column(w) for w in work]
        finally:
            _SHARED = None
    for col in results:
        for i, j, lv, mv in col:
            lam[i][j], m0[i][j] = lv, mv
    return lam, m0


def _document(c: ConeInput, lam, m0, provenance: str) -> dict:
    return {
        "ring": {"p": c.ring.p, "variables": list(c.ring.names)},
        "ideal": [str(g) for g in c.ideal.generators],
        "d": c.d,
        "lambda": lam,
        "m0": m0,
        "provenance": provenance,
        "versions": {"artifact": _version(), "format": 1},
    }


def _pretty_table(title: str, table) -> list[str]:
    size = len(table)
    width = max([3] + [len(str(v)) for row in table for v in row if v is not None])
    out = [title, "i\\j " + " ".join(f"{j:>{width}}" for j in range(size))]
    for i, row in enumerate(table):
        cells = " ".join(f"{'.' if v is None else v:>{width}}" for v in row)
        out.append(f"{i:>3} {cells}")
    return out


def _emit_tables(docs: list[dict], which: str, job: JobConfig, out) -> None:
    if job.format == "json":
        payload = docs[0] if len(docs) == 1 else {"results": docs}
        out.write(_dumps(payload) + "\n")
        return
    title = "lambda_{i,j}" if which == "lambda" else "dim M_0 for cell (i,j)"
    for k, doc in enumerate(docs):
        if job.format == "tsv":
            out.write(f"# {doc['provenance']}\td={doc['d']}\n")
            out.write(f"i\tj\t{which}\n")
            for i, row in enumerate(doc[which]):
                for j, v in enumerate(row):
                    if v is not None:
                        out.write(f"{i}\t{j}\t{v}\n")
        else:
            if k:
                out.write("\n")
            out.write(f"{doc['provenance']}: ideal ({', '.join(doc['ideal'])}) "
                      f"over F_{doc['ring']['p']}, d = {doc['d']}\n")
            out.write("\n".join(_pretty_table(title, doc[which])) + "\n")


def _cmd_tables(job: JobConfig, out, err, timer: Timer) -> int:
    docs = []
    for path in job.inputs:
        with timer.phase(f"parse {path}"):
            c = _load(path, job)
        lam, m0 = _tables(c, job, timer)
        docs.append(_document(c, lam, m0, path))
    _emit_tables(docs, "lambda" if job.command == "table" else "m0", job, out)
    return EXIT_OK


def _cmd_veronese(job: JobConfig, out, err, timer: Timer) -> int:
    if job.veronese_t is None:
        raise ParseError(0, 0, "veronese needs --veronese-t")
    for path in job.inputs:
        c = _load(path, job)
        with timer.phase(f"veronese {path}"):
            v = veronese_ideal(c, job.veronese_t, max_vars=job.max_vars)
        out.write(format_input(v))
    return EXIT_OK


def _cmd_compare(job: JobConfig, out, err, timer: Timer) -> int:
    cones = [_load(path, job) for path in job.inputs]
    inputs = [EmbeddingPresentation(c, path) for c, path in zip(cones, job.inputs)]
    if job.veronese_t is not None:
        inputs.append(veronese(cones[0], job.veronese_t, max_vars=job.max_vars))
    with timer.phase("compare"):
        report = compare_invariants(inputs)
    if job.format == "json":
        doc = {
            "d": report.d,
            "inputs": [
                {
                    "provenance": e.provenance,
                    "ring": {"p": e.cone.ring.p, "variables": list(e.cone.ring.names)},
                    "ideal": [str(g) for g in e.cone.ideal.generators],
                    "lambda": lam.as_lists(),
                    "m0": m0.as_lists(),
                    "rank_sequences": [{"i": i, "j": j, "ranks": seq} for (i, j), seq in sorted(seqs.items()) if seq],
                }
                for e, lam, m0, seqs in zip(report.inputs, report.lyubeznik_tables,
                                            report.m0_tables, report.rank_sequences)
            ],
            "verdicts": {
                name: {"equal": v.equal,
                       "first_difference": list(v.first_difference) if v.first_difference else None,
                       "against": v.against}
                for name, v in report.verdicts.items()
            },
            "versions": {"artifact": _version(), "format": 1},
        }
        out.write(_dumps(doc) + "\n")
        return EXIT_OK
    lines = report.lines()
    for e, lam, m0 in zip(report.inputs, report.lyubeznik_tables, report.m0_tables):
        lines.append("")
        lines += _pretty_table(f"{e.provenance}: dim M_0", m0.as_lists())
        lines += _pretty_table(f"{e.provenance}: lambda", lam.as_lists())
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_oracle(job: JobConfig, out, err, timer: Timer) -> int:
    code = EXIT_OK
    for path in job.inputs:
        c = _load(path, job)
        with timer.phase(f"pipeline {path}"):
            main_table = ConeComputation(c).lyubeznik_table()
        with timer.phase(f"oracle {path}"):
            oracle_table = oracle_lyubeznik_monomial(c)
        diff = main_table.first_difference(oracle_table)
        if diff is None:
            out.write(f"{path}: agree\n")
        else:
            i, j = diff
            out.write(f"{path}: MISMATCH at ({i},{j}): pipeline {main_table[i, j]}, "
                      f"oracle {oracle_table[i, j]}\n")
            code = EXIT_MISMATCH
    return code


COMMANDS = {
    "table": _cmd_tables,
    "m0": _cmd_tables,
    "veronese": _cmd_veronese,
    "compare": _cmd_compare,
    "oracle-check": _cmd_oracle,
}


def run(job: JobConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    timer = Timer(job.timings)
    try:
        with _budget(job.time_budget_secs):
            code = COMMANDS[job.command](job, out, err, timer)
    except RESOURCE_ERRORS as e:
        print(f"error: {e}", file=err)
        code = EXIT_RESOURCE
    except INPUT_ERRORS as e:
        print(f"error: {type(e).__name__}: {e}", file=err)
        code = EXIT_INPUT
    timer.report(err)
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lyubeznik", description="Lyubeznik numbers of cone vertices in characteristic p.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("inputs", nargs="+", metavar="FILE")
    ap.add_argument("--field", type=int, help="override the characteristic declared in the files")
    ap.add_argument("--cells", type=_parse_cells, help="restrict to cells i0..i1,j0..j1")
    ap.add_argument("--format", choices=["pretty", "tsv", "json"], default="pretty")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--timings", action="store_true", help="per-phase wall times on stderr")
    ap.add_argument("--max-vars", type=int, default=12)
    ap.add_argument("--time-budget-secs", type=float)
    ap.add_argument("--veronese-t", "-t", type=int)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        job = JobConfig(
            command=ns.command, inputs=ns.inputs, field=ns.field, cells=ns.cells, format=ns.format,
            jobs=ns.jobs, timings=ns.timings, max_vars=ns.max_vars,
            time_budget_secs=ns.time_budget_secs, veronese_t=ns.veronese_t,
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
