"""Trace files, workload generators and oracle-checked replay.

Trace grammar, one record per line::

    H <n> <W>        header, first record
    I <u> <v> <w>    insert
    D <u> <v>        delete
    C                checkpoint
    # ...            comment

Reports are CSV with ``#``-prefixed config lines on top.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import DynMsfError, GraphError, ParseError, ReplayError
from .graph import DynamicGraph, Update
from .msf import DETERMINISTIC, RANDOMIZED, MsfEstimator
from .oracle import kruskal_msf_weight


@dataclass(frozen=True)
class Header:
    n: int
    W: float


@dataclass(frozen=True)
class Checkpoint:
    pass


CHECKPOINT = Checkpoint()


def _fmt_weight(w: float) -> str:
    return repr(float(w))


def format_record(rec) -> str:
    if isinstance(rec, Header):
        return f"H {rec.n} {_fmt_weight(rec.W)}"
    if isinstance(rec, Checkpoint):
        return "C"
    if rec.is_insert:
        return f"I {rec.u} {rec.v} {_fmt_weight(rec.w)}"
    return f"D {rec.u} {rec.v}"


def write_trace(records: Iterable, out) -> None:
    for rec in records:
        out.write(format_record(rec) + "\n")


def trace_text(records: Iterable) -> str:
    buf = io.StringIO()
    write_trace(records, buf)
    return buf.getvalue()


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {tok!r}") from None


def _float(tok, lineno):
    try:
        x = float(tok)
    except ValueError:
        raise ParseError(lineno, f"expected a number, got {tok!r}") from None
    if not math.isfinite(x):
        raise ParseError(lineno, f"non-finite number {tok!r}")
    return x


_ARITY = {"H": 3, "I": 4, "D": 3, "C": 1}


def parse_trace(lines) -> list:
    """Parse trace text (a string or an iterable of lines)."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    records = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        tag = toks[0]
        if tag not in _ARITY:
            raise ParseError(lineno, f"unknown record type {tag!r}")
        if len(toks) != _ARITY[tag]:
            raise ParseError(lineno, f"{tag} takes {_ARITY[tag] - 1} fields, got {len(toks) - 1}")
        if tag == "H":
            if records:
                raise ParseError(lineno, "header must be the first record")
            rec = Header(_int(toks[1], lineno), _float(toks[2], lineno))
        elif not records:
            raise ParseError(lineno, "trace must start with a header")
        elif tag == "I":
            rec = Update.insert(_int(toks[1], lineno), _int(toks[2], lineno), _float(toks[3], lineno))
        elif tag == "D":
            rec = Update.delete(_int(toks[1], lineno), _int(toks[2], lineno))
        else:
            rec = CHECKPOINT
        records.append(rec)
    return records


def read_trace(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return parse_trace(fh)


# -- generators --------------------------------------------------------------


class _EdgeBag:
    """Present edges with O(1) uniform choice and removal."""

    def __init__(self):
        self.items = []
        self.index = {}

    def add(self, e):
        self.index[e] = len(self.items)
        self.items.append(e)

    def remove(self, e):
        i = self.index.pop(e)
        last = self.items.pop()
        if last != e:
            self.items[i] = last
            self.index[last] = i

    def __contains__(self, e):
        return e in self.index

    def __len__(self):
        return len(self.items)


def gen_random_stream(n: int, W: float, steps: int, insert_bias: float = 0.5, seed=None,
                      initial_edges: int = 0, min_edges: int = 0,
                      heavy_fraction: float = 0.0) -> list:
    """Random simple-graph update stream starting from the empty graph.

    Each step inserts a uniformly random absent pair with probability
    ``insert_bias`` (always when fewer than ``min_edges`` edges are present)
    and otherwise deletes a uniformly random present edge.  Weights are
    uniform in ``[1, W]``; with probability ``heavy_fraction`` the weight is
    exactly ``W``.  ``initial_edges`` insertions are emitted first and are
    not counted in ``steps``.
    """
    rnd = random.Random(seed)
    max_m = n * (n - 1) // 2
    bag = _EdgeBag()
    out = [Header(n, float(W))]

    def weight():
        if heavy_fraction and rnd.random() < heavy_fraction:
            return float(W)
        return rnd.uniform(1.0, W)

    def absent_pair():
        if len(bag) > max_m // 2:
            free = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in bag]
            return free[rnd.randrange(len(free))]
        while True:
            a, b = rnd.randrange(n), rnd.randrange(n)
            if a == b:
                continue
            e = (a, b) if a < b else (b, a)
            if e not in bag:
                return e

    def do_insert():
        e = absent_pair()
        bag.add(e)
        out.append(Update.insert(e[0], e[1], weight()))

    def do_delete():
        e = bag.items[rnd.randrange(len(bag))]
        bag.remove(e)
        out.append(Update.delete(*e))

    for _ in range(min(initial_edges, max_m)):
        do_insert()
    for _ in range(steps):
        want_insert = rnd.random() < insert_bias or len(bag) <= min_edges
        if len(bag) == 0 or (want_insert and len(bag) < max_m):
            if len(bag) < max_m:
                do_insert()
            else:
                do_delete()
        else:
            do_delete()
    return out


def gen_grid_adversary(side: int, batches: int, seed=None, W: Optional[float] = None) -> list:
    """Grid workload on ``side * side + 1`` vertices.

    Column ``c`` row ``i`` is vertex ``c * side + i``; the extra vertex ``s``
    is joined to all of column 0.  Consecutive columns are linked by a
    permutation of the rows.  Each batch replaces one column's permutation
    and then probes one pair ``(u, v)`` (``u`` in column 0) by deleting
    ``(u, s)``, inserting ``(u, v)`` with weight ``W``, checkpointing, and
    undoing both changes.
    """
    if side < 2:
        raise ValueError("side must be >= 2")
    rnd = random.Random(seed)
    n = side * side + 1
    s = n - 1
    if W is None:
        W = float(side * side)
    out = [Header(n, float(W))]

    def vid(col, row):
        return col * side + row

    perms = []
    for row in range(side):
        out.append(Update.insert(vid(0, row), s, 1.0))
    for col in range(side - 1):
        perm = list(range(side))
        rnd.shuffle(perm)
        perms.append(perm)
        for row in range(side):
            out.append(Update.insert(vid(col, row), vid(col + 1, perm[row]), 1.0))
    for _ in range(batches):
        col = rnd.randrange(side - 1)
        for row in range(side):
            out.append(Update.delete(vid(col, row), vid(col + 1, perms[col][row])))
        perm = list(range(side))
        rnd.shuffle(perm)
        perms[col] = perm
        for row in range(side):
            out.append(Update.insert(vid(col, row), vid(col + 1, perm[row]), 1.0))
        u = vid(0, rnd.randrange(side))
        k = rnd.randrange(1, side)
        v = vid(k, rnd.randrange(side))
        if k == 1 and v == vid(1, perms[0][u]):
            continue
        out.append(Update.delete(u, s))
        out.append(Update.insert(u, v, W))
        out.append(CHECKPOINT)
        out.append(Update.delete(u, v))
        out.append(Update.insert(u, s, 1.0))
    return out


# -- replay ------------------------------------------------------------------

COLUMNS = ["i", "exact_msf", "est_msf", "rel_err", "lat_p50_ns", "lat_p99_ns", "lat_max_ns"]


@dataclass
class ReportRow:
    i: int
    exact_msf: float
    est_msf: float
    rel_err: float
    lat_p50_ns: int
    lat_p99_ns: int
    lat_max_ns: int


@dataclass
class RunReport:
    eps: float
    W: float
    mode: str
    seed: Optional[int]
    rows: list = field(default_factory=list)
    violations: int = 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# eps={self.eps!r} W={self.W!r} mode={self.mode} seed={self.seed}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in self.rows:
            w.writerow([row.i, repr(row.exact_msf), repr(row.est_msf), repr(row.rel_err),
                        row.lat_p50_ns, row.lat_p99_ns, row.lat_max_ns])
        return buf.getvalue()

    def estimates(self) -> list:
        return [(r.i, r.est_msf, r.rel_err) for r in self.rows]


def parse_report(text: str) -> RunReport:
    lines = text.splitlines()
    config = {}
    body = []
    for line in lines:
        if line.startswith("#"):
            for tok in line[1:].split():
                key, _, val = tok.partition("=")
                config[key] = val
        elif line.strip():
            body.append(line)
    seed = config.get("seed", "None")
    report = RunReport(
        eps=float(config["eps"]),
        W=float(config["W"]),
        mode=config["mode"],
        seed=None if seed == "None" else int(seed),
    )
    reader = csv.reader(body)
    header = next(reader)
    if header != COLUMNS:
        raise ValueError(f"unexpected columns {header}")
    for rec in reader:
        report.rows.append(ReportRow(int(rec[0]), float(rec[1]), float(rec[2]), float(rec[3]),
                                     int(rec[4]), int(rec[5]), int(rec[6])))
    return report


def relative_error(est: float, exact: float) -> float:
    return abs(est - exact) / max(exact, 1.0)


def within_envelope(est: float, exact: float, eps: float, tol: float = 1e-9) -> bool:
    slack = tol * max(exact, 1.0)
    return (1 - eps) * exact - slack <= est <= (1 + eps) * exact + slack


def _percentiles(samples):
    if not samples:
        return 0, 0, 0
    arr = np.asarray(samples)
    return int(np.percentile(arr, 50)), int(np.percentile(arr, 99)), int(arr.max())


def run(trace: list, eps: float, mode: str = DETERMINISTIC, checkpoint_every: int = 0,
        seed=None, p=None) -> RunReport:
    """Replay ``trace`` through an :class:`MsfEstimator`.

    Rows are recorded at every ``C`` record and, if ``checkpoint_every > 0``,
    after every ``checkpoint_every``-th update.  Latency columns summarise
    the updates since the previous row; oracle time is not measured.
    """
    if not trace or not isinstance(trace[0], Header):
        raise ReplayError(0, "trace has no header")
    head = trace[0]
    est = MsfEstimator(DynamicGraph(head.n, W=head.W), eps, head.W, mode, p=p, seed=seed)
    report = RunReport(eps=eps, W=head.W, mode=mode, seed=seed)
    lat = []
    i = 0
    clock = time.perf_counter_ns

    def checkpoint():
        exact = kruskal_msf_weight(est.graph)
        value = est.estimate
        if mode == DETERMINISTIC and not within_envelope(value, exact, eps):
            report.violations += 1
        p50, p99, pmax = _percentiles(lat)
        report.rows.append(ReportRow(i, exact, value, relative_error(value, exact), p50, p99, pmax))
        lat.clear()

    for rec in trace[1:]:
        if isinstance(rec, Checkpoint):
            checkpoint()
            continue
        i += 1
        try:
            t0 = clock()
            est.update(rec)
            lat.append(clock() - t0)
        except (GraphError, IndexError) as exc:
            raise ReplayError(i, str(exc)) from exc
        if checkpoint_every and i % checkpoint_every == 0:
            checkpoint()
    return report


# -- command line ------------------------------------------------------------


def _build_parser():
    ap = argparse.ArgumentParser(prog="dynmsf-bench", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="replay a trace and emit a CSV report")
    r.add_argument("--trace", required=True)
    r.add_argument("--eps", type=float, required=True)
    r.add_argument("--mode", choices=[DETERMINISTIC, RANDOMIZED], default=DETERMINISTIC)
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--p", type=float, default=None, help="failure probability (rand mode)")
    r.add_argument("--checkpoint-every", type=int, default=0)
    r.add_argument("--out", default=None)

    g = sub.add_parser("gen", help="generate a trace")
    gsub = g.add_subparsers(dest="kind", required=True)
    gr = gsub.add_parser("random")
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--w", type=float, required=True)
    gr.add_argument("--steps", type=int, required=True)
    gr.add_argument("--bias", type=float, default=0.5)
    gr.add_argument("--seed", type=int, default=None)
    gr.add_argument("--out", default=None)
    gg = gsub.add_parser("grid")
    gg.add_argument("--side", type=int, required=True)
    gg.add_argument("--batches", type=int, required=True)
    gg.add_argument("--seed", type=int, default=None)
    gg.add_argument("--w", type=float, default=None)
    gg.add_argument("--out", default=None)
    return ap


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.cmd == "gen":
            if args.kind == "random":
                recs = gen_random_stream(args.n, args.w, args.steps, args.bias, args.seed)
            else:
                recs = gen_grid_adversary(args.side, args.batches, args.seed, W=args.w)
            _emit(trace_text(recs), args.out)
            return 0
        trace = read_trace(args.trace)
        report = run(trace, args.eps, args.mode, args.checkpoint_every, args.seed, args.p)
        _emit(report.to_csv(), args.out)
    except (OSError, DynMsfError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if report.violations:
        print(f"error: {report.violations} checkpoint(s) outside the (1 +/- eps) envelope",
              file=sys.stderr)
        return 2
    return 0
