"""Empirical primitive-root densities mod-star.

Two surveys are supported:

* ``prime``: odd primes p <= x, p not dividing a; hit when a generates G*_p,
  i.e. has order (p - 1)/2.
* ``sg``: Sophie Germain pairs (p, 2p + 1) with p <= x; hit when b generates
  G*_n for n = p(2p + 1), a cyclic semiprime of group order p(p - 1).

The range is split into contiguous partitions that are computed independently
(optionally in worker processes) and merged in order.  A checkpoint is an
append-only CSV: a header, one row per subject, a ``#partition`` marker after
each completed partition and a ``#summary`` row at the end.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

import numpy as np
from scipy import integrate

from .arith import factor_with, is_perfect_square, is_prime, primes_in_range, primes_up_to
from .errors import CheckpointError, DomainError, InvalidBaseError, LimitExceededError
from .group import order_in_star

log = logging.getLogger(__name__)

PRIME_SURVEY_LIMIT = 10**8
SG_SURVEY_LIMIT = 10**7
CHECKPOINT_MAGIC = "#modstar-survey"
CHECKPOINT_COLUMNS = ("subject", "group_order", "element_order", "is_pr")


@dataclass(frozen=True)
class SurveyRecord:
    """Outcome for one prime or one Sophie Germain pair."""

    subject: int | tuple[int, int]
    base: int
    group_order: int
    element_order: int
    is_primitive_root: bool

    def __post_init__(self) -> None:
        if self.group_order % self.element_order:
            raise DomainError(f"order {self.element_order} does not divide {self.group_order}")
        if self.is_primitive_root != (self.element_order == self.group_order):
            raise DomainError("is_primitive_root inconsistent with orders")

    @property
    def subject_key(self) -> int:
        return self.subject[0] if isinstance(self.subject, tuple) else self.subject


@dataclass(frozen=True)
class SurveyConfig:
    kind: str
    base: int
    limit: int
    partitions: int = 1
    checkpoint: Path | None = None
    resume: bool = False
    include_degenerate: bool = False
    workers: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("prime", "sg"):
            raise DomainError(f"unknown survey kind {self.kind!r}")
        if self.partitions < 1:
            raise DomainError("partitions must be >= 1")


@dataclass
class SurveySummary:
    kind: str
    base: int
    limit: int
    subjects_counted: int
    hits: int
    include_degenerate: bool = False
    elapsed: float = 0.0
    checkpoint: str | None = None
    resumed_rows: int = 0
    records: list[SurveyRecord] | None = field(default=None, repr=False)

    @property
    def density(self) -> Fraction | None:
        if self.subjects_counted == 0:
            return None
        return Fraction(self.hits, self.subjects_counted)

    @property
    def density_decimal(self) -> float | None:
        d = self.density
        return None if d is None else self.hits / self.subjects_counted

    def to_dict(self) -> dict:
        """Deterministic fields only; timing and checkpoint bookkeeping excluded."""
        d = self.density
        return {
            "schema_version": 1,
            "kind": self.kind,
            "base": self.base,
            "limit": self.limit,
            "include_degenerate": self.include_degenerate,
            "subjects_counted": self.subjects_counted,
            "hits": self.hits,
            "density": None if d is None else f"{d.numerator}/{d.denominator}",
            "density_decimal": None if d is None else round(self.density_decimal, 12),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


# --- per-range workers --------------------------------------------------------


def _trial_primes(bound: int) -> list[int]:
    return primes_up_to(max(2, math.isqrt(bound) + 1)).primes().tolist()


def _prime_rows(base: int, lo: int, hi: int) -> list[tuple]:
    lo = max(lo, 3)
    if hi < lo:
        return []
    trial = _trial_primes(hi // 2)
    rows = []
    for p in primes_in_range(lo, hi).tolist():
        if base % p == 0:
            continue
        m = (p - 1) // 2
        if m == 1:
            rows.append((p, 1, 1))
            continue
        t = order_in_star(base, p, m, factor_with(m, trial))
        rows.append((p, m, t))
    return rows


def sophie_germain_in_range(lo: int, hi: int) -> np.ndarray:
    """All p in [lo, hi] with p and 2p + 1 prime."""
    lo = max(lo, 2)
    if hi < lo:
        return np.empty(0, dtype=np.int64)
    p1 = primes_in_range(lo, hi)
    p2 = primes_in_range(2 * lo + 1, 2 * hi + 1)
    return np.intersect1d(p1, (p2 - 1) // 2)


def _sg_rows(base: int, lo: int, hi: int, include_degenerate: bool) -> list[tuple]:
    if not include_degenerate:
        lo = max(lo, 5)
    if hi < max(lo, 2):
        return []
    trial = _trial_primes(hi)
    rows = []
    for p in sophie_germain_in_range(lo, hi).tolist():
        if p == 2:
            # n = 10 is even: not a cyclic semiprime
            continue
        q = 2 * p + 1
        n = p * q
        if math.gcd(base, n) != 1:
            continue
        m = p * (p - 1)
        primes = factor_with(p - 1, trial) + [p]
        t = order_in_star(base, n, m, primes)
        rows.append(((p, q), m, t))
    return rows


def _survey_partition(kind: str, base: int, lo: int, hi: int, include_degenerate: bool) -> list[tuple]:
    if kind == "prime":
        return _prime_rows(base, lo, hi)
    return _sg_rows(base, lo, hi, include_degenerate)


def partition_bounds(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split [lo, hi] into ``parts`` contiguous, nearly equal sub-ranges."""
    if hi < lo:
        return [(lo, hi)] * parts
    span = hi - lo + 1
    edges = [lo + span * k // parts for k in range(parts + 1)]
    return [(edges[k], edges[k + 1] - 1) for k in range(parts)]


# --- checkpoint I/O -----------------------------------------------------------


def _header(cfg: SurveyConfig) -> str:
    return (f"{CHECKPOINT_MAGIC},v1,kind={cfg.kind},base={cfg.base},limit={cfg.limit},"
            f"partitions={cfg.partitions},include_degenerate={int(cfg.include_degenerate)}\n"
            + ",".join(CHECKPOINT_COLUMNS) + "\n")


def _format_subject(subject) -> str:
    return f"{subject[0]}:{subject[1]}" if isinstance(subject, tuple) else str(subject)


def _format_row(row: tuple) -> str:
    subject, m, t = row
    return f"{_format_subject(subject)},{m},{t},{int(m == t)}\n"


def _parse_subject(text: str, kind: str):
    if kind == "sg":
        a, b = text.split(":")
        p, q = int(a), int(b)
        if q != 2 * p + 1:
            raise ValueError("second prime is not 2p + 1")
        return (p, q)
    return int(text)


@dataclass
class _CheckpointState:
    rows: list[tuple]
    done_partitions: int
    summary: tuple[int, int] | None


def read_checkpoint(path: Path, cfg: SurveyConfig) -> _CheckpointState:
    """Parse and validate a checkpoint; a torn final line (no newline) is ignored."""
    text = path.read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] != "":
        log.warning("dropping torn final checkpoint line %r", lines[-1])
    lines = lines[:-1]
    expected = _header(cfg).split("\n")[:2]
    if lines[:2] != expected:
        raise CheckpointError("checkpoint header does not match this survey", 1,
                              lines[0] if lines else "")
    rows: list[tuple] = []
    done = 0
    summary = None
    last_key = 0
    for line_no, line in enumerate(lines[2:], start=3):
        if summary is not None:
            raise CheckpointError("data after summary row", line_no, line)
        if line.startswith("#partition,"):
            try:
                k = int(line.split(",")[1])
            except (IndexError, ValueError):
                raise CheckpointError("malformed partition marker", line_no, line) from None
            if k != done:
                raise CheckpointError("partition markers out of order", line_no, line)
            done += 1
            continue
        if line.startswith("#summary,"):
            try:
                _, s, h = line.split(",")
                summary = (int(s), int(h))
            except ValueError:
                raise CheckpointError("malformed summary row", line_no, line) from None
            if summary != (len(rows), sum(1 for r in rows if r[1] == r[2])):
                raise CheckpointError("summary row disagrees with data rows", line_no, line)
            continue
        try:
            fields = next(csv.reader(io.StringIO(line)))
            if len(fields) != 4:
                raise ValueError("expected 4 columns")
            subject = _parse_subject(fields[0], cfg.kind)
            m, t, flag = int(fields[1]), int(fields[2]), int(fields[3])
            key = subject[0] if isinstance(subject, tuple) else subject
            if t < 1 or m % t or flag != int(m == t) or key <= last_key or key > cfg.limit:
                raise ValueError("inconsistent values")
        except ValueError as exc:
            raise CheckpointError(f"corrupt checkpoint row ({exc})", line_no, line) from None
        last_key = key
        rows.append((subject, m, t))
    return _CheckpointState(rows, done, summary)


def _append(fh, text: str) -> None:
    fh.write(text)
    fh.flush()
    os.fsync(fh.fileno())


# --- driver -------------------------------------------------------------------


def _range_for(cfg: SurveyConfig) -> tuple[int, int]:
    return (3, cfg.limit) if cfg.kind == "prime" else (2, cfg.limit)


def run_survey(cfg: SurveyConfig, keep_records: bool = False) -> SurveySummary:
    """Run (or resume) a partitioned survey and return its merged summary."""
    start = time.perf_counter()
    bounds = partition_bounds(*_range_for(cfg), cfg.partitions)

    prior = _CheckpointState([], 0, None)
    fh = None
    if cfg.checkpoint is not None:
        path = Path(cfg.checkpoint)
        if path.exists() and path.stat().st_size > 0:
            if not cfg.resume:
                raise FileExistsError(f"checkpoint {path} exists; pass resume=True to continue it")
            prior = read_checkpoint(path, cfg)
            text = path.read_text(encoding="utf-8")
            if not text.endswith("\n"):
                # drop the torn line so appends start on a row boundary
                path.write_text(text.rsplit("\n", 1)[0] + "\n", encoding="utf-8")
            fh = open(path, "a", encoding="utf-8")
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            fh = open(path, "w", encoding="utf-8")
            _append(fh, _header(cfg))

    rows = list(prior.rows)
    try:
        if prior.summary is None:
            todo = list(range(prior.done_partitions, cfg.partitions))
            args = [(cfg.kind, cfg.base, *bounds[k], cfg.include_degenerate) for k in todo]
            workers = cfg.workers or min(len(todo), os.cpu_count() or 1)
            if workers > 1 and len(todo) > 1:
                with ProcessPoolExecutor(max_workers=workers) as pool:
                    results = pool.map(_survey_partition, *zip(*args))
                    rows = _merge(results, todo, prior, rows, fh, bounds)
            else:
                results = (_survey_partition(*a) for a in args)
                rows = _merge(results, todo, prior, rows, fh, bounds)
            if fh is not None:
                hits = sum(1 for r in rows if r[1] == r[2])
                _append(fh, f"#summary,{len(rows)},{hits}\n")
    finally:
        if fh is not None:
            fh.close()

    hits = sum(1 for r in rows if r[1] == r[2])
    summary = SurveySummary(
        kind=cfg.kind, base=cfg.base, limit=cfg.limit,
        subjects_counted=len(rows), hits=hits,
        include_degenerate=cfg.include_degenerate,
        elapsed=time.perf_counter() - start,
        checkpoint=str(cfg.checkpoint) if cfg.checkpoint else None,
        resumed_rows=len(prior.rows),
    )
    if keep_records:
        summary.records = [SurveyRecord(s, cfg.base, m, t, m == t) for s, m, t in rows]
    return summary


def _row_key(row: tuple) -> int:
    return row[0][0] if isinstance(row[0], tuple) else row[0]


def _merge(results, todo, prior, rows, fh, bounds):
    """Fold partition results in order, appending each to the checkpoint."""
    seen = {_row_key(r): r for r in prior.rows}
    for k, part in zip(todo, results):
        fresh = []
        for row in part:
            key = _row_key(row)
            if key in seen:
                # rows of a partially written partition must match a recomputation
                if seen[key] != row:
                    raise CheckpointError(f"checkpoint row for {key} disagrees with recomputation")
                continue
            fresh.append(row)
        rows.extend(fresh)
        if fh is not None:
            _append(fh, "".join(_format_row(r) for r in fresh) + f"#partition,{k}\n")
        log.info("partition %d/%d [%d, %d]: %d subjects", k + 1, len(bounds), *bounds[k], len(part))
    return rows


# --- public surveys -----------------------------------------------------------


def artin_density_star(a: int, x: int, partitions: int = 1, checkpoint=None,
                       resume: bool = False, keep_records: bool = False) -> SurveySummary:
    """Fraction of odd primes p <= x, p not dividing a, for which a generates G*_p."""
    if a < 2 or is_perfect_square(a):
        raise InvalidBaseError(f"base must be >= 2 and not a perfect square, got {a}")
    if x > PRIME_SURVEY_LIMIT:
        raise LimitExceededError(f"prime survey limited to x <= {PRIME_SURVEY_LIMIT}")
    cfg = SurveyConfig("prime", a, x, partitions, checkpoint, resume)
    return run_survey(cfg, keep_records)


def sophie_germain_pairs(x: int, include_degenerate: bool = False) -> Iterator[tuple[int, int]]:
    """Pairs (p, 2p + 1) of primes with p <= x.

    By default only pairs of the form (6k - 1, 12k - 1) are produced, which
    drops (2, 5) and (3, 7).
    """
    lo = 2 if include_degenerate else 5
    for p in sophie_germain_in_range(lo, x).tolist():
        yield p, 2 * p + 1


def sg_density_star(b: int, x: int, partitions: int = 1, checkpoint=None,
                    resume: bool = False, include_degenerate: bool = False,
                    keep_records: bool = False) -> SurveySummary:
    """Fraction of SG pairs (p <= x) whose product has b as a primitive root mod-star."""
    if not is_prime(b):
        raise InvalidBaseError(f"SG survey base must be prime, got {b}")
    if x > SG_SURVEY_LIMIT:
        raise LimitExceededError(f"SG survey limited to x <= {SG_SURVEY_LIMIT}")
    cfg = SurveyConfig("sg", b, x, partitions, checkpoint, resume, include_degenerate)
    return run_survey(cfg, keep_records)


def _sg_integrand_log(u: float) -> float:
    # t = e^u, dt = e^u du
    t = math.exp(u)
    return t / (u * math.log(2 * t + 1))


def asymptotic_sg_integral(x: float) -> float:
    """Integral of dt / (ln t ln(2t + 1)) over [2, x]."""
    if x < 2:
        raise DomainError(f"x must be >= 2, got {x}")
    if x == 2:
        return 0.0
    val, _ = integrate.quad(_sg_integrand_log, math.log(2), math.log(x),
                            epsabs=0.0, epsrel=1e-12, limit=200)
    return val


def sg_integral_simpson(x: float, steps: int) -> float:
    """Composite Simpson rule for the same integral in log space (oracle)."""
    if steps % 2:
        steps += 1
    a, b = math.log(2), math.log(x)
    h = (b - a) / steps
    total = _sg_integrand_log(a) + _sg_integrand_log(b)
    for i in range(1, steps):
        total += (4 if i % 2 else 2) * _sg_integrand_log(a + i * h)
    return total * h / 3
