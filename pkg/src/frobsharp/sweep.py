"""Table rows and the cross-validation sweep behind ``table`` and ``verify``."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor

from .bounds import NonSharp, Sharp, is_nonsharp_witness, lemma_lower_bound, report, tau_log
from .partitions import tau_oracle

COLUMNS = ("d", "admissible", "r", "tau", "lambda", "classification", "witness_i", "lemma_lb")
THREADS_ENV = "FROBSHARP_THREADS"


def table_row(p: int, d: int) -> dict:
    rep = report(p, d)
    row = {
        "d": d,
        "admissible": rep.admissible,
        "r": rep.r,
        "tau": rep.tau,
        "lambda": rep.lam,
        "classification": None,
        "witness_i": rep.witness_i,
        "lemma_lb": None,
    }
    if rep.admissible:
        row["classification"] = "NonSharp" if isinstance(rep.classification, NonSharp) else "Sharp"
        row["lemma_lb"] = lemma_lower_bound(p, d)
    return row


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_csv_cell(row[c]) for c in COLUMNS])
    return buf.getvalue()


def render_jsonl(rows) -> str:
    return "".join(json.dumps({c: row[c] for c in COLUMNS}) + "\n" for row in rows)


def worker_count(default: int) -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return max(1, default)
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return max(1, min(cap, default))


def check_one(p: int, d: int) -> list[str]:
    """Every cross-check for a single admissible (p, d); returns failure messages."""
    problems = []
    rep = report(p, d)
    by_log = tau_log(p, d)
    by_oracle = tau_oracle(p, d)
    if not rep.tau == by_log == by_oracle:
        problems.append(f"tau disagreement: piecewise={rep.tau} log={by_log} oracle={by_oracle}")
    if rep.tau - rep.lam not in (0, 1):
        problems.append(f"lambda={rep.lam} outside {{tau-1, tau}} for tau={rep.tau}")
    lb = lemma_lower_bound(p, d)
    if lb > rep.lam:
        problems.append(f"lemma lower bound {lb} exceeds lambda={rep.lam}")
    if (d % p == 0 or p == 2) and not isinstance(rep.classification, Sharp):
        problems.append("expected Sharp (d = 0 mod p or p = 2)")
    if isinstance(rep.classification, NonSharp) and not is_nonsharp_witness(p, d, rep.witness_i):
        problems.append(f"NonSharp witness i={rep.witness_i} does not re-check")
    return problems


def _check_range(p: int, lo: int, hi: int) -> tuple[int, list[dict]]:
    checked = 0
    failures = []
    for d in range(lo, hi + 1):
        if d % p == p - 1:
            continue
        checked += 1
        for msg in check_one(p, d):
            failures.append({"p": p, "d": d, "problem": msg})
    return checked, failures


def _chunks(d_max: int, size: int):
    for lo in range(1, d_max + 1, size):
        yield lo, min(lo + size - 1, d_max)


def verify(primes, d_max: int, workers: int = 1, chunk: int = 250) -> dict:
    """Sweep all admissible d <= d_max for each p; results merged in (p, d) order."""
    jobs = [(p, lo, hi) for p in primes for lo, hi in _chunks(d_max, chunk)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_range, *zip(*jobs)))
    else:
        results = [_check_range(*job) for job in jobs]

    checked = {p: 0 for p in primes}
    failures = []
    for (p, _, _), (n, fails) in zip(jobs, results):
        checked[p] += n
        failures.extend(fails)
    return {
        "primes": list(primes),
        "max_d": d_max,
        "checked": {str(p): n for p, n in checked.items()},
        "total_checked": sum(checked.values()),
        "mismatch_count": len(failures),
        "mismatches": failures[:10],
    }
