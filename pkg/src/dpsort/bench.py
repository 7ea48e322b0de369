"""One benchmark run -> one flat report dict (JSON line or CSV row)."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import time

import numpy as np

from . import oracle
from .pipeline import SortConfig, d_aware_sort, full_sort
from .scan import get_num_threads
from .strings import StringSet, WorkStats

CSV_COLUMNS = (
    "pipeline", "variant", "strategy", "seed", "confirm_boundaries", "reduce_alphabet",
    "threads", "n", "k", "sigma", "D", "d", "symbols_inspected", "rounds_executed",
    "per_round_active", "wall_time_total", "checksum", "verified",
)


class VerifyFailed(Exception):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


def checksum(order) -> str:
    data = np.asarray(order, dtype="<u8").tobytes()
    return hashlib.sha256(data).hexdigest()[:16]


def check_lengths(L, ell, lengths, relaxed: bool):
    """Index of the first string violating the approximation bound, else None."""
    L = np.asarray(L)
    k = L.size
    if relaxed and k >= 2:
        upper = 2 * np.maximum(math.log2(k), ell)
    else:
        upper = 2 * ell
    bad = (L < ell) | (L > lengths) | ((ell >= 1) & (L >= upper)) | ((ell == 0) & (L != 0))
    hits = np.flatnonzero(bad)
    return int(hits[0]) if hits.size else None


def run(strings: StringSet, config: SortConfig | None = None, *, baseline: bool = False,
        verify: bool = False) -> dict:
    """Sort ``strings`` and describe the run.

    With ``verify`` the oracle is consulted; a wrong permutation or a
    violated length bound raises ``VerifyFailed`` carrying the report.
    """
    config = config or SortConfig()
    started = time.perf_counter()
    if baseline:
        stats = WorkStats()
        t = time.perf_counter()
        order = full_sort(strings, stats)
        timings = {"sort": time.perf_counter() - t}
        approx = None
    else:
        result = d_aware_sort(strings, config)
        order, stats, timings, approx = result.order, result.stats, result.timings, result.approx
    timings = dict(timings, total=time.perf_counter() - started)

    report = {
        "config": dict(config.as_dict(), pipeline="baseline" if baseline else "d-aware"),
        "n": strings.n,
        "k": strings.k,
        "sigma": strings.sigma,
        "D": None,
        "d": None,
        "symbols_inspected": stats.symbols_inspected,
        "per_round_active": stats.per_round_active,
        "rounds_executed": stats.rounds_executed,
        "wall_time": timings,
        "threads": get_num_threads(),
        "checksum": checksum(order),
        "verified": None,
        "order": order,
    }
    if verify:
        t = time.perf_counter()
        info = oracle.relevant_prefixes(strings)
        expected = oracle.reference_sort(strings)
        timings["oracle"] = time.perf_counter() - t
        report.update(D=info.D, d=info.d, verified=False)
        seed = config.seed
        mismatch = np.flatnonzero(order != expected)
        if mismatch.size:
            j = int(mismatch[0])
            raise VerifyFailed(
                f"order differs at position {j}: got string {int(order[j])}, "
                f"expected {int(expected[j])} (seed={seed})", report)
        if approx is not None and config.confirm_boundaries:
            i = check_lengths(approx.L, info.ell, strings.lengths, approx.relaxed)
            if i is not None:
                raise VerifyFailed(
                    f"L[{i}]={int(approx.L[i])} outside bounds for ell={int(info.ell[i])} "
                    f"(seed={seed})", report)
        report["verified"] = True
    return report


def to_json(report: dict) -> str:
    return json.dumps({k: v for k, v in report.items() if k != "order"})


def to_csv(reports, header=True) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(CSV_COLUMNS)
    for rep in reports:
        cfg = rep["config"]
        writer.writerow([
            cfg["pipeline"], cfg["variant"], cfg["strategy"], cfg["seed"],
            cfg["confirm_boundaries"], cfg["reduce_alphabet"], rep["threads"],
            rep["n"], rep["k"], rep["sigma"], rep["D"], rep["d"],
            rep["symbols_inspected"], rep["rounds_executed"],
            " ".join(map(str, rep["per_round_active"])),
            f"{rep['wall_time']['total']:.6f}", rep["checksum"], rep["verified"],
        ])
    return buf.getvalue()
