"""Brute-force ground truth: enumerate every assignment.

The oracle is the reference every other module is validated against.  It
walks all 2**n assignments (Gray-code kernel), recording the exact model
count, the minimum number of violated clauses, and the full histogram of
violation counts.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import kernels
from .scheme_core import Scheme

__all__ = ["OracleReport", "oracle_scan", "naive_scan", "DEFAULT_LIMIT"]

DEFAULT_LIMIT = 30
SOLUTION_LIST_LIMIT = 16


@dataclass(frozen=True)
class OracleReport:
    """Exhaustive-scan result.

    `solutions` lists every satisfying assignment (as +-1 tuples, ascending
    code order) when n <= 16, else None.  `u_min` is the least number of
    violated clauses over all assignments; `u_histogram` maps each violation
    count to the number of assignments attaining it.  `witness` attains
    u_min (so it is a model whenever one exists, at any n).
    """

    count: int
    solutions: tuple[tuple[int, ...], ...] | None
    u_min: int
    u_histogram: dict[int, int]
    witness: tuple[int, ...]


def _limit() -> int:
    env = os.environ.get("SATSCHEME_ORACLE_LIMIT")
    return int(env) if env else DEFAULT_LIMIT


def oracle_scan(s: Scheme, limit: int | None = None, jobs: int = 1) -> OracleReport:
    """Scan all assignments of `s`; raises ValueError when n exceeds the cap."""
    cap = _limit() if limit is None else limit
    if s.n > cap:
        raise ValueError(f"oracle refuses n={s.n} > limit {cap}; raise the limit explicitly")
    collect = s.n <= SOLUTION_LIST_LIMIT
    count, u_min, min_code, hist, sol_codes = kernels.assignment_scan(
        s.cells, collect=collect, jobs=jobs
    )
    solutions = None
    if collect:
        solutions = tuple(
            kernels.decode_assignment(int(c), s.n) for c in sorted(int(v) for v in sol_codes)
        )
    histogram = {int(v): int(c) for v, c in enumerate(hist) if c}
    return OracleReport(
        count=int(count),
        solutions=solutions,
        u_min=int(u_min),
        u_histogram=histogram,
        witness=kernels.decode_assignment(int(min_code), s.n),
    )


def naive_scan(s: Scheme) -> OracleReport:
    """Plain nested-loop reference for the kernel scan (small n only).

    Exists so the incremental Gray-code bookkeeping can be checked against
    code nobody can get wrong.
    """
    if s.n > 16:
        raise ValueError("naive_scan is a reference implementation; keep n <= 16")
    rows = [s.row_support(i) for i in range(s.m)]
    signs = [tuple(int(s.cells[i, j]) for j in s.row_support(i)) for i in range(s.m)]
    count = 0
    u_min = None
    witness = None
    histogram: dict[int, int] = {}
    solutions = []
    for code in range(1 << s.n):
        x = kernels.decode_assignment(code, s.n)
        u = 0
        for sup, sgn in zip(rows, signs):
            if not any(x[j] == f for j, f in zip(sup, sgn)):
                u += 1
        histogram[u] = histogram.get(u, 0) + 1
        if u_min is None or u < u_min:
            u_min, witness = u, x
        if u == 0:
            count += 1
            solutions.append(x)
    return OracleReport(
        count=count,
        solutions=tuple(solutions),
        u_min=u_min,
        u_histogram=histogram,
        witness=witness,
    )
