"""Exact minimization of the unsatisfied-clause count by variable elimination.

u is linear in each variable, so u(x_v, y) = u(0, y) + x_v * S_v(y).  When
the swing factor S_v keeps one sign over all y the optimal value of x_v is
forced and one variable disappears without branching; otherwise both values
must be explored.  Reduced subproblems are materialized as genuine schemes
(satisfied clauses dropped, falsified literals removed), so every
intermediate u is again the u of a formula.

The coefficient-mass shortcut proves some subtrees can never reach u = 0;
those subtrees skip the case analysis and are finished by the fast
assignment-scan kernel instead, keeping the reported minimum exact.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .checks import VerdictKind, check_coefficient_bound
from .dyadic import Dyadic, ZERO
from .pseudo_boolean import PBForm, eval_u, pb_coefficients
from .scheme_core import Scheme
from .transforms import assign

__all__ = [
    "SFactor",
    "MinimizeOutcome",
    "BranchLimitExceeded",
    "s_factor",
    "minimize_u",
    "SUPPORT_LIMIT",
]

SUPPORT_LIMIT = 24


class BranchLimitExceeded(RuntimeError):
    """Raised instead of returning anything once the branch budget is spent."""


@dataclass(frozen=True)
class SFactor:
    """Swing factor of one variable in u.

    `support` lists the other variables S depends on (at most 6 when every
    variable occurs at most three times in a 3-SAT scheme); `table` maps
    each +-1 assignment of the support (in support order) to the exact
    value.  Case 'i' (S >= 0 everywhere) forces x = -1, case 'ii' (S <= 0)
    forces x = +1, case 'iii' branches.
    """

    var: int
    support: tuple[int, ...]
    table: dict[tuple[int, ...], Dyadic]
    s_min: Dyadic
    s_max: Dyadic

    @property
    def case(self) -> str:
        if not (self.s_min < ZERO):
            return "i"
        if not (ZERO < self.s_max):
            return "ii"
        return "iii"


def _s_terms(p: PBForm, var: int):
    """(constant, pair terms, triple terms) of S_var."""
    const = -p.lam[var]
    pairs = []
    for (i, j), v in p.mu.items():
        if i == var:
            pairs.append((j, v))
        elif j == var:
            pairs.append((i, v))
    triples = []
    for (i, j, k), v in p.nu.items():
        if var == i:
            triples.append((j, k, -v))
        elif var == j:
            triples.append((i, k, -v))
        elif var == k:
            triples.append((i, j, -v))
    return const, pairs, triples


def _s_extrema(p: PBForm, var: int) -> tuple[Dyadic, Dyadic]:
    """Exact min and max of S_var over all sign assignments of its support."""
    const, pairs, triples = _s_terms(p, var)
    support = sorted(
        {j for j, _ in pairs} | {j for t in triples for j in t[:2]}
    )
    if not support:
        return const, const
    if len(support) > SUPPORT_LIMIT:
        raise ValueError(f"S-factor support {len(support)} exceeds limit {SUPPORT_LIMIT}")
    e = p.scale_exp
    pos = {j: b for b, j in enumerate(support)}
    codes = np.arange(1 << len(support), dtype=np.int64)
    X = (((codes[:, None] >> np.arange(len(support))[None, :]) & 1) * 2 - 1).astype(np.int64)
    vals = np.full(len(codes), const.scaled(e), dtype=np.int64)
    for j, v in pairs:
        vals += v.scaled(e) * X[:, pos[j]]
    for i, j, v in triples:
        vals += v.scaled(e) * X[:, pos[i]] * X[:, pos[j]]
    return Dyadic(int(vals.min()), e), Dyadic(int(vals.max()), e)


def s_factor(s: Scheme, var: int) -> SFactor:
    """Swing factor of `var` with canonical weights, tabulated over its support.

    Cross-checks the defining identity u(+1, y) - u(-1, y) = 2 S(y) at one
    sampled y before returning; a mismatch is an internal error.
    """
    if not (0 <= var < s.n):
        raise IndexError(f"column {var} out of range (n={s.n})")
    p = pb_coefficients(s, "canonical")
    const, pairs, triples = _s_terms(p, var)
    support = tuple(sorted({j for j, _ in pairs} | {j for t in triples for j in t[:2]}))
    if len(support) > SUPPORT_LIMIT:
        raise ValueError(f"S-factor support {len(support)} exceeds limit {SUPPORT_LIMIT}")
    pos = {j: b for b, j in enumerate(support)}
    table: dict[tuple[int, ...], Dyadic] = {}
    s_min = s_max = None
    for code in range(1 << len(support)):
        y = kernels.decode_assignment(code, len(support))
        val = const
        for j, v in pairs:
            val = val + v * y[pos[j]]
        for i, j, v in triples:
            val = val + v * (y[pos[i]] * y[pos[j]])
        table[y] = val
        if s_min is None or val < s_min:
            s_min = val
        if s_max is None or s_max < val:
            s_max = val

    sampled = (1,) * s.n
    x_minus = tuple(-1 if j == var else v for j, v in enumerate(sampled))
    lhs = eval_u(p, sampled) - eval_u(p, x_minus)
    rhs = Dyadic(2) * table[(1,) * len(support)]
    if lhs != rhs:
        raise RuntimeError(f"swing-factor identity violated: {lhs} != {rhs}")
    return SFactor(var=var, support=support, table=table, s_min=s_min, s_max=s_max)


@dataclass(frozen=True)
class MinimizeOutcome:
    """Exact global minimum of u with a witnessing assignment.

    `trace` records the winning elimination path: one entry per fixed
    variable with its case, plus a terminal marker when a subtree was
    finished by the shortcut scan.  `shortcut_events` carries the exact
    (constant, coefficient mass) pair of every shortcut hit.
    """

    u_min: Dyadic
    minimizer: tuple[int, ...]
    branch_count: int
    shortcut_hits: int
    satisfiable: bool
    trace: tuple[dict, ...]
    shortcut_events: tuple[dict, ...]


class _Search:
    def __init__(self, shortcut: bool, branch_limit: int | None):
        self.shortcut = shortcut
        self.branch_limit = branch_limit
        self.branch_count = 0
        self.shortcut_hits = 0
        self.events: list[dict] = []

    def run(self, cur: Scheme, col_ids: list[int], order: list[int]):
        if cur.m == 0:
            return ZERO, {}, []
        if not col_ids:
            # only empty clauses can remain; each contributes exactly 1
            return Dyadic(cur.m), {}, []
        p = pb_coefficients(cur, "canonical")
        if self.shortcut:
            verdict = check_coefficient_bound(p)
            if verdict.kind is VerdictKind.UNSAT_CERTIFIED:
                self.shortcut_hits += 1
                self.events.append(
                    {
                        "constant": p.const,
                        "mass": verdict.evidence["mass"],
                        "scale": p.scale,
                        "vars_left": len(col_ids),
                    }
                )
                _, u_min, min_code, _, _ = kernels.assignment_scan(cur.cells)
                values = kernels.decode_assignment(int(min_code), cur.n)
                fixed = {col_ids[j]: values[j] for j in range(cur.n)}
                return Dyadic(int(u_min)), fixed, [
                    {"case": "shortcut-scan", "vars_left": len(col_ids)}
                ]

        var = next(v for v in order if v in col_ids)
        local = col_ids.index(var)
        s_min, s_max = _s_extrema(p, local)
        if not (s_min < ZERO):
            case, choices = "i", (-1,)
        elif not (ZERO < s_max):
            case, choices = "ii", (1,)
        else:
            case, choices = "iii", (-1, 1)
            self.branch_count += 1
            if self.branch_limit is not None and self.branch_count > self.branch_limit:
                raise BranchLimitExceeded(
                    f"exceeded branch limit {self.branch_limit}; no answer returned"
                )

        best = None
        rest_ids = col_ids[:local] + col_ids[local + 1 :]
        rest_order = [v for v in order if v != var]
        for value in choices:
            child = assign(cur, local, value == 1)
            u_val, fixed, trace = self.run(child, rest_ids, rest_order)
            cand = (u_val, {var: value, **fixed}, [{"var": var, "case": case, "value": value}] + trace)
            if best is None or cand[0] < best[0]:
                best = cand
            if not (ZERO < best[0]):
                break  # zero is a global lower bound; nothing can beat it
        return best


def minimize_u(
    s: Scheme,
    order: Sequence[int] | None = None,
    shortcut: bool = True,
    branch_limit: int | None = None,
) -> MinimizeOutcome:
    """Exact minimum of the violated-clause count over all assignments.

    Variables are eliminated in `order` (default ascending); sign-constant
    swing factors fix their variable outright, the rest branch.  With
    `shortcut` enabled, subtrees whose coefficient mass proves u > 0 are
    finished by a direct scan instead of further case analysis; the result
    is identical either way.  `branch_limit` (default from
    SATSCHEME_BRANCH_LIMIT, else unlimited) aborts runaway instances with
    BranchLimitExceeded rather than ever returning a wrong answer.
    """
    if order is None:
        order = list(range(s.n))
    else:
        order = [int(v) for v in order]
        if sorted(order) != list(range(s.n)):
            raise ValueError("elimination order must be a permutation of all columns")
    if branch_limit is None:
        env = os.environ.get("SATSCHEME_BRANCH_LIMIT")
        branch_limit = int(env) if env else None

    search = _Search(shortcut=shortcut, branch_limit=branch_limit)
    u_min, fixed, trace = search.run(s, list(range(s.n)), order)
    minimizer = tuple(fixed.get(j, -1) for j in range(s.n))

    p = pb_coefficients(s, "canonical")
    if eval_u(p, minimizer) != u_min:
        raise RuntimeError("internal error: minimizer does not attain the reported minimum")
    return MinimizeOutcome(
        u_min=u_min,
        minimizer=minimizer,
        branch_count=search.branch_count,
        shortcut_hits=search.shortcut_hits,
        satisfiable=(u_min == ZERO),
        trace=tuple(trace),
        shortcut_events=tuple(search.events),
    )
