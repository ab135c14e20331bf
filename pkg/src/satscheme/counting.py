"""Exact model counting via the non-orthogonal cluster expansion.

Expanding the product that evaluates a CNF over all assignments turns the
model count into an alternating sum over clusters of clauses.  A cluster
containing two clauses with opposite literals in some column (an orthogonal
pair) contributes nothing, so only cliques of the pairwise-compatibility
graph are enumerated:

    N(F) = 2**n * (1 + sum over non-orthogonal clusters c of (-1)^|c| 2**-k_c)

with k_c the number of distinct variables occurring in the cluster.  Every
term 2**(n - k_c) is an exact integer, handled with Python bignums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyadic import Dyadic
from .scheme_core import Scheme, orthogonal
from .transforms import FULL_BLOW_UP_LIMIT

__all__ = [
    "CountResult",
    "count_solutions",
    "count_via_primes",
    "solution_lower_bound",
    "DEFAULT_N_LIMIT",
]

DEFAULT_N_LIMIT = 63


@dataclass(frozen=True)
class CountResult:
    """Cluster-expansion outcome.

    `partials[k]` is the signed sum (-1)^k * sum 2**(n - k_c) over all
    clusters of size k; the size-0 entry is the base term 2**n, so the total
    is simply the sum of all partials.  `cluster_count` counts the nonempty
    clusters enumerated.
    """

    total: int
    partials: dict[int, int]
    cluster_count: int


def count_solutions(s: Scheme, n_limit: int = DEFAULT_N_LIMIT) -> CountResult:
    """Exact model count by depth-first clique enumeration.

    Rows are compatible when not orthogonal; each clique is visited once by
    extending only with higher row indices.  The n cap merely keeps the
    2**n base term in check and may be raised freely (bignum arithmetic).
    """
    if s.n > n_limit:
        raise ValueError(f"count_solutions refuses n={s.n} > limit {n_limit}")
    m, n = s.m, s.n
    compat = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if not orthogonal(s, i, j):
                compat[i] |= 1 << j
                compat[j] |= 1 << i
    supports = []
    for i in range(m):
        mask = 0
        for j in s.row_support(i):
            mask |= 1 << j
        supports.append(mask)

    partials: dict[int, int] = {0: 1 << n}
    clusters = 0
    for root in range(m):
        above = ~((1 << (root + 1)) - 1)
        stack = [(supports[root], 1, compat[root] & above)]
        while stack:
            support, size, cand = stack.pop()
            clusters += 1
            term = 1 << (n - support.bit_count())
            partials[size] = partials.get(size, 0) + (term if size % 2 == 0 else -term)
            mm = cand
            while mm:
                j = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                stack.append(
                    (support | supports[j], size + 1, cand & compat[j] & ~((1 << (j + 1)) - 1))
                )

    total = sum(partials.values())
    assert 0 <= total <= (1 << n), f"cluster expansion out of range: {total}"
    return CountResult(total=total, partials=partials, cluster_count=clusters)


def count_via_primes(s: Scheme, n_limit: int = FULL_BLOW_UP_LIMIT) -> int:
    """Model count as the number of primes missing from the full blow-up.

    A prime (clause containing every variable) excludes exactly one
    assignment, and blowing every clause up to primes leaves the solution
    set untouched; the assignments not excluded are precisely the models.
    Equivalent to full_blow_up + deduplication, but tracked as a presence
    mask over the 2**n possible primes.
    """
    if s.n > n_limit:
        raise ValueError(f"count_via_primes refuses n={s.n} > limit {n_limit}")
    n = s.n
    present = np.zeros(1 << n, dtype=bool)
    for i in range(s.m):
        base = 0
        free: list[int] = []
        for j in range(n):
            f = int(s.cells[i, j])
            if f == 1:
                base |= 1 << j
            elif f == 0:
                free.append(j)
        idx = np.full(1 << len(free), base, dtype=np.int64)
        combos = np.arange(1 << len(free), dtype=np.int64)
        for b, col in enumerate(free):
            idx |= ((combos >> b) & 1) << col
        present[idx] = True
    return (1 << n) - int(np.count_nonzero(present))


def solution_lower_bound(s: Scheme) -> Dyadic | float:
    """2**n * (1 - sum 2**-k_i); a positive value certifies satisfiability.

    The clique sum truncated after singleton clusters can only undershoot
    the total, which is what this bound expresses.  Requires every clause to
    carry at least one literal; with an empty clause present the bound is
    meaningless and -inf is returned.
    """
    if s.has_empty_row():
        return float("-inf")
    mass = Dyadic(0)
    for i in range(s.m):
        mass = mass + Dyadic.half_pow(s.row_size(i))
    return Dyadic(1 << s.n) * (Dyadic(1) - mass)
