"""Equivalence-preserving and satisfiability-preserving scheme transformations.

Solution-set preserving: blow_up/shrink, drop_subsumed, row/column
permutation.  Model-count preserving (solutions change coordinates): flip.
Satisfiability preserving: remove_pure_columns, assign, accept_facts, split,
metavariable elimination, the READ-3 occurrence reduction, and (one-way, for
unsatisfiability detection) resolve.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .scheme_core import Scheme, Status, status

__all__ = [
    "SplitResult",
    "flip",
    "permute_rows",
    "permute_columns",
    "blow_up",
    "full_blow_up",
    "shrink",
    "drop_subsumed",
    "remove_pure_columns",
    "assign",
    "accept_facts",
    "resolve",
    "split",
    "metavariable_eliminate",
    "reduce_read3",
    "FULL_BLOW_UP_LIMIT",
]

FULL_BLOW_UP_LIMIT = 20


def flip(s: Scheme, mask: Iterable[int]) -> Scheme:
    """Swap positive and negated literals in the masked columns.

    The 2**n masks generate the flip class of the formula; the model count
    is invariant, with solutions negated on the masked coordinates.
    """
    cols = sorted(set(int(c) for c in mask))
    if cols and not (0 <= cols[0] and cols[-1] < s.n):
        raise ValueError(f"flip mask {cols} out of range for n={s.n}")
    cells = s.cells.copy()
    if cols:
        cells[:, cols] *= -1
    return Scheme(cells)


def _check_permutation(perm: Sequence[int], size: int, what: str) -> list[int]:
    p = [int(v) for v in perm]
    if sorted(p) != list(range(size)):
        raise ValueError(f"{what} order must be a permutation of 0..{size - 1}")
    return p


def permute_rows(s: Scheme, order: Sequence[int]) -> Scheme:
    """Reorder clauses; conjunction is commutative so solutions are unchanged."""
    return Scheme(s.cells[_check_permutation(order, s.m, "row")])


def permute_columns(s: Scheme, order: Sequence[int]) -> Scheme:
    """Renumber variables; solutions are permuted the same way."""
    return Scheme(s.cells[:, _check_permutation(order, s.n, "column")])


def blow_up(s: Scheme, row: int, col: int) -> Scheme:
    """Split one clause on an absent variable into its two completions.

    (A) == (A or x) and (A or not-x); the solution set is untouched.
    """
    if not (0 <= row < s.m and 0 <= col < s.n):
        raise IndexError(f"cell ({row}, {col}) out of range")
    if s.cells[row, col] != 0:
        raise ValueError(f"cell ({row}, {col}) is not absent; cannot blow up")
    pos = s.cells[row].copy()
    neg = s.cells[row].copy()
    pos[col] = 1
    neg[col] = -1
    cells = np.vstack([s.cells[:row], pos[None, :], neg[None, :], s.cells[row + 1 :]])
    return Scheme(cells)


def full_blow_up(s: Scheme) -> Scheme:
    """Blow every clause up to primes (rows with no absent fills).

    Materializes up to 2**n rows per clause, hence the hard n cap.
    Duplicate primes are kept; deduplicate downstream when counting.
    """
    if s.n > FULL_BLOW_UP_LIMIT:
        raise ValueError(f"full blow-up refuses n={s.n} > {FULL_BLOW_UP_LIMIT}")
    out_rows = []
    for i in range(s.m):
        zeros = [j for j in range(s.n) if s.cells[i, j] == 0]
        base = s.cells[i]
        for signs in itertools.product((1, -1), repeat=len(zeros)):
            row = base.copy()
            for j, sg in zip(zeros, signs):
                row[j] = sg
            out_rows.append(row)
    if not out_rows:
        return Scheme.empty(s.n)
    return Scheme(np.array(out_rows, dtype=np.int8))


def _find_shrink_pair(cells: np.ndarray) -> tuple[int, int, int] | None:
    m = cells.shape[0]
    for i in range(m):
        for j in range(i + 1, m):
            diff = np.nonzero(cells[i] != cells[j])[0]
            if len(diff) == 1:
                c = int(diff[0])
                if cells[i, c] != 0 and cells[i, c] == -cells[j, c]:
                    return i, j, c
    return None


def shrink(s: Scheme) -> Scheme:
    """Merge clause pairs identical up to one complementary literal, to fixpoint.

    (X or A) and (not-X or A) == A.  Stops early when a terminal pattern
    (confirmation/contradiction/empty clause) appears, so those shapes stay
    visible to the caller.
    """
    cells = s.cells.copy()
    while True:
        if status(Scheme(cells)) is not Status.OPEN:
            break
        hit = _find_shrink_pair(cells)
        if hit is None:
            break
        i, j, c = hit
        merged = cells[i].copy()
        merged[c] = 0
        keep = [k for k in range(cells.shape[0]) if k != j]
        cells = cells[keep]
        cells[i] = merged
    return Scheme(cells)


def _literal_set(cells: np.ndarray, i: int) -> frozenset[tuple[int, int]]:
    return frozenset((int(j), int(cells[i, j])) for j in np.nonzero(cells[i])[0])


def drop_subsumed(s: Scheme) -> Scheme:
    """Remove clauses whose literal set contains another clause's.

    R and (R or S) == R.  Exact duplicates keep their first copy.
    """
    sets = [_literal_set(s.cells, i) for i in range(s.m)]
    keep = []
    for i in range(s.m):
        subsumed = False
        for j in range(s.m):
            if i == j:
                continue
            if sets[j] < sets[i] or (sets[j] == sets[i] and j < i):
                subsumed = True
                break
        if not subsumed:
            keep.append(i)
    return Scheme(s.cells[keep])


def remove_pure_columns(s: Scheme) -> tuple[Scheme, list[tuple[int, bool]]]:
    """Delete single-polarity columns and the clauses they satisfy, to fixpoint.

    Returns the reduced scheme plus the forced (original column, value)
    assignments; the reduced scheme is satisfiable iff the input is.
    Columns with no fills at all are left alone (nothing forces them).
    """
    cells = s.cells
    col_ids = list(range(s.n))
    removed: list[tuple[int, bool]] = []
    changed = True
    while changed:
        changed = False
        for j in range(cells.shape[1]):
            col = cells[:, j]
            nz = col[col != 0]
            if nz.size == 0:
                continue
            if (nz == 1).all():
                value = True
            elif (nz == -1).all():
                value = False
            else:
                continue
            removed.append((col_ids[j], value))
            keep_rows = np.nonzero(col == 0)[0]
            cells = np.delete(cells[keep_rows], j, axis=1)
            col_ids.pop(j)
            changed = True
            break
    return Scheme(cells), removed


def assign(s: Scheme, var: int, value: bool) -> Scheme:
    """Fix one variable: drop its column and every clause it satisfies.

    A clause whose only literal was the falsified one becomes an all-absent
    row (the empty clause), which status() reports as unsatisfiable.
    """
    if not (0 <= var < s.n):
        raise IndexError(f"column {var} out of range (n={s.n})")
    sign = 1 if value else -1
    keep_rows = np.nonzero(s.cells[:, var] != sign)[0]
    return Scheme(np.delete(s.cells[keep_rows], var, axis=1))


def accept_facts(s: Scheme) -> tuple[Scheme, list[tuple[int, bool]]]:
    """Apply unit clauses as forced assignments until none remain.

    Stops as soon as a terminal pattern appears (so a contradiction between
    unit clauses is reported rather than consumed).  The trail lists the
    accepted (original column, value) pairs in order.
    """
    cur = s
    col_ids = list(range(s.n))
    trail: list[tuple[int, bool]] = []
    while True:
        if status(cur) is not Status.OPEN:
            break
        unit = None
        for i in range(cur.m):
            sup = cur.row_support(i)
            if len(sup) == 1:
                unit = (sup[0], int(cur.cells[i, sup[0]]) == 1)
                break
        if unit is None:
            break
        j, value = unit
        trail.append((col_ids[j], value))
        cur = assign(cur, j, value)
        col_ids.pop(j)
    return cur, trail


def _disjoin(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Union of two rows' literals; None when they clash (tautology)."""
    if (((a == 1) & (b == -1)) | ((a == -1) & (b == 1))).any():
        return None
    return np.where(a != 0, a, b).astype(np.int8)


def resolve(s: Scheme, var: int) -> tuple[Scheme, bool]:
    """Replace all positive/negative clause pairs on `var` by their resolvents.

    The column disappears.  With exactly one pair the replacement is an
    equivalence (conclusive=True); with several pairs the result is still
    sound for unsatisfiability detection but conclusive=False.  Tautological
    resolvents are dropped.  If the variable does not occur at all the scheme
    is returned unchanged (conclusive=True).
    """
    if not (0 <= var < s.n):
        raise IndexError(f"column {var} out of range (n={s.n})")
    col = s.cells[:, var]
    pos = np.nonzero(col == 1)[0]
    neg = np.nonzero(col == -1)[0]
    if len(pos) == 0 and len(neg) == 0:
        return s, True
    rest = np.nonzero(col == 0)[0]
    reduced = np.delete(s.cells, var, axis=1)
    rows = []
    for i in pos:
        for j in neg:
            merged = _disjoin(reduced[i], reduced[j])
            if merged is not None:
                rows.append(merged)
    for k in rest:
        rows.append(reduced[k])
    if rows:
        out = Scheme(np.array(rows, dtype=np.int8))
    else:
        out = Scheme.empty(s.n - 1)
    return out, (len(pos) * len(neg) <= 1)


@dataclass(frozen=True)
class SplitResult:
    """Cofactors of a split: y/z hold the rows that carried the positive and
    negative fill (column removed), r the untouched rows; `recombined` is the
    CNF of all non-tautological pairwise disjunctions of y and z rows plus r,
    satisfiable iff the input was."""

    y: Scheme
    z: Scheme
    r: Scheme
    recombined: Scheme


def split(s: Scheme, var: int) -> SplitResult:
    """Eliminate a variable by combining its positive and negative cofactors.

    Product rows deriving from orthogonal pairs are tautologies and are
    dropped; duplicate product rows are kept once.
    """
    if not (0 <= var < s.n):
        raise IndexError(f"column {var} out of range (n={s.n})")
    col = s.cells[:, var]
    reduced = np.delete(s.cells, var, axis=1)
    y_rows = reduced[col == 1]
    z_rows = reduced[col == -1]
    r_rows = reduced[col == 0]
    products = []
    seen = set()
    for yr in y_rows:
        for zr in z_rows:
            merged = _disjoin(yr, zr)
            if merged is None:
                continue
            key = merged.tobytes()
            if key not in seen:
                seen.add(key)
                products.append(merged)
    combined = products + [r for r in r_rows]
    if combined:
        recombined = Scheme(np.array(combined, dtype=np.int8))
    else:
        recombined = Scheme.empty(s.n - 1)
    return SplitResult(
        y=Scheme(y_rows), z=Scheme(z_rows), r=Scheme(r_rows), recombined=recombined
    )


def metavariable_eliminate(
    s: Scheme, order: Sequence[int] | None = None
) -> tuple[bool, list[Scheme]]:
    """Split away every variable in turn; conclusive for satisfiability.

    Subsumption dropping and shrinking (both solution-set preserving) run
    between steps to curb clause growth.  Returns (satisfiable, chain) where
    the chain records the scheme after each elimination.  The scheme is
    satisfiable iff the chain ends empty; an empty clause or contradiction
    along the way settles unsatisfiability.
    """
    if order is None:
        order = list(range(s.n))
    else:
        order = _check_permutation(order, s.n, "elimination")
    chain = [s]
    col_ids = list(range(s.n))
    cur = s
    for var in order:
        if cur.m == 0:
            return True, chain
        if status(cur) in (Status.CONTRADICTION, Status.EMPTY_CLAUSE):
            return False, chain
        idx = col_ids.index(var)
        cur = split(cur, idx).recombined
        cur = shrink(drop_subsumed(cur))
        col_ids.pop(idx)
        chain.append(cur)
    return cur.m == 0, chain


def reduce_read3(s: Scheme) -> Scheme:
    """Rewrite so every variable occurs at most three times (equisatisfiable).

    A variable with t > 3 occurrences becomes t chained copies, one per
    occurrence (the original column keeps the first), linked by the cyclic
    implication clauses (not y_i or y_{i+1}), indices mod t, which force all
    copies equal.  Each copy then occurs exactly three times.
    """
    occ_counts = np.count_nonzero(s.cells, axis=0) if s.m else np.zeros(s.n, dtype=int)
    heavy = [j for j in range(s.n) if occ_counts[j] > 3]
    if not heavy:
        return s
    n_total = s.n
    moves: list[tuple[int, int, int, int]] = []  # (row, old col, new col, fill)
    links: list[tuple[int, int]] = []  # (negated copy, implied copy)
    for v in heavy:
        occ_rows = [i for i in range(s.m) if s.cells[i, v] != 0]
        copies = [v]
        for _ in range(len(occ_rows) - 1):
            copies.append(n_total)
            n_total += 1
        for k in range(1, len(occ_rows)):
            i = occ_rows[k]
            moves.append((i, v, copies[k], int(s.cells[i, v])))
        for k in range(len(copies)):
            links.append((copies[k], copies[(k + 1) % len(copies)]))

    out = np.zeros((s.m + len(links), n_total), dtype=np.int8)
    out[: s.m, : s.n] = s.cells
    for i, old, new, fill in moves:
        out[i, old] = 0
        out[i, new] = fill
    for k, (neg_col, pos_col) in enumerate(links):
        out[s.m + k, neg_col] = -1
        out[s.m + k, pos_col] = 1
    return Scheme(out)
