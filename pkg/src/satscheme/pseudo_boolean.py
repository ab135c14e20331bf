"""Unsatisfied-clause polynomial u(x) over sign vectors x in {-1,+1}^n.

For a clause with fills f_j, g(x) = prod_{support}(1 - f_j x_j) is 2**k when
every literal is falsified and 0 otherwise, so with per-clause weights a_i,
u(x) = sum_i a_i g_i(x) vanishes exactly on the models of the formula.  With
the canonical weights a_i = 2**-k_i each violated clause contributes 1 and
u(x) is the number of violated clauses.

For formulas with at most three literals per clause u expands into a cubic
multilinear polynomial

    u(x) = C - sum_j lam_j x_j + sum_{i<j} mu_ij x_i x_j
             - sum_{i<j<k} nu_ijk x_i x_j x_k

whose coefficients are exact dyadic rationals computed here.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .dyadic import Dyadic, ZERO
from .scheme_core import Scheme, as_assignment

__all__ = [
    "ExtensionStrategy",
    "PBForm",
    "pb_coefficients",
    "resolve_weights",
    "polarity_damped_weights",
    "eval_u",
    "unsat_count_direct",
    "extend",
    "serialize_polynomial",
    "scaled_profile",
]


class ExtensionStrategy(enum.Enum):
    """Which adverse-parity partner clause to add per 3-literal clause."""

    FLIP_FIRST = "first"
    FLIP_SECOND = "second"
    FLIP_THIRD = "third"
    FLIP_ALL = "all"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class PBForm:
    """Cubic multilinear expansion of u(x).

    `lam` has one entry per variable; `mu`/`nu` are sparse with strictly
    increasing index tuples and no zero values.  `scale_exp` is the weight
    denominator exponent: multiplying every coefficient by 2**scale_exp
    yields integers (the form the serializer prints).
    """

    n: int
    const: Dyadic
    lam: tuple[Dyadic, ...]
    mu: dict[tuple[int, int], Dyadic]
    nu: dict[tuple[int, int, int], Dyadic]
    scale_exp: int
    weight_kind: str

    @property
    def scale(self) -> int:
        return 1 << self.scale_exp

    def coefficient_mass(self) -> Dyadic:
        """sum |lam| + sum |mu| + sum |nu| (the largest swing of u - C)."""
        total = ZERO
        for v in self.lam:
            total = total + abs(v)
        for v in self.mu.values():
            total = total + abs(v)
        for v in self.nu.values():
            total = total + abs(v)
        return total


def resolve_weights(s: Scheme, weights: str | Sequence[Dyadic] = "canonical") -> tuple[list[Dyadic], str]:
    """Per-clause positive weights from a scheme and a weight spec.

    'canonical' gives 2**-k_i, 'unit' gives 1; any sequence of positive
    dyadics (length m) is accepted as custom weights.
    """
    if isinstance(weights, str):
        kind = weights.lower()
        if kind == "canonical":
            return [Dyadic.half_pow(s.row_size(i)) for i in range(s.m)], "canonical"
        if kind == "unit":
            return [Dyadic(1) for _ in range(s.m)], "unit"
        raise ValueError(f"unknown weight scheme {weights!r}")
    vals = list(weights)
    if len(vals) != s.m:
        raise ValueError(f"need {s.m} weights, got {len(vals)}")
    for i, w in enumerate(vals):
        if not isinstance(w, Dyadic):
            raise TypeError(f"weight {i + 1} is not a Dyadic")
        if not (Dyadic(0) < w):
            raise ValueError(f"weight {i + 1} must be strictly positive, got {w}")
    return vals, "custom"


def polarity_damped_weights(s: Scheme) -> list[Dyadic]:
    """Preset custom weights 2**-k_i * 2**-|net polarity of clause i|.

    Damps clauses whose literals lean heavily one way; any strictly positive
    weights preserve the u(x)=0-iff-model property.
    """
    out = []
    for i in range(s.m):
        net = int(s.cells[i].astype(np.int64).sum())
        out.append(Dyadic.half_pow(s.row_size(i) + abs(net)))
    return out


def pb_coefficients(s: Scheme, weights: str | Sequence[Dyadic] = "canonical") -> PBForm:
    """Exact expansion coefficients of u(x); requires at most 3 literals per clause.

    Clauses with four or more literals have quartic terms the expansion does
    not carry; convert the formula to 3-SAT first.
    """
    wvals, kind = resolve_weights(s, weights)
    lam = [ZERO] * s.n
    mu: dict[tuple[int, int], Dyadic] = {}
    nu: dict[tuple[int, int, int], Dyadic] = {}
    const = ZERO
    for i in range(s.m):
        sup = s.row_support(i)
        if len(sup) > 3:
            raise ValueError(
                f"clause {i + 1} has {len(sup)} literals; the cubic expansion "
                f"needs 3-SAT input (reduce the formula first)"
            )
        a = wvals[i]
        const = const + a
        fills = [int(s.cells[i, j]) for j in sup]
        for j, f in zip(sup, fills):
            lam[j] = lam[j] + a * f
        for (j1, f1), (j2, f2) in itertools.combinations(zip(sup, fills), 2):
            key = (j1, j2)
            mu[key] = mu.get(key, ZERO) + a * (f1 * f2)
        if len(sup) == 3:
            key3 = (sup[0], sup[1], sup[2])
            prod = fills[0] * fills[1] * fills[2]
            nu[key3] = nu.get(key3, ZERO) + a * prod
    mu = {k: v for k, v in mu.items() if v}
    nu = {k: v for k, v in nu.items() if v}
    scale_exp = max((w.exp for w in wvals), default=0)
    return PBForm(
        n=s.n,
        const=const,
        lam=tuple(lam),
        mu=mu,
        nu=nu,
        scale_exp=scale_exp,
        weight_kind=kind,
    )


def eval_u(p: PBForm, x: Sequence[int]) -> Dyadic:
    """Exact value of u at a sign vector."""
    xs = as_assignment(x, p.n)
    total = p.const
    for j, v in enumerate(p.lam):
        if v:
            total = total - v * xs[j]
    for (i, j), v in p.mu.items():
        total = total + v * (xs[i] * xs[j])
    for (i, j, k), v in p.nu.items():
        total = total - v * (xs[i] * xs[j] * xs[k])
    return total


def unsat_count_direct(s: Scheme, x: Sequence[int]) -> int:
    """Number of clauses with no satisfied literal, by direct row scan.

    Independent of the polynomial machinery; serves as its oracle.
    """
    xs = as_assignment(x, s.n)
    if s.m == 0:
        return 0
    xv = np.array(xs, dtype=np.int8)
    sat = ((s.cells != 0) & (s.cells == xv[None, :])).any(axis=1)
    return int(s.m - np.count_nonzero(sat))


def _adverse_row(row: np.ndarray, sup: np.ndarray, strategy: ExtensionStrategy) -> np.ndarray:
    out = row.copy()
    if strategy is ExtensionStrategy.FLIP_ALL:
        out[sup] = -out[sup]
    else:
        pos = {"first": 0, "second": 1, "third": 2}[strategy.value]
        j = sup[pos]
        out[j] = -out[j]
    return out


def extend(s: Scheme, strategy: ExtensionStrategy | str = ExtensionStrategy.FLIP_SECOND) -> Scheme:
    """Append one adverse-parity partner per 3-literal clause.

    The partner shares the clause's support with the opposite product of
    literal signs, so the two cubic contributions cancel: the result always
    has nu identically zero.  Any model of the extension satisfies the
    original clauses (they are all still present), so a satisfiable
    extension certifies satisfiability of `s`.

    EXHAUSTIVE enumerates the per-clause choices (first, second, third, all)
    in deterministic product order and returns the first extension that the
    brute-force scan finds satisfiable; it raises ValueError when none is
    (which can only happen when `s` itself is unsatisfiable).
    """
    if isinstance(strategy, str):
        strategy = ExtensionStrategy(strategy.lower())
    triple_rows = [i for i in range(s.m) if s.row_size(i) == 3]
    if not triple_rows:
        return s

    if strategy is ExtensionStrategy.EXHAUSTIVE:
        if s.n > 30:
            raise ValueError("exhaustive extension search is capped at n <= 30")
        choices = (
            ExtensionStrategy.FLIP_FIRST,
            ExtensionStrategy.FLIP_SECOND,
            ExtensionStrategy.FLIP_THIRD,
            ExtensionStrategy.FLIP_ALL,
        )
        for combo in itertools.product(choices, repeat=len(triple_rows)):
            rows = list(s.cells)
            for i, choice in zip(triple_rows, combo):
                rows.append(_adverse_row(s.cells[i], np.nonzero(s.cells[i])[0], choice))
            cand = Scheme(np.array(rows, dtype=np.int8))
            sat_count, _, _, _, _ = kernels.assignment_scan(cand.cells)
            if sat_count > 0:
                return cand
        raise ValueError("no satisfiable extension exists (the formula is unsatisfiable)")

    rows = list(s.cells)
    for i in triple_rows:
        rows.append(_adverse_row(s.cells[i], np.nonzero(s.cells[i])[0], strategy))
    return Scheme(np.array(rows, dtype=np.int8))


def serialize_polynomial(p: PBForm) -> str:
    """Paper-style single line with 2**scale_exp-scaled integer coefficients.

    Example: `8u = 12 + x1 - 2x2 + 2x3 - 3x4 - x1x2 + ...` with terms in
    constant, linear, pair, triple order and indices ascending.
    """
    e = p.scale_exp
    terms: list[tuple[int, str]] = []
    for j, v in enumerate(p.lam):
        if v:
            terms.append(((-v).scaled(e), f"x{j + 1}"))
    for (i, j) in sorted(p.mu):
        terms.append((p.mu[(i, j)].scaled(e), f"x{i + 1}x{j + 1}"))
    for (i, j, k) in sorted(p.nu):
        terms.append(((-p.nu[(i, j, k)]).scaled(e), f"x{i + 1}x{j + 1}x{k + 1}"))

    head = f"{p.scale}u = " if e else "u = "
    parts = [head + str(p.const.scaled(e))]
    for coef, vars_ in terms:
        sign = "+" if coef > 0 else "-"
        mag = abs(coef)
        parts.append(f" {sign} {vars_}" if mag == 1 else f" {sign} {mag}{vars_}")
    return "".join(parts)


def to_json_dict(p: PBForm) -> dict:
    """JSON-ready {scale, C, lambda, mu, nu} with scaled integer coefficients."""
    e = p.scale_exp
    return {
        "scale": p.scale,
        "weights": p.weight_kind,
        "C": p.const.scaled(e),
        "lambda": [v.scaled(e) for v in p.lam],
        "mu": {f"{i + 1},{j + 1}": v.scaled(e) for (i, j), v in sorted(p.mu.items())},
        "nu": {
            f"{i + 1},{j + 1},{k + 1}": v.scaled(e) for (i, j, k), v in sorted(p.nu.items())
        },
        "polynomial": serialize_polynomial(p),
    }


def scaled_profile(p: PBForm, limit: int = 20) -> tuple[int, np.ndarray]:
    """(scale, values) with values[code] = scale * u(assignment code), exact int64.

    Vectorized over all 2**n assignments for test/validation use at small n.
    """
    if p.n > limit:
        raise ValueError(f"n={p.n} exceeds profile limit {limit}")
    e = p.scale_exp
    total = 1 << p.n
    codes = np.arange(total, dtype=np.int64)
    X = (((codes[:, None] >> np.arange(p.n, dtype=np.int64)[None, :]) & 1) * 2 - 1).astype(
        np.int64
    )
    vals = np.full(total, p.const.scaled(e), dtype=np.int64)
    for j, v in enumerate(p.lam):
        if v:
            vals -= v.scaled(e) * X[:, j]
    for (i, j), v in p.mu.items():
        vals += v.scaled(e) * X[:, i] * X[:, j]
    for (i, j, k), v in p.nu.items():
        vals -= v.scaled(e) * X[:, i] * X[:, j] * X[:, k]
    return p.scale, vals
