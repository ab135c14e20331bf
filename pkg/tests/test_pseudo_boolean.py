import itertools
import random

import numpy as np
import pytest

from satscheme.dyadic import Dyadic
from satscheme.kernels import assignment_profile, decode_assignment
from satscheme.oracle import oracle_scan
from satscheme.pseudo_boolean import (
    ExtensionStrategy,
    eval_u,
    extend,
    pb_coefficients,
    polarity_damped_weights,
    resolve_weights,
    scaled_profile,
    serialize_polynomial,
    to_json_dict,
    unsat_count_direct,
)
from satscheme.scheme_core import Scheme, evaluate

from conftest import random_scheme

F5_POLY = "8u = 12 + x1 - 2x2 + 2x3 - 3x4 - x1x2 + x1x3 + x2x4 - x3x4 - x1x2x3 - x2x3x4"
GEXT_POLY = "8u = 10 - 4x2 - 2x4 - 2x5 + 2x2x3 + 2x2x5 + 2x3x4"


def test_f5_polynomial_serialization(f5):
    p = pb_coefficients(f5)
    assert serialize_polynomial(p) == F5_POLY
    assert p.scale == 8
    assert eval_u(p, (1, 1, 1, 1)) == Dyadic(1)


def test_f5_eval_all_false(f5):
    p = pb_coefficients(f5)
    assert eval_u(p, (-1, -1, -1, -1)) == Dyadic(2)
    assert unsat_count_direct(f5, (-1, -1, -1, -1)) == 2


def test_f4_solutions_have_zero_u(f4):
    p = pb_coefficients(f4)
    for sol in oracle_scan(f4).solutions:
        assert eval_u(p, sol) == Dyadic(0)


def test_gext_polynomial(gext):
    p = pb_coefficients(gext)
    assert p.nu == {}
    assert serialize_polynomial(p) == GEXT_POLY


def test_empty_scheme_coefficients():
    p = pb_coefficients(Scheme.empty(3))
    assert p.const == Dyadic(0)
    assert all(v == Dyadic(0) for v in p.lam)
    assert p.mu == {} and p.nu == {}
    assert serialize_polynomial(p) == "u = 0"


def test_unit_weights_polynomial(f5):
    p = pb_coefficients(f5, "unit")
    assert p.scale == 1
    assert p.const == Dyadic(5)
    assert serialize_polynomial(p).startswith("u = 5")


def test_pb_rejects_wide_clauses():
    s = Scheme.from_rows([[1, 1, 1, 1]])
    with pytest.raises(ValueError, match="3-SAT"):
        pb_coefficients(s)


def test_eval_u_length_mismatch(f5):
    p = pb_coefficients(f5)
    with pytest.raises(ValueError):
        eval_u(p, (1, 1, 1))


def test_weight_validation(f5):
    with pytest.raises(ValueError):
        resolve_weights(f5, "nope")
    with pytest.raises(ValueError):
        resolve_weights(f5, [Dyadic(1)] * 4)
    with pytest.raises(ValueError):
        resolve_weights(f5, [Dyadic(0)] + [Dyadic(1)] * 4)
    damped = polarity_damped_weights(f5)
    vals, kind = resolve_weights(f5, damped)
    assert kind == "custom"
    # clause 3 has two negated literals: weight 2**-2 * 2**-2
    assert vals[2] == Dyadic.half_pow(4)


def test_to_json_dict(f5):
    d = to_json_dict(pb_coefficients(f5))
    assert d["scale"] == 8
    assert d["C"] == 12
    assert d["lambda"] == [-1, 2, -2, 3]
    assert d["mu"]["1,2"] == -1
    assert d["nu"]["2,3,4"] == 1
    assert d["polynomial"] == F5_POLY


def test_eval_u_equals_direct_count_exhaustive():
    rng = random.Random(67)
    for _ in range(120):
        s = random_scheme(rng, n_max=8, m_max=12, empty_row_prob=0.05)
        p = pb_coefficients(s)
        scale, vals = scaled_profile(p)
        direct = assignment_profile(s.cells)
        assert np.array_equal(vals, direct * scale)
        # spot-check the exact Dyadic path on a few assignments
        for _ in range(5):
            code = rng.randrange(1 << s.n)
            x = decode_assignment(code, s.n)
            assert eval_u(p, x) == Dyadic(unsat_count_direct(s, x))


def test_u_sum_identity():
    # sum over all x of u(x) == 2**n * sum of weights, exactly
    rng = random.Random(71)
    for _ in range(80):
        s = random_scheme(rng, n_max=8, m_max=12, empty_row_prob=0.05)
        p = pb_coefficients(s)
        scale, vals = scaled_profile(p)
        assert int(vals.sum()) == (1 << s.n) * p.const.scaled(p.scale_exp)


def test_zero_u_iff_satisfiable_for_any_positive_weights():
    rng = random.Random(73)
    for _ in range(60):
        s = random_scheme(rng, n_max=6, m_max=9, empty_row_prob=0.05)
        sat = oracle_scan(s).count > 0
        for weights in ("canonical", "unit", polarity_damped_weights(s)):
            p = pb_coefficients(s, weights)
            zero_hit = any(
                eval_u(p, decode_assignment(code, s.n)) == Dyadic(0)
                for code in range(1 << s.n)
            )
            assert zero_hit == sat


def test_unit_weight_flip_parity():
    # flipping one coordinate changes the unit-weight u by an even amount
    rng = random.Random(79)
    for _ in range(60):
        s = random_scheme(rng, n_max=7, m_max=10, empty_row_prob=0.1)
        p = pb_coefficients(s, "unit")
        code = rng.randrange(1 << s.n)
        x = list(decode_assignment(code, s.n))
        before = eval_u(p, x).as_int()
        j = rng.randrange(s.n)
        x[j] = -x[j]
        after = eval_u(p, x).as_int()
        assert (after - before) % 2 == 0


# --- extension ----------------------------------------------------------------

def test_extend_g_flip_first_is_gext(g, gext):
    assert extend(g, ExtensionStrategy.FLIP_FIRST) == gext
    assert extend(g, "first") == gext


def test_extend_no_triples_unchanged():
    s = Scheme.from_rows([[1, -1, 0], [0, 1, 0]])
    assert extend(s) == s


def test_extend_all_strategies_cancel_cubics_and_preserve_models():
    rng = random.Random(83)
    strategies = ("first", "second", "third", "all")
    for _ in range(40):
        s = random_scheme(rng, n_max=6, m_max=8)
        for strat in strategies:
            ext = extend(s, strat)
            assert pb_coefficients(ext).nu == {}
            report = oracle_scan(ext)
            if report.solutions:
                for sol in report.solutions:
                    assert evaluate(s, sol)


def test_extend_exhaustive_on_g(g, gext):
    ext = extend(g, ExtensionStrategy.EXHAUSTIVE)
    assert oracle_scan(ext).count > 0
    assert pb_coefficients(ext).nu == {}
    # deterministic enumeration starts at all-flip-first, which is already
    # satisfiable here
    assert ext == gext
    # the found extension is one of the per-clause flip combinations
    assert ext.m == g.m * 2
    assert np.array_equal(ext.cells[: g.m], g.cells)
    for i in range(g.m):
        orig = g.cells[i]
        added = ext.cells[g.m + i]
        sup = np.nonzero(orig)[0]
        assert set(np.nonzero(added)[0]) == set(sup)
        prod_orig = int(np.prod(orig[sup]))
        prod_added = int(np.prod(added[sup]))
        assert prod_added == -prod_orig


def test_extend_exhaustive_unsat_raises(f5):
    with pytest.raises(ValueError, match="unsatisfiable"):
        extend(f5, "exhaustive")


def test_extend_sat_of_extension_implies_sat():
    # satisfiable extension -> original satisfiable (never the converse)
    rng = random.Random(89)
    hits = 0
    for _ in range(60):
        s = random_scheme(rng, n_max=6, m_max=8)
        ext = extend(s, "second")
        if oracle_scan(ext).count > 0:
            hits += 1
            assert oracle_scan(s).count > 0
    assert hits > 0
