"""Variable-level sort, lcp/lcs, and extension queries against naive string oracles."""

import random

import pytest

from conftest import rnd_slp
from test_importers import EXAMPLE_RULES

from sigdex.slp import Slp
from sigdex.variables import VariableOps

EXAMPLE_ORDER = [1, 8, 2, 7, 9, 3, 4, 5, 6, 10, 11]

# Sorting the child-swapped example grammar: the reversal of variable 11
# (BACBAC...) sorts before the reversal of variable 10 (BACBB...).
EXAMPLE_ORDER_REVERSED = [1, 4, 2, 8, 5, 9, 6, 11, 10, 3, 7]


def naive_order(slp):
    vals = {i: slp.expand(i) for i in range(1, slp.n + 1)}
    return sorted(range(1, slp.n + 1), key=lambda i: (vals[i], i))


def naive_lcp(x, y):
    n = 0
    for a, b in zip(x, y):
        if a != b:
            break
        n += 1
    return n


def naive_lcs(x, y):
    return naive_lcp(x[::-1], y[::-1])


def test_example_sort_order(store, cfg):
    ops = VariableOps(store, Slp(EXAMPLE_RULES), cfg.params)
    assert ops.sort_variables() == EXAMPLE_ORDER


def test_example_reversed_sort_order(store, cfg):
    rules = [r if r[0] == "C" else ("P", r[2], r[1]) for r in EXAMPLE_RULES]
    slp = Slp(rules)
    ops = VariableOps(store, slp, cfg.params)
    assert ops.sort_variables() == naive_order(slp) == EXAMPLE_ORDER_REVERSED


def test_example_lcp_lcs_values(store, cfg):
    slp = Slp(EXAMPLE_RULES)
    ops = VariableOps(store, slp, cfg.params)
    for fast in (False, True):
        assert ops.variable_lcp(5, 6, fast=fast) == 3
        assert ops.variable_lcs(5, 6, fast=fast) == 3
        assert ops.variable_lcs(9, 6, fast=fast) == 4
    for i in range(1, slp.n + 1):
        assert ops.variable_lcp(i, i) == len(slp.expand(i))
        assert ops.variable_lcs(i, i) == len(slp.expand(i))


def test_single_rule_grammar(store, cfg):
    ops = VariableOps(store, Slp([("C", 120)]), cfg.params)
    assert ops.sort_variables() == [1]
    assert ops.variable_lcp(1, 1, fast=True) == 1
    assert ops.lce_on_variables(1, 1, 1, 1) == 1


def test_equal_expansions_tie_break_by_index(store, cfg):
    # two distinct variables deriving "aaa"
    rules = [("C", 97), ("P", 1, 1), ("P", 2, 1), ("P", 1, 2), ("P", 3, 4)]
    slp = Slp(rules)
    ops = VariableOps(store, slp, cfg.params)
    assert slp.expand(3) == slp.expand(4)
    assert ops.sort_variables() == naive_order(slp) == [1, 2, 3, 4, 5]
    for fast in (False, True):
        assert ops.variable_lcp(3, 4, fast=fast) == 3
        assert ops.variable_lcs(3, 4, fast=fast) == 3


def test_random_sort_matches_naive(store, cfg):
    rng = random.Random(0x5eed)
    for _ in range(25):
        slp = rnd_slp(rng, rng.randrange(1, 30))
        ops = VariableOps(store, slp, cfg.params)
        assert ops.sort_variables() == naive_order(slp)


def test_random_lcp_lcs_all_pairs(store, cfg):
    rng = random.Random(1337)
    for _ in range(12):
        slp = rnd_slp(rng, rng.randrange(1, 16))
        ops = VariableOps(store, slp, cfg.params)
        vals = {i: slp.expand(i) for i in range(1, slp.n + 1)}
        for i in range(1, slp.n + 1):
            for j in range(1, slp.n + 1):
                want_p = naive_lcp(vals[i], vals[j])
                want_s = naive_lcs(vals[i], vals[j])
                for fast in (False, True):
                    assert ops.variable_lcp(i, j, fast=fast) == want_p
                    assert ops.variable_lcs(i, j, fast=fast) == want_s


def test_lce_on_variables_matches_naive(store, cfg):
    rng = random.Random(42)
    for _ in range(10):
        slp = rnd_slp(rng, rng.randrange(1, 20))
        ops = VariableOps(store, slp, cfg.params)
        vals = {i: slp.expand(i) for i in range(1, slp.n + 1)}
        for _ in range(40):
            i = rng.randrange(1, slp.n + 1)
            j = rng.randrange(1, slp.n + 1)
            a = rng.randrange(1, len(vals[i]) + 1)
            b = rng.randrange(1, len(vals[j]) + 1)
            want = naive_lcp(vals[i][a - 1:], vals[j][b - 1:])
            assert ops.lce_on_variables(i, j, a, b) == want


def test_lce_on_variables_rejects_bad_positions(store, cfg):
    slp = Slp(EXAMPLE_RULES)
    ops = VariableOps(store, slp, cfg.params)
    n5 = len(slp.expand(5))
    with pytest.raises(ValueError):
        ops.lce_on_variables(5, 6, 0, 1)
    with pytest.raises(ValueError):
        ops.lce_on_variables(5, 6, n5 + 1, 1)
    with pytest.raises(ValueError):
        ops.lce_on_variables(5, 6, 1, 10 ** 9)
    with pytest.raises(ValueError):
        ops.variable_lcp(0, 1)
    with pytest.raises(ValueError):
        ops.variable_lcs(1, slp.n + 1)
