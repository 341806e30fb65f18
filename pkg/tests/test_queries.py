"""LCE/LCP/LCS queries against character-scan oracles."""

import math
import random

import pytest

from sigdex.params import log_star
from sigdex.queries import VisitCounter, lce, lce_backward, lcp_sig, lcs_sig
from sigdex.store import SigStore
from sigdex.tower import tower_from_text

from conftest import fibonacci_word, rnd_text, thue_morse


def naive_lce(x, y, i, j):
    """Common-prefix length of x[i..] and y[j..], by doubling slices."""
    a, b = x[i - 1:], y[j - 1:]
    n = min(len(a), len(b))
    if a[:n] == b[:n]:
        return n
    lo, step = 0, 256
    while lo < n:
        hi = min(lo + step, n)
        if a[lo:hi] == b[lo:hi]:
            lo = hi
            step *= 2
            continue
        while lo < hi and a[lo] == b[lo]:
            lo += 1
        return lo
    return lo


def naive_lce_back(x, y, i, j):
    return naive_lce(x[:i][::-1], y[:j][::-1], 1, 1)


def test_self_match(cfg, store):
    text = rnd_text(random.Random(31), 3000, 5)
    root = tower_from_text(store, text, cfg.params)
    n = len(text)
    for k in (1, 2, 17, 1500, n - 1, n):
        assert lce(store, root, root, k, k) == n - k + 1
        assert lce_backward(store, root, root, k, k) == k


def test_small_word(cfg, store):
    root = tower_from_text(store, b"abracadabra", cfg.params)
    assert lce(store, root, root, 1, 8) == 4
    assert lce_backward(store, root, root, 11, 4) == 4
    assert lce(store, root, root, 2, 9) == 3
    assert lce(store, root, root, 1, 4) == 1
    assert lce(store, root, root, 1, 2) == 0


def test_matches_naive(cfg, store):
    rng = random.Random(32)
    texts = [
        rnd_text(rng, 2500, 2),
        rnd_text(rng, 2500, 26),
        fibonacci_word(2500),
        thue_morse(2048),
        b"ab" * 1250,
        b"a" * 2500,
    ]
    roots = [tower_from_text(store, t, cfg.params) for t in texts]
    for _ in range(900):
        x = rng.randrange(len(texts))
        y = rng.randrange(len(texts))
        i = rng.randrange(1, len(texts[x]) + 1)
        j = rng.randrange(1, len(texts[y]) + 1)
        got = lce(store, roots[x], roots[y], i, j, debug=True)
        assert got == naive_lce(texts[x], texts[y], i, j)
        got = lce_backward(store, roots[x], roots[y], i, j, debug=True)
        assert got == naive_lce_back(texts[x], texts[y], i, j)


def test_lcp_lcs_sig(cfg, store):
    r5 = tower_from_text(store, b"CAB", cfg.params)
    r6 = tower_from_text(store, b"CABCAB", cfg.params)
    assert lcp_sig(store, r5, r6) == 3
    assert lcp_sig(store, r6, r6) == 6
    assert lcs_sig(store, r5, r6) == 3

    rng = random.Random(33)
    words = [rnd_text(rng, rng.randrange(1, 400), 3) for _ in range(25)]
    sigs = [tower_from_text(store, w, cfg.params) for w in words]
    for _ in range(300):
        a = rng.randrange(len(words))
        b = rng.randrange(len(words))
        assert lcp_sig(store, sigs[a], sigs[b]) == \
            naive_lce(words[a], words[b], 1, 1)
        assert lcs_sig(store, sigs[a], sigs[b]) == \
            naive_lce_back(words[a], words[b], len(words[a]), len(words[b]))


def test_queries_are_read_only(cfg, store):
    text = rnd_text(random.Random(34), 2000, 3)
    root = tower_from_text(store, text, cfg.params)
    size, made = len(store), store.created
    for k in range(1, 2000, 37):
        lce(store, root, root, k, (k * 7) % 2000 + 1)
        lce_backward(store, root, root, k, (k * 11) % 2000 + 1)
    assert (len(store), store.created) == (size, made)


def test_position_validation(cfg, store):
    root = tower_from_text(store, b"xyz", cfg.params)
    for bad in (0, 4, -1):
        with pytest.raises(ValueError):
            lce(store, root, root, bad, 1)
        with pytest.raises(ValueError):
            lce_backward(store, root, root, 1, bad)


def test_visit_budget(cfg):
    store = SigStore(cfg.params.universe)
    ls = log_star(cfg.params.universe)
    rng = random.Random(35)
    texts = [rnd_text(rng, 1 << 15, 2), fibonacci_word(1 << 15)]
    roots = [tower_from_text(store, t, cfg.params) for t in texts]
    for _ in range(120):
        x = rng.randrange(2)
        y = rng.randrange(2)
        n1, n2 = len(texts[x]), len(texts[y])
        if rng.random() < 0.5 and x == y:
            # long self-overlap, the expensive regime
            i = rng.randrange(1, 60)
            j = i + rng.choice([1, 2, 3, 5, 8, 13])
        else:
            i = rng.randrange(1, n1 + 1)
            j = rng.randrange(1, n2 + 1)
        c = VisitCounter()
        ell = lce(store, roots[x], roots[y], i, j, counter=c)
        assert ell == naive_lce(texts[x], texts[y], i, j)
        bound = 64 * (math.log2(n1) + math.log2(n2)
                      + math.log2(max(ell, 2)) * ls + 1)
        assert c.n <= bound, (x, y, i, j, ell, c.n, bound)
        c = VisitCounter()
        ell = lce_backward(store, roots[x], roots[y],
                           n1 - i + 1, n2 - min(j, n2) + 1, counter=c)
        bound = 64 * (math.log2(n1) + math.log2(n2)
                      + math.log2(max(ell, 2)) * ls + 1)
        assert c.n <= bound
