"""Edits: reference-string oracle, same-store parse equality, GC, churn."""

import math
import random

import pytest

from sigdex.common_seq import uniq_of_substring
from sigdex.params import log_star
from sigdex.store import SigStore
from sigdex.tower import tower_from_text
from sigdex.updater import delete, insert, insert_copy, rebuild

from conftest import rnd_text


def apply_checked(store, root, params, fn, want):
    """Run an edit, GC, and verify against the naive reference string.

    Also replays a from-scratch parse of the edited text in the same
    store: it must reach the identical root without creating one node.
    """
    with store.track() as temp:
        new = fn()
        if new is not None:
            store.pin(new)
    if root is not None and root != new:
        store.unpin(root)
        store.remove_useless(root)
    store.sweep(temp)
    if want:
        assert new is not None
        assert store.expand(new) == want
        c0 = store.created
        assert tower_from_text(store, want, params) == new
        assert store.created == c0
    else:
        assert new is None
    return new


def test_rebuild_whole_view_zero_churn(cfg, store):
    text = rnd_text(random.Random(23), 3000, 3)
    root = tower_from_text(store, text, cfg.params)
    c0 = store.created
    piece = uniq_of_substring(store, root, 1, len(text), cfg.params)
    assert rebuild(store, [piece], cfg.params) == root
    assert store.created == c0


def test_insert_into_empty(cfg, store):
    root = insert(store, None, b"fresh start", 1, cfg.params)
    assert store.expand(root) == b"fresh start"
    store.pin(root)
    assert tower_from_text(store, b"fresh start", cfg.params) == root


def test_insert_empty_is_noop(cfg, store):
    root = tower_from_text(store, b"abc", cfg.params)
    assert insert(store, root, b"", 2, cfg.params) == root


def test_delete_everything_empties_store(cfg):
    store = SigStore(cfg.params.universe)
    root = tower_from_text(store, b"soon gone" * 40, cfg.params)
    store.pin(root)
    new = delete(store, root, 1, 9 * 40, cfg.params)
    assert new is None
    store.unpin(root)
    store.remove_useless(root)
    assert len(store) == 0
    store.audit()


def test_delete_then_reinsert_restores_text(cfg):
    store = SigStore(cfg.params.universe)
    text = rnd_text(random.Random(24), 900, 4)
    root = tower_from_text(store, text, cfg.params)
    store.pin(root)
    cut = text[200:500]
    root = apply_checked(store, root, cfg.params,
                         lambda: delete(store, root, 201, 300, cfg.params),
                         text[:200] + text[500:])
    r2 = root
    root = apply_checked(store, r2, cfg.params,
                         lambda: insert(store, r2, cut, 201, cfg.params),
                         text)
    assert store.expand(root) == text


def test_insert_copy_squares_text(cfg, store):
    text = rnd_text(random.Random(25), 700, 3)
    root = tower_from_text(store, text, cfg.params)
    store.pin(root)
    n = len(text)
    new = insert_copy(store, root, 1, n, n + 1, cfg.params)
    assert store.expand(new) == text + text


def test_insert_copy_matches_insert(cfg):
    rng = random.Random(26)
    text = rnd_text(rng, 1200, 3)
    for j, y, i in ((1, 600, 900), (400, 555, 1), (100, 1000, 500),
                    (1200, 1, 1), (37, 64, 37)):
        s1 = SigStore(cfg.params.universe)
        r1 = tower_from_text(s1, text, cfg.params)
        n1 = insert_copy(s1, r1, j, y, i, cfg.params)
        want = text[:i - 1] + text[j - 1:j - 1 + y] + text[i - 1:]
        assert s1.expand(n1) == want


def test_op_validation(cfg, store):
    root = tower_from_text(store, b"0123456789", cfg.params)
    with pytest.raises(ValueError):
        insert(store, root, b"x", 0, cfg.params)
    with pytest.raises(ValueError):
        insert(store, root, b"x", 12, cfg.params)
    with pytest.raises(ValueError):
        delete(store, root, 5, 7, cfg.params)
    with pytest.raises(ValueError):
        delete(store, root, 5, 0, cfg.params)
    with pytest.raises(ValueError):
        insert_copy(store, root, 0, 2, 1, cfg.params)
    with pytest.raises(ValueError):
        insert_copy(store, root, 9, 3, 1, cfg.params)


def test_random_scripts_reference_oracle(cfg):
    rng = random.Random(27)
    for _ in range(2):
        store = SigStore(cfg.params.universe)
        text = rnd_text(rng, rng.randrange(2, 2000), rng.choice([2, 4, 26]))
        root = tower_from_text(store, text, cfg.params)
        store.pin(root)
        for op in range(120):
            n = len(text)
            kind = rng.randrange(3)
            if n > 6000:
                kind = 2
            if kind == 0 or n < 4:
                y = rng.randrange(1, 250)
                ins = rnd_text(rng, y, rng.choice([2, 26]))
                i = rng.randrange(1, n + 2)
                want = text[:i - 1] + ins + text[i - 1:]
                def fn(r=root, s=ins, p=i):
                    return insert(store, r, s, p, cfg.params)
            elif kind == 1:
                y = rng.randrange(1, n + 1)
                j = rng.randrange(1, n - y + 2)
                i = rng.randrange(1, n + 2)
                want = text[:i - 1] + text[j - 1:j - 1 + y] + text[i - 1:]
                def fn(r=root, a=j, b=y, p=i):
                    return insert_copy(store, r, a, b, p, cfg.params)
            else:
                y = rng.randrange(1, max(2, n // 3))
                j = rng.randrange(1, n - y + 2)
                want = text[:j - 1] + text[j - 1 + y:]
                def fn(r=root, a=j, b=y):
                    return delete(store, r, a, b, cfg.params)
            root = apply_checked(store, root, cfg.params, fn, want)
            text = want
            if op % 30 == 29:
                store.audit()
        store.audit()


def test_churn_bounds(cfg):
    rng = random.Random(28)
    store = SigStore(cfg.params.universe)
    m = cfg.params.universe
    text = rnd_text(rng, 4096, 3)
    root = tower_from_text(store, text, cfg.params)
    store.pin(root)
    for op in range(60):
        n = len(text)
        kind = rng.randrange(3)
        if n > 9000:
            kind = 2
        y = 0
        if kind == 0:
            y = rng.randrange(1, 300)
            ins = rnd_text(rng, y, 3)
            i = rng.randrange(1, n + 2)
            want = text[:i - 1] + ins + text[i - 1:]
            def fn(r=root, s=ins, p=i):
                return insert(store, r, s, p, cfg.params)
        elif kind == 1:
            cy = rng.randrange(1, n + 1)
            j = rng.randrange(1, n - cy + 2)
            i = rng.randrange(1, n + 2)
            want = text[:i - 1] + text[j - 1:j - 1 + cy] + text[i - 1:]
            def fn(r=root, a=j, b=cy, p=i):
                return insert_copy(store, r, a, b, p, cfg.params)
        else:
            cy = rng.randrange(1, max(2, n // 2))
            j = rng.randrange(1, n - cy + 2)
            want = text[:j - 1] + text[j - 1 + cy:]
            def fn(r=root, a=j, b=cy):
                return delete(store, r, a, b, cfg.params)
        c0, r0 = store.created, store.removed
        with store.track() as temp:
            new = fn()
            if new is not None:
                store.pin(new)
        if root is not None and root != new:
            store.unpin(root)
            store.remove_useless(root)
        store.sweep(temp)
        churn = (store.created - c0) + (store.removed - r0)
        bound = 64 * (y + math.log2(n + 2) * log_star(m) + 1)
        assert churn <= bound, (kind, n, y, churn, bound)
        assert store.expand(new) == want
        root, text = new, want
