"""LZ77 and SLP imports, SLP export, and the file formats."""

import math
import random

import pytest

from sigdex.lz77 import (build_from_lz77, lz77_decode, lz77_parse,
                         parse_lz77_file, serialize_lz77)
from sigdex.slp import (Slp, build_from_slp_gfact, export_to_slp,
                        parse_slp_file, serialize_slp)
from sigdex.store import PAIR, RUN, SigStore
from sigdex.tower import tower_from_text

from conftest import rnd_slp, rnd_text, structured_family

# The eleven-rule example grammar used across the variable-level tests:
# vals are A, B, C, CA, CAB, CABCAB, BC, AB, BCAB, CABCABBCAB, and the
# start derives CABCABBCABCABCAB.
EXAMPLE_RULES = [
    ("C", 65), ("C", 66), ("C", 67),
    ("P", 3, 1), ("P", 4, 2), ("P", 5, 5), ("P", 2, 3),
    ("P", 1, 2), ("P", 7, 8), ("P", 6, 9), ("P", 10, 6),
]
EXAMPLE_TEXT = b"CABCABBCABCABCAB"


def brute_lz77(text):
    """Quadratic reference parser for small inputs."""
    factors = []
    p = 0
    while p < len(text):
        best_len, best_src = 0, -1
        for ln in range(1, len(text) - p + 1):
            hit = -1
            for s in range(0, p - ln + 1):
                if text[s:s + ln] == text[p:p + ln]:
                    hit = s
                    break
            if hit < 0:
                break
            best_len, best_src = ln, hit
        if best_len == 0:
            factors.append(("L", text[p]))
            p += 1
        else:
            factors.append(("C", best_src + 1, best_len))
            p += best_len
    return factors


def test_lz77_unary_example():
    assert lz77_parse(b"aaaa") == [("L", 97), ("C", 1, 1), ("C", 1, 2)]


def test_lz77_all_distinct():
    f = lz77_parse(b"abcdef")
    assert f == [("L", c) for c in b"abcdef"]


def test_lz77_matches_brute():
    rng = random.Random(51)
    for _ in range(60):
        text = rnd_text(rng, rng.randrange(1, 80), rng.choice([2, 3]))
        assert lz77_parse(text) == brute_lz77(text)


def test_lz77_roundtrip():
    rng = random.Random(52)
    for text in structured_family(1500) + [rnd_text(rng, 3000, 4)]:
        assert lz77_decode(lz77_parse(text)) == text


def test_lz77_file_format():
    f = lz77_parse(b"abracadabra")
    data = serialize_lz77(f)
    assert parse_lz77_file(data) == f
    for bad in ("", "LZ99\nL 97", "LZ77\nC 1 1", "LZ77\nL 97\nC 2 1",
                "LZ77\nL 300", "LZ77\nL 97\nX 1"):
        with pytest.raises(ValueError):
            parse_lz77_file(bad)


def test_build_from_lz77(cfg):
    rng = random.Random(53)
    for text in (EXAMPLE_TEXT, b"a", rnd_text(rng, 2500, 2),
                 b"ab" * 700, rnd_text(rng, 1200, 26)):
        store = SigStore(cfg.params.universe)
        factors = lz77_parse(text)
        stats = {}
        root = build_from_lz77(store, factors, cfg.params, stats)
        assert store.expand(root) == text
        z, n = len(factors), len(text)
        bound = 32 * z * max(math.log2(max(n, 2)), 1) * cfg.params.log_star_u
        assert stats["peak_nodes"] <= bound
        assert len(store) <= bound


def test_slp_validation():
    with pytest.raises(ValueError):
        Slp([])
    with pytest.raises(ValueError):
        Slp([("C", 97), ("C", 98)])  # X_1 useless
    with pytest.raises(ValueError):
        Slp([("C", 97), ("C", 97), ("P", 1, 2)])  # redundant
    with pytest.raises(ValueError):
        Slp([("P", 1, 1)])  # forward reference
    with pytest.raises(ValueError):
        Slp([("C", 300)])


def test_slp_example_text(cfg, store):
    slp = Slp(EXAMPLE_RULES)
    assert slp.expand() == EXAMPLE_TEXT
    stats = {}
    root = build_from_slp_gfact(store, slp, cfg.params, stats)
    assert store.expand(root) == EXAMPLE_TEXT
    assert stats["ops"] <= 2 * slp.n + 1


def test_slp_single_char(cfg, store):
    root = build_from_slp_gfact(store, Slp([("C", 90)]), cfg.params)
    assert store.expand(root) == b"Z"


def test_slp_random_gfact(cfg):
    rng = random.Random(54)
    for _ in range(25):
        slp = rnd_slp(rng, rng.randrange(1, 50))
        store = SigStore(cfg.params.universe)
        stats = {}
        root = build_from_slp_gfact(store, slp, cfg.params, stats)
        assert store.expand(root) == slp.expand()
        assert stats["ops"] <= 2 * slp.n + 1


def test_slp_file_format():
    slp = Slp(EXAMPLE_RULES)
    data = serialize_slp(slp)
    back = parse_slp_file(data)
    assert back.rules == slp.rules
    for bad in ("", "SLP 2\n1 C 97", "SLP 1\n1 P 1 1", "SLP x\n",
                "SLP 2\n1 C 97\n1 C 98", "SLP 1\n1 C 97\n2 C 98"):
        with pytest.raises(ValueError):
            parse_slp_file(bad)


def _grammar_counts(store, root):
    pairs = runs_bound = 0
    seen = set()
    stack = [root]
    while stack:
        sig = stack.pop()
        if sig in seen:
            continue
        seen.add(sig)
        nd = store.node(sig)
        if nd.kind == PAIR:
            pairs += 1
            stack.extend((nd.a, nd.b))
        elif nd.kind == RUN:
            runs_bound += 2 * math.ceil(math.log2(max(nd.b, 2))) \
                if nd.b > 1 else 0
            stack.append(nd.a)
    return pairs, runs_bound


def test_export_doubling(cfg, store):
    root = tower_from_text(store, b"a" * 16, cfg.params)
    slp = export_to_slp(store, root)
    assert slp.expand() == b"a" * 16
    non_char = sum(1 for r in slp.rules[1:] if r[0] == "P")
    assert non_char <= 2 * math.ceil(math.log2(16))


def test_export_roundtrip(cfg):
    rng = random.Random(55)
    texts = [rnd_text(rng, 900, 3), b"ab" * 800, rnd_text(rng, 2000, 2),
             EXAMPLE_TEXT]
    for text in texts:
        store = SigStore(cfg.params.universe)
        root = tower_from_text(store, text, cfg.params)
        slp = export_to_slp(store, root)
        assert slp.expand() == text
        pairs, runs_bound = _grammar_counts(store, root)
        non_char = sum(1 for r in slp.rules[1:] if r[0] == "P")
        assert non_char <= pairs + runs_bound
        n = store.node(root).length
        assert slp.n <= 4 * len(store) * max(math.log2(max(n, 2)), 1)
        back = SigStore(cfg.params.universe)
        r2 = build_from_slp_gfact(back, slp, cfg.params)
        assert back.expand(r2) == text


def test_export_fixture_dictionary(cfg):
    from test_store import FIXTURE
    store, root = SigStore.deserialize(FIXTURE)
    slp = export_to_slp(store, root)
    assert slp.expand() == b"CABCAB" + b"AB" * 8 + b"CCCC"


def test_export_empty_rejected(cfg, store):
    with pytest.raises(ValueError):
        export_to_slp(store, None)
