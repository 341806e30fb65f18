"""Engine facade: building, edits, cross-text queries, dump round-trips."""

import random

import pytest

from sigdex.engine import Engine
from sigdex.lz77 import lz77_parse
from sigdex.params import EngineConfig
from sigdex.slp import Slp

from conftest import canonical_form, rnd_text
from test_importers import EXAMPLE_RULES, EXAMPLE_TEXT


def test_all_builders_reach_the_same_grammar(cfg):
    rng = random.Random(8)
    text = rnd_text(rng, 1500, 3)
    expansions = set()
    for feed in ("naive", "linear", "lz77", "gfact", "levelwise"):
        eng = Engine(cfg)
        if feed in ("naive", "linear"):
            eng.set_text(text, feed)
        elif feed == "lz77":
            eng.set_from_lz77(lz77_parse(text))
        else:
            base = Engine(cfg)
            base.set_text(text)
            eng.set_from_slp(base.to_slp(), feed)
        expansions.add(eng.expand())
        eng.verify()
    assert expansions == {text}

    # the same builder over the same text lands on the same grammar
    one = Engine(cfg)
    two = Engine(cfg)
    one.set_text(text, "linear")
    two.set_text(text, "linear")
    assert canonical_form(one.store, one.root) == canonical_form(
        two.store, two.root)


def test_edits_track_reference_string(cfg):
    rng = random.Random(44)
    eng = Engine(cfg)
    text = rnd_text(rng, 400, 4)
    eng.set_text(text)
    for step in range(30):
        kind = rng.randrange(3)
        if kind == 0 or len(text) < 2:
            piece = rnd_text(rng, rng.randrange(1, 20), 4)
            at = rng.randrange(1, len(text) + 2)
            eng.insert(at, piece)
            text = text[:at - 1] + piece + text[at - 1:]
        elif kind == 1:
            j = rng.randrange(1, len(text) + 1)
            y = rng.randrange(1, min(25, len(text) - j + 1) + 1)
            at = rng.randrange(1, len(text) + 2)
            eng.insert_copy(j, y, at)
            text = text[:at - 1] + text[j - 1:j - 1 + y] + text[at - 1:]
        else:
            j = rng.randrange(1, len(text) + 1)
            y = rng.randrange(1, min(25, len(text) - j + 1) + 1)
            eng.delete(j, y)
            text = text[:j - 1] + text[j - 1 + y:]
        assert eng.expand() == text
        assert len(eng.store.pins()) == 1
    eng.store.audit()
    eng.verify()


def test_capacity_is_enforced_and_rolls_back(cfg):
    eng = Engine(EngineConfig(64, sig_limit=4096))
    with pytest.raises(ValueError):
        eng.set_text(b"x" * 65)
    assert eng.root is None
    assert len(eng.store) == 0

    eng.set_text(b"x" * 60)
    with pytest.raises(ValueError):
        eng.insert(1, b"y" * 10)
    assert eng.expand() == b"x" * 60
    eng.store.audit()


def test_cross_engine_lcp_lcs(cfg):
    rng = random.Random(5)
    a = rnd_text(rng, 300, 2)
    b = a[:137] + b"q" + a[138:]
    ea, eb = Engine(cfg), Engine(cfg)
    ea.set_text(a)
    eb.set_text(b)
    want_lcp = next((k for k in range(min(len(a), len(b)))
                     if a[k] != b[k]), min(len(a), len(b)))
    want_lcs = next((k for k in range(min(len(a), len(b)))
                     if a[-1 - k] != b[-1 - k]), min(len(a), len(b)))
    before = len(ea.store)
    assert ea.lcp(eb) == want_lcp
    assert ea.lcs(eb) == want_lcs
    assert len(ea.store) == before
    assert ea.lcp(ea) == len(a)


def test_dump_roundtrip_is_stable(cfg):
    eng = Engine(cfg)
    eng.set_text(EXAMPLE_TEXT)
    blob = eng.dump()
    twin = Engine.from_dump(blob)
    assert twin.expand() == EXAMPLE_TEXT
    assert twin.dump() == blob
    assert twin.config.max_text_len == cfg.max_text_len
    twin.verify()
    twin.insert(1, b"Z")
    assert twin.expand() == b"Z" + EXAMPLE_TEXT


def test_search_builds_the_plane_lazily(cfg):
    eng = Engine(cfg)
    eng.set_text(b"ab" * 210 + b"cab")
    assert eng.index is None
    assert eng.search(b"bc") == [420]
    assert eng.index is not None
    eng.insert(3, b"bc")
    assert eng.search(b"bc") == [3, 422]
    eng.disable_index()
    assert eng.index is None
    assert eng.search(b"bca") == [3, 422]
    eng.verify()


def test_empty_engine(cfg):
    eng = Engine(cfg)
    assert eng.expand() == b""
    assert eng.text_length == 0
    assert eng.stats() == {"N": 0, "w": 0}
    assert eng.verify()
    assert eng.search(b"a") == []
    with pytest.raises(ValueError):
        eng.lce(1, 1)
    with pytest.raises(ValueError):
        eng.delete(1, 1)
    eng.insert(1, b"go")
    assert eng.expand() == b"go"
    eng.set_text(b"")
    assert eng.root is None
    assert len(eng.store) == 0


def test_slp_import_and_export(cfg):
    eng = Engine(cfg)
    eng.set_from_slp(Slp(EXAMPLE_RULES), "gfact")
    assert eng.expand() == EXAMPLE_TEXT
    out = eng.to_slp()
    assert out.expand() == EXAMPLE_TEXT
