"""Shared corpus builders for the test suite.

Everything is seeded and deterministic; no test depends on wall-clock or
dict iteration order.
"""

import random

import pytest

from sigdex.params import EngineConfig
from sigdex.store import SigStore


def rnd_text(rng, n, sigma=4):
    """Random byte string over an alphabet of sigma letters from 'a'."""
    return bytes(rng.randrange(sigma) + 97 for _ in range(n))


def fibonacci_word(n):
    """Prefix of the infinite Fibonacci word over {a, b}."""
    a, b = b"a", b"ab"
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def thue_morse(n):
    """Prefix of the Thue-Morse word over {a, b}."""
    out = bytearray()
    i = 0
    while len(out) < n:
        out.append(98 if bin(i).count("1") % 2 else 97)
        i += 1
    return bytes(out)


def structured_family(n):
    """A spread of repetitive and aperiodic texts of length about n."""
    texts = [
        b"a" * n,
        b"ab" * (n // 2) + b"a" * (n % 2),
        b"aab" * (n // 3) + b"a" * (n % 3),
        fibonacci_word(n),
        thue_morse(n),
    ]
    rng = random.Random(0xC0FFEE + n)
    texts.append(rnd_text(rng, n, 2))
    texts.append(rnd_text(rng, n, 16))
    return [t for t in texts if t]


def canonical_form(store, root):
    """Store-independent shape of the grammar under root.

    Nodes are renumbered in first-visit depth-first order; the result is a
    tuple of per-node definitions, equal exactly when two grammars are
    identical up to signature renaming.
    """
    if root is None:
        return ()
    number = {}
    defs = []
    stack = [root]
    while stack:
        sig = stack.pop()
        if sig in number:
            continue
        number[sig] = len(number) + 1
        n = store.node(sig)
        if n.kind == "P":
            stack.append(n.b)
            stack.append(n.a)
        elif n.kind == "R":
            stack.append(n.a)
    order = sorted(number, key=lambda s: number[s])
    for sig in order:
        n = store.node(sig)
        if n.kind == "C":
            defs.append(("C", n.a, n.lvl, n.stage))
        elif n.kind == "P":
            defs.append(("P", number[n.a], number[n.b], n.lvl, n.stage))
        else:
            defs.append(("R", number[n.a], n.b, n.lvl, n.stage))
    return tuple(defs)


def rnd_slp(rng, n_pairs, cap=1 << 12):
    """Random valid SLP: some pair rules over a small alphabet, then
    wrapper rules until every variable is reachable from the start."""
    from sigdex.slp import Slp

    letters = rng.sample(range(97, 123), rng.randrange(1, 5))
    rules = [("C", a) for a in letters]
    lens = [1] * len(letters)
    bodies = set(rules)
    for _ in range(n_pairs):
        for _ in range(20):
            l = rng.randrange(1, len(rules) + 1)
            r = rng.randrange(1, len(rules) + 1)
            if lens[l - 1] + lens[r - 1] > cap:
                continue
            body = ("P", l, r)
            if body in bodies:
                continue
            rules.append(body)
            lens.append(lens[l - 1] + lens[r - 1])
            bodies.add(body)
            break
    while True:
        reach = set()
        stack = [len(rules)]
        while stack:
            x = stack.pop()
            if x in reach:
                continue
            reach.add(x)
            r = rules[x - 1]
            if r[0] == "P":
                stack.extend((r[1], r[2]))
        orphans = [i for i in range(1, len(rules) + 1) if i not in reach]
        if not orphans:
            break
        body = ("P", len(rules), orphans[-1])
        rules.append(body)
        lens.append(lens[body[1] - 1] + lens[body[2] - 1])
    return Slp(rules)


@pytest.fixture
def cfg():
    return EngineConfig(max_text_len=1 << 16)


@pytest.fixture
def store(cfg):
    return SigStore(cfg.params.universe)
