"""Whole-text builders for the signature encoding.

Two routes to the same stored string.  The chunked builder feeds
fixed-size blocks of the text through the incremental inserter, so it
exercises exactly the code path live edits use and keeps only one chunk
of raw text plus the compressed tree at any moment.  The
level-synchronous builder materializes each level as one row of run
symbols, computes every block boundary of the row at once, and interns
each level's fresh signatures in bucket-sorted key order, giving linear
total work and an id layout independent of left-to-right discovery
order.  In a shared store both routes dedupe onto the same nodes and
return the identical root.
"""

import math

from .parsing import block_slices, boundary_bits, runs_of
from .tower import fold_block
from .updater import insert


def chunk_size(n, params):
    """Chunk length for the chunked builder, floored at 64."""
    if n < 2:
        return 64
    return max(64, math.ceil(math.log2(n) * params.log_star_u))


def encode_text(store, text, params):
    """Build the signature of text by inserting chunks left to right.

    Returns the root signature, unpinned; the caller owns pinning.
    Intermediate roots are garbage collected as the build advances.
    """
    if len(text) == 0:
        raise ValueError("cannot encode an empty text")
    b = chunk_size(len(text), params)
    root = None
    done = 0
    for lo in range(0, len(text), b):
        piece = text[lo:lo + b]
        with store.track() as temp:
            new = insert(store, root, piece, done + 1, params)
            store.pin(new)
        if root is not None:
            store.unpin(root)
            store.remove_useless(root)
        store.sweep(temp)
        root = new
        done += len(piece)
    store.unpin(root)
    return root


def _char_runs(text):
    runs = []
    i = 0
    n = len(text)
    while i < n:
        j = i + 1
        while j < n and text[j] == text[i]:
            j += 1
        runs.append((text[i], j - i))
        i = j
    return runs


def encode_text_linear(store, text, params, stats=None):
    """Build the signature of text one full level at a time.

    Fresh signatures of a level are interned in sorted key order: blocks
    by (length, symbol offsets from the level minimum), runs by (base
    offset, exponent).  Duplicates dedupe, so in a store that already
    holds the text this allocates nothing and returns the same root.

    Returns the root signature, unpinned.  When stats is a dict it
    receives peak_row (widest row of run symbols) and levels.
    """
    if len(text) == 0:
        raise ValueError("cannot encode an empty text")
    byte_runs = _char_runs(text)
    chars = {b: 0 for b, _ in byte_runs}
    for b in sorted(chars):
        chars[b] = store.char(b)
    runs = [(chars[b], e) for b, e in byte_runs]
    rbase = min(b for b, _ in runs)
    made = {}
    for be in sorted(set(runs), key=lambda be: (be[0] - rbase, be[1])):
        made[be] = store.run(be[0], be[1])
    cur = [made[be] for be in runs]
    peak = len(cur)
    levels = 0
    while len(cur) > 1:
        bits = boundary_bits(cur, params)
        blocks = [tuple(cur[lo:hi])
                  for lo, hi in block_slices(bits, 0, len(cur))]
        low = min(min(blk) for blk in blocks)
        fold = {}
        for blk in sorted(set(blocks),
                          key=lambda blk: (len(blk),)
                          + tuple(s - low for s in blk)):
            fold[blk] = fold_block(store, list(blk))
        sh = [fold[blk] for blk in blocks]
        runs = runs_of(sh)
        rbase = min(b for b, _ in runs)
        made = {}
        for be in sorted(set(runs), key=lambda be: (be[0] - rbase, be[1])):
            made[be] = store.run(be[0], be[1])
        cur = [made[be] for be in runs]
        peak = max(peak, len(cur))
        levels += 1
    if stats is not None:
        stats["peak_row"] = peak
        stats["levels"] = levels
    return cur[0]
