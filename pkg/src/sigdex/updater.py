"""Edits by re-parsing only the seams between reused pieces.

An edited text is described as a sequence of pieces, each carrying its
CommonSequence.  Per level, the new parse row is represented as explicit
seam segments (pow signatures) alternating with gaps (the untouched kept
zones of pieces).  Seam block boundaries are recomputed inside trusted
windows; gap interiors keep their block structure, which is why pieces
can be consumed without ever enumerating their middles.

A piece's edge trims are wide enough that the boundary decision at a
gap's first and last kept symbol sees only values the piece itself
supplies, so every seam opens and closes on a block boundary.  Both
facts are asserted, not assumed.
"""

from .common_seq import uniq_of_string, uniq_of_substring
from .parsing import block_slices, boundary_bits, merge_runs, runs_of
from .tower import fold_block, tower_from_pows

_E = 0   # explicit seam: list of pow signatures
_G = 1   # gap: a piece's kept zone at the current level


def _emit_pows(store, prefix, runs):
    out = list(prefix)
    out.extend(store.run(b, e) for b, e in runs)
    return out


def _assemble(store, events, level):
    """Lay out one row as seam/gap segments.

    events: ("shrink", symbols) contributes folded seam symbols,
    ("piece", cs) contributes a piece, which either dissolves its core
    (when it froze at this level) or opens a gap.
    """
    segs = []
    prefix = []
    runs = []
    for kind, obj in events:
        if kind == "shrink":
            runs = merge_runs(runs, runs_of(obj))
        elif obj.top_level == level:
            runs = merge_runs(runs, obj.core_runs)
        else:
            lv = obj.levels[level]
            runs = merge_runs(runs, [lv.first_run])
            segs.append((_E, _emit_pows(store, prefix, runs)
                         + list(lv.head_trim)))
            segs.append((_G, obj))
            prefix = list(lv.tail_trim)
            runs = [lv.last_run]
    segs.append((_E, _emit_pows(store, prefix, runs)))
    return segs


def _gather_left(segs, level, i, count):
    """Up to `count` row symbols immediately left of segment i."""
    out = []
    k = i - 1
    while k >= 0 and len(out) < count:
        kind, obj = segs[k]
        if kind == _E:
            syms = obj
            whole = True
        else:
            lv = obj.levels[level]
            syms = lv.kept_tail
            whole = lv.kept_len == len(syms)
        take = count - len(out)
        out = list(syms[-take:]) + out if take < len(syms) else \
            list(syms) + out
        if len(out) >= count or not whole:
            break
        k -= 1
    return out


def _gather_right(segs, level, i, count):
    """Up to `count` row symbols immediately right of segment i."""
    out = []
    k = i + 1
    while k < len(segs) and len(out) < count:
        kind, obj = segs[k]
        if kind == _E:
            syms = obj
            whole = True
        else:
            lv = obj.levels[level]
            syms = lv.kept_head
            whole = lv.kept_len == len(syms)
        take = count - len(out)
        out.extend(syms[:take])
        if len(out) >= count or not whole:
            break
        k += 1
    return out


def _level_step(store, segs, level, params):
    """Fold this row's seam segments and assemble the next row."""
    events = []
    last = len(segs) - 1
    for i, (kind, obj) in enumerate(segs):
        if kind == _G:
            events.append(("piece", obj))
            continue
        ctx_l = _gather_left(segs, level, i, params.delta_l)
        ctx_r = _gather_right(segs, level, i, params.delta_r + 1)
        ts = len(ctx_l) < params.delta_l
        te = len(ctx_r) < params.delta_r + 1
        full = ctx_l + list(obj) + ctx_r
        bits = boundary_bits(full, params, ts, te)
        s = len(ctx_l)
        e = s + len(obj)
        if not bits[s]:
            raise AssertionError("seam does not open on a boundary")
        if i < last and not bits[e]:
            raise AssertionError("seam does not close on a boundary")
        events.append(("shrink", [fold_block(store, full[a:b])
                                  for a, b in block_slices(bits, s, e)]))
    return _assemble(store, events, level + 1)


def rebuild(store, pieces, params):
    """Parse root for the concatenation of the pieces (None if empty)."""
    pieces = [p for p in pieces if p is not None and p.length > 0]
    if not pieces:
        return None
    segs = _assemble(store, [("piece", p) for p in pieces], 0)
    level = 0
    while True:
        if len(segs) == 1:
            row = segs[0][1]
            return tower_from_pows(store, row, params)
        segs = _level_step(store, segs, level, params)
        level += 1


def insert(store, root, text, i, params):
    """Root for T[..i-1] + text + T[i..]; does not release the old root."""
    n = store.node(root).length if root is not None else 0
    if not (1 <= i <= n + 1):
        raise ValueError("insert position out of bounds")
    if not text:
        return root
    pieces = []
    if i > 1:
        pieces.append(uniq_of_substring(store, root, 1, i - 1, params))
    pieces.append(uniq_of_string(store, text, params))
    if i <= n:
        pieces.append(uniq_of_substring(store, root, i, n - i + 1, params))
    return rebuild(store, pieces, params)


def insert_copy(store, root, j, y, i, params):
    """Root for T with T[j..j+y-1] inserted before position i.

    All positions refer to the text before the edit; the source range
    may overlap the insertion point.
    """
    n = store.node(root).length if root is not None else 0
    if not (1 <= j and j + y - 1 <= n and y >= 1):
        raise ValueError("copy source out of bounds")
    if not (1 <= i <= n + 1):
        raise ValueError("insert position out of bounds")
    pieces = []
    if i > 1:
        pieces.append(uniq_of_substring(store, root, 1, i - 1, params))
    pieces.append(uniq_of_substring(store, root, j, y, params))
    if i <= n:
        pieces.append(uniq_of_substring(store, root, i, n - i + 1, params))
    return rebuild(store, pieces, params)


def delete(store, root, j, y, params):
    """Root for T with T[j..j+y-1] removed (None when all is removed)."""
    n = store.node(root).length if root is not None else 0
    if not (1 <= j and y >= 1 and j + y - 1 <= n):
        raise ValueError("delete range out of bounds")
    pieces = []
    if j > 1:
        pieces.append(uniq_of_substring(store, root, 1, j - 1, params))
    if j + y <= n:
        pieces.append(uniq_of_substring(store, root, j + y,
                                        n - j - y + 1, params))
    return rebuild(store, pieces, params)
