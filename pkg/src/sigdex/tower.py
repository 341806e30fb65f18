"""Level-by-level construction over explicit symbol lists.

The encoding of a text alternates two kinds of levels: run levels, where
maximal runs of equal symbols collapse into run nodes, and block levels,
where blocks of 2..4 run nodes fold into left-leaning pair chains.  The
functions here drive that loop naively over fully materialized lists;
they are the reference everything incremental is compared against, and
they also finish the top of every incremental build once no implicit
regions remain.
"""

from .parsing import block_slices, boundary_bits, runs_of


def fold_block(store, syms):
    """Intern the left-leaning pair chain for one block of 2..4 symbols."""
    if not 2 <= len(syms) <= 4:
        raise ValueError("block size %d out of range" % len(syms))
    s = store.pair(syms[0], syms[1])
    for c in syms[2:]:
        s = store.pair(s, c)
    return s


def pow_symbols(store, runs):
    """Intern one run node per (base, exponent) entry."""
    return [store.run(b, e) for b, e in runs]


def shrink_next(store, pow_syms, params):
    """Block a full run-level sequence into the next block-level symbols."""
    bits = boundary_bits(pow_syms, params)
    return [fold_block(store, pow_syms[lo:hi])
            for lo, hi in block_slices(bits, 0, len(pow_syms))]


def tower_from_pows(store, pow_syms, params):
    """Iterate run/block levels over an explicit list down to one root."""
    cur = list(pow_syms)
    while len(cur) > 1:
        sh = shrink_next(store, cur, params)
        cur = pow_symbols(store, runs_of(sh))
    return cur[0]


def tower_from_runs(store, runs, params):
    """Like tower_from_pows but starting from raw (base, exp) runs."""
    return tower_from_pows(store, pow_symbols(store, runs), params)


def tower_from_text(store, text, params):
    """Reference constructor: full build from bytes. None for empty text."""
    if len(text) == 0:
        return None
    sh0 = [store.char(b) for b in text]
    return tower_from_pows(store, pow_symbols(store, runs_of(sh0)), params)
