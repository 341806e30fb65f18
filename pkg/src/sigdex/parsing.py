"""Deterministic block-boundary computation.

A level of the encoding is a sequence of signature ids in which adjacent
values differ.  This module decides, locally and deterministically, where
blocks of 2..4 symbols begin.  The same pipeline runs everywhere: full
builds, substring extraction and edit repair, so results agree wherever
the supplied context windows overlap.

Pipeline: a fixed number of bit-reduction passes shrink the color space to
{0..5}; three elimination passes bring it to {0,1,2}; strict local extrema
become block-start candidates; a left-to-right scan drops candidates that
immediately follow another block start; a final local repair splits a
trailing block of 5.

Locality contract: the bit at index i is a function of
vals[i - delta_l : i + delta_r + 1].  With true_start=False the first
delta_l bits are unspecified, with true_end=False the last delta_r bits
are; callers supply context and discard those positions.
"""


def _reduction_table():
    """color' = 2*l + bit for every (left, color) pair below 128.

    After one explicit reduction pass every color is below 128 (a 64-bit
    input id yields at most 2*63 + 1), so later passes can be plain table
    lookups.  The diagonal stays None: adjacent equal colors are
    impossible on a valid row and anything touching the entry fails fast.
    """
    table = []
    for left in range(128):
        row = [None] * 128
        for c in range(128):
            d = c ^ left
            if d:
                ell = (d & -d).bit_length() - 1
                row[c] = 2 * ell + ((c >> ell) & 1)
        table.append(row)
    return table


_REDUCE = _reduction_table()


def boundary_bits(vals, params, true_start=True, true_end=True):
    """Return a list of bools marking block starts in vals.

    vals must have no two equal adjacent entries.  With both flags set the
    bits tile the whole sequence into blocks of length 2..4 (one block of
    size n when n < 2).
    """
    n = len(vals)
    if n == 0:
        return []
    if n == 1:
        return [bool(true_start)]

    # Bit-reduction passes: replace each color with (2*l + bit), where l is
    # the lowest bit position in which it differs from its left neighbor.
    # The first position uses a virtual neighbor that is guaranteed to
    # differ.  Each pass preserves the adjacent-distinct property.  The
    # first pass sees arbitrary ids and computes bits explicitly; colors
    # then fit the precomputed table.
    cur = [0] * n
    left = 0 if vals[0] != 0 else 1
    for i in range(n):
        c = vals[i]
        d = c ^ left
        if d == 0:
            raise ValueError("adjacent equal values at %d" % i)
        ell = (d & -d).bit_length() - 1
        cur[i] = 2 * ell + ((c >> ell) & 1)
        left = c
    for _ in range(params.passes - 1):
        first = cur[0]
        virt = 0 if first != 0 else 1
        nxt = [_REDUCE[a][b] for a, b in zip(cur, cur[1:])]
        nxt.insert(0, _REDUCE[virt][first])
        cur = nxt

    # Eliminate colors 5, 4, 3: recolor each such position to the smallest
    # of {0,1,2} absent from both current neighbors.  Positions holding the
    # eliminated color are never adjacent, so one simultaneous pass per
    # color keeps neighbors stable.
    for v in (5, 4, 3):
        if v not in cur:
            continue
        nxt = cur[:]
        for i in range(n):
            if cur[i] == v:
                lnb = cur[i - 1] if i > 0 else -1
                rnb = cur[i + 1] if i + 1 < n else -1
                for c in (0, 1, 2):
                    if c != lnb and c != rnb:
                        nxt[i] = c
                        break
        cur = nxt

    # Block-start candidates: strict local maxima, plus strict local minima
    # whose left neighbor is not itself a strict local maximum.  End
    # positions are forced (start: candidate, end: not).
    cand = [False] * n
    for i in range(1, n - 1):
        a, b, c = cur[i - 1], cur[i], cur[i + 1]
        if a < b > c:
            cand[i] = True
        elif a > b < c:
            left_is_max = i >= 2 and cur[i - 2] < a > b
            if not left_is_max:
                cand[i] = True
    cand[0] = bool(true_start)
    if true_end:
        cand[n - 1] = False

    # Keep a candidate only when the previous position did not just start a
    # block.  Candidate runs in the interior have length at most 2, so any
    # garbage from an untrusted prefix dies out within two positions.
    bits = [False] * n
    prev = False
    for i in range(n):
        b = cand[i] and not prev
        bits[i] = b
        prev = b

    # A trailing block of 5 is the one shape the scan can leave at a true
    # end; split it 2+3.
    if true_end and n >= 5:
        j = -1
        for i in range(n - 1, -1, -1):
            if bits[i]:
                j = i
                break
        if j >= 0 and n - j == 5:
            bits[j + 2] = True

    return bits


def block_slices(bits, lo, hi):
    """Split [lo, hi) into blocks using precomputed bits.

    bits[lo] must be set; each returned (start, end) pair is one block.
    The caller guarantees that position hi either equals len(bits) or
    carries a set bit, so the final block closes at hi.
    """
    if lo >= hi:
        return []
    if not bits[lo]:
        raise ValueError("segment does not start at a block boundary")
    out = []
    start = lo
    for i in range(lo + 1, hi):
        if bits[i]:
            out.append((start, i))
            start = i
    out.append((start, hi))
    return out


def runs_of(seq):
    """Group equal adjacent entries: [(value, count), ...]."""
    out = []
    for v in seq:
        if out and out[-1][0] == v:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return [(v, c) for v, c in out]


def merge_runs(*chunks):
    """Concatenate run lists, merging equal bases across junctions.

    Each chunk is an iterable of (base, exponent); zero exponents are
    dropped.
    """
    out = []
    for chunk in chunks:
        for b, e in chunk:
            if e == 0:
                continue
            if e < 0:
                raise ValueError("negative run exponent")
            if out and out[-1][0] == b:
                out[-1][1] += e
            else:
                out.append([b, e])
    return [(b, e) for b, e in out]
