"""Longest-common-extension queries over stored signatures.

Every query here is read-only: it walks the grammar and never interns a
node.  A suffix (or prefix) of a stored string is first decomposed into
O(height) tiles of the form (signature, copies).  Matching then consumes
tiles greedily: equal signatures are consumed wholesale, runs over a
shared base consume min(exponents) copies in one step, and two unequal
tiles split one level at a time until the disagreement is pinned to a
pair of distinct character signatures.  Because equal substrings of one
store share their interior signatures, the split work concentrates at
the fringes and the tile streams re-synchronize quickly.
"""

from collections import deque

from .store import CHAR, PAIR, RUN


class VisitCounter:
    """Mutable node-visit tally shared across one query."""

    __slots__ = ("n",)

    def __init__(self):
        self.n = 0


def _chain(store, nd, counter):
    """Children of a block in order, unfolding the left-leaning chain."""
    kids = [nd.b]
    cur = nd.a
    while True:
        counter.n += 1
        n2 = store.node(cur)
        if n2.kind == PAIR and n2.lvl == nd.lvl:
            kids.append(n2.b)
            cur = n2.a
        else:
            kids.append(cur)
            break
    kids.reverse()
    return kids


def _merged(parts):
    out = deque()
    for sig, cnt in parts:
        if out and out[-1][0] == sig:
            out[-1] = (sig, out[-1][1] + cnt)
        else:
            out.append((sig, cnt))
    return out


def _suffix_tiles(store, root, pos, counter):
    """Tiles (sig, copies) covering val(root)[pos..], leftmost first."""
    node = store.node
    parts = []
    sig, off = root, pos - 1
    while True:
        counter.n += 1
        nd = node(sig)
        if off == 0:
            parts.append((sig, 1))
            break
        if nd.kind == RUN:
            bl = node(nd.a).length
            skip, rem = divmod(off, bl)
            if rem == 0:
                parts.append((nd.a, nd.b - skip))
                break
            rest = nd.b - skip - 1
            if rest > 0:
                parts.append((nd.a, rest))
            sig, off = nd.a, rem
        else:
            kids = _chain(store, nd, counter)
            i = 0
            while True:
                ln = node(kids[i]).length
                if off < ln:
                    break
                off -= ln
                i += 1
            for k in range(len(kids) - 1, i, -1):
                parts.append((kids[k], 1))
            sig = kids[i]
    parts.reverse()
    return _merged(parts)


def _prefix_tiles(store, root, pos, counter):
    """Tiles covering val(root)[..pos], rightmost first."""
    node = store.node
    parts = []
    sig, win = root, pos
    while True:
        counter.n += 1
        nd = node(sig)
        if win == nd.length:
            parts.append((sig, 1))
            break
        if nd.kind == RUN:
            bl = node(nd.a).length
            full, rem = divmod(win, bl)
            if rem == 0:
                parts.append((nd.a, full))
                break
            if full > 0:
                parts.append((nd.a, full))
            sig, win = nd.a, rem
        else:
            kids = _chain(store, nd, counter)
            i = 0
            while True:
                ln = node(kids[i]).length
                if win <= ln:
                    break
                win -= ln
                i += 1
            for k in range(i):
                parts.append((kids[k], 1))
            sig = kids[i]
    parts.reverse()
    return _merged(parts)


def _rank(nd):
    return 2 * nd.lvl + (1 if nd.stage == "W" else 0)


def _split_head(store, tiles, counter, backward):
    sig, cnt = tiles.popleft()
    counter.n += 1
    nd = store.node(sig)
    if cnt > 1:
        tiles.appendleft((sig, cnt - 1))
    if nd.kind == RUN:
        tiles.appendleft((nd.a, nd.b))
    else:
        kids = _chain(store, nd, counter)
        if not backward:
            kids = reversed(kids)
        for k in kids:
            tiles.appendleft((k, 1))


def _match(store, ta, tb, counter, backward, debug):
    node = store.node
    total = 0
    while ta and tb:
        counter.n += 1
        a, da = ta[0]
        b, db = tb[0]
        if a == b:
            m = da if da < db else db
            total += m * node(a).length
            if da == m:
                ta.popleft()
            else:
                ta[0] = (a, da - m)
            if db == m:
                tb.popleft()
            else:
                tb[0] = (b, db - m)
            continue
        na, nb = node(a), node(b)
        if na.kind == CHAR and nb.kind == CHAR:
            if debug:
                assert store.expand(a) != store.expand(b)
            break
        ra, rb = _rank(na), _rank(nb)
        if na.length > nb.length or (na.length == nb.length and ra >= rb):
            _split_head(store, ta, counter, backward)
        if nb.length > na.length or (nb.length == na.length and rb >= ra):
            _split_head(store, tb, counter, backward)
    return total


def lce(store, e1, e2, i, j, counter=None, debug=False):
    """Length of the longest common prefix of val(e1)[i..] and val(e2)[j..]."""
    c = counter if counter is not None else VisitCounter()
    n1 = store.node(e1).length
    n2 = store.node(e2).length
    if not 1 <= i <= n1:
        raise ValueError("start position out of range")
    if not 1 <= j <= n2:
        raise ValueError("start position out of range")
    ta = _suffix_tiles(store, e1, i, c)
    tb = _suffix_tiles(store, e2, j, c)
    return _match(store, ta, tb, c, False, debug)


def lce_backward(store, e1, e2, i, j, counter=None, debug=False):
    """Length of the longest common suffix of val(e1)[..i] and val(e2)[..j]."""
    c = counter if counter is not None else VisitCounter()
    n1 = store.node(e1).length
    n2 = store.node(e2).length
    if not 1 <= i <= n1:
        raise ValueError("end position out of range")
    if not 1 <= j <= n2:
        raise ValueError("end position out of range")
    ta = _prefix_tiles(store, e1, i, c)
    tb = _prefix_tiles(store, e2, j, c)
    return _match(store, ta, tb, c, True, debug)


def lcp_sig(store, e1, e2, counter=None):
    """Longest common prefix length of two stored strings."""
    return lce(store, e1, e2, 1, 1, counter)


def lcs_sig(store, e1, e2, counter=None):
    """Longest common suffix length of two stored strings."""
    n1 = store.node(e1).length
    n2 = store.node(e2).length
    return lce_backward(store, e1, e2, n1, n2, counter)
