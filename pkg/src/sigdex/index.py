"""Pattern matching over the live grammar: a plane of split points.

Every pair node and every run node of the store contributes one point.
A pair (left, right) splits its expansion between the two children; a
run of d copies splits after the first copy, leaving the remaining
d - 1 copies on the right.  An occurrence of a pattern that is not
contained in one child of some node must straddle the split of exactly
one node, its lowest cover, so pattern search reduces to rectangle
reporting: rank points by the reversed left string on one axis and by
the right string on the other, then for each candidate cut of the
pattern ask for the points whose left side ends with the prefix and
whose right side starts with the suffix.

The plane follows edits.  Store hooks add and drop points as grammar
nodes appear and disappear, so after any sequence of edits the plane
is the one a fresh build would produce.  Queries intern the pattern's
own scratch nodes temporarily; the hooks are paused for those and the
scratch is swept before returning, leaving the store untouched.

Strings are never materialized beyond short cached prefixes.  An x
entry is the left signature (ranked by its reversed expansion), a y
entry is a (base, count) descriptor whose string is count copies of
the base's expansion, and every comparison falls back from cached
bytes to extension queries on the grammar.  Points live in a
weight-balanced tree over the x order whose nodes carry y-sorted
subtree lists, so a rectangle decomposes into a few sorted lists, each
binary-searched for its y range.
"""

import math
from collections import namedtuple
from contextlib import contextmanager
from functools import cmp_to_key
from itertools import groupby

from .common_seq import uniq_of_string
from .queries import lce, lce_backward, lcs_sig
from .store import CHAR, PAIR, RUN
from .tower import tower_from_text

_PRE = 48

PrimaryOcc = namedtuple("PrimaryOcc", ["sig", "offset"])


# ----------------------------------------------------------------------
# powered-string descriptors: (base signature, copy count)

def _desc_len(store, d):
    return store.node(d[0]).length * d[1]


def _desc_byte(store, d, pos):
    """1-indexed byte of the powered string."""
    base = d[0]
    bl = store.node(base).length
    return store.expand(base, (pos - 1) % bl + 1, 1)[0]


def _desc_prefix(store, d):
    """First bytes of the powered string, up to the cache cap."""
    base, cnt = d
    if cnt == 0:
        return b""
    bl = store.node(base).length
    n = min(_PRE, bl * cnt)
    if bl >= n:
        return store.expand_prefix(base, n)
    whole = store.expand_prefix(base, bl)
    return (whole * (n // bl + 1))[:n]


def _shift_period_break(store, base, r, counter=None):
    """Agreement length of the base's power stream with its r-shift.

    Compares val(base) repeated forever against the same stream shifted
    r places.  Agreement across one full copy forces agreement forever
    (the shift permutes residues, so one period pins every residue
    class); that case returns None.  Otherwise the exact agreement
    length, which is then below one copy length.
    """
    bl = store.node(base).length
    total = 0
    while total < bl:
        ci = total % bl + 1
        cj = (total + r) % bl + 1
        h = lce(store, base, base, ci, cj, counter)
        room = min(bl - ci + 1, bl - cj + 1)
        if h < room:
            return total + h
        total += room
    return None


def _desc_lcp(store, d1, d2, counter=None):
    """Longest common prefix of two powered strings.

    A handful of extension queries: one head-to-head comparison, and
    when the shorter base is a proper prefix of the longer one, a
    self-comparison of the longer base plus a bounded periodicity
    check to resolve how far the two power streams keep agreeing.
    """
    (u, c1), (v, c2) = d1, d2
    if c1 == 0 or c2 == 0:
        return 0
    lu = store.node(u).length
    lv = store.node(v).length
    cap = min(lu * c1, lv * c2)
    if u == v:
        return cap
    if lu > lv:
        u, v, lu, lv = v, u, lv, lu
    h = lce(store, u, v, 1, 1, counter)
    if h >= cap:
        return cap
    if h < lu:
        return h
    if lu == lv:
        return cap
    # the short base is a proper prefix of the long one: find where the
    # long base stops following copies of the short one
    m = lce(store, v, v, 1, lu + 1, counter)
    q = lu + m
    if q < lv:
        return min(q, cap)
    r = lv % lu
    if r == 0:
        return cap
    # the long base is an incomplete stack of short copies: past one
    # long copy the alignment is shifted by r, and the two streams
    # agree for exactly that shift's agreement length
    z = _shift_period_break(store, u, r, counter)
    if z is None:
        return cap
    return min(lv + z, cap)


def _bisect_cmp(arr, item, cmp):
    """Insertion index of item under a strict total comparison."""
    lo, hi = 0, len(arr)
    while lo < hi:
        mid = (lo + hi) // 2
        if cmp(arr[mid], item) < 0:
            lo = mid + 1
        else:
            hi = mid
    return lo


# ----------------------------------------------------------------------
# ordered axis: distinct entries with refcounts

class _Axis:
    """Sorted distinct entries, each counted once per owning point."""

    __slots__ = ("order", "count", "cmp")

    def __init__(self, cmp):
        self.order = []
        self.count = {}
        self.cmp = cmp

    def add(self, entry):
        c = self.count.get(entry)
        if c:
            self.count[entry] = c + 1
            return
        self.count[entry] = 1
        self.order.insert(_bisect_cmp(self.order, entry, self.cmp), entry)

    def remove(self, entry):
        c = self.count[entry]
        if c > 1:
            self.count[entry] = c - 1
            return
        del self.count[entry]
        at = _bisect_cmp(self.order, entry, self.cmp)
        assert self.order[at] == entry
        self.order.pop(at)

    def load(self, entries, pre_key):
        """Bulk-build from an iterable of entries (with repeats)."""
        for e in entries:
            self.count[e] = self.count.get(e, 0) + 1
        distinct = sorted(self.count, key=pre_key)
        self.order = []
        for _, grp in groupby(distinct, key=pre_key):
            g = list(grp)
            if len(g) > 1:
                g.sort(key=cmp_to_key(self.cmp))
            self.order.extend(g)

    def block(self, classify):
        """Boundary entries of the contiguous classify()==0 block.

        classify maps an entry to -1 / 0 / +1 and must be monotone over
        the axis order.  Returns (low entry, high entry), or None when
        no entry classifies as 0.
        """
        arr = self.order
        lo, hi = 0, len(arr)
        while lo < hi:
            mid = (lo + hi) // 2
            if classify(arr[mid]) < 0:
                lo = mid + 1
            else:
                hi = mid
        start = lo
        hi = len(arr)
        while lo < hi:
            mid = (lo + hi) // 2
            if classify(arr[mid]) <= 0:
                lo = mid + 1
            else:
                hi = mid
        if start >= lo:
            return None
        return arr[start], arr[lo - 1]


# ----------------------------------------------------------------------
# the plane: weight-balanced tree over x with y-sorted subtree lists

_ALPHA = 0.70


class _PNode:
    __slots__ = ("owner", "left", "right", "ys")

    def __init__(self, owner):
        self.owner = owner
        self.left = None
        self.right = None
        self.ys = [owner]


def _size(nd):
    return len(nd.ys) if nd is not None else 0


class _Plane:
    """Points in x order; every node lists its subtree in y order.

    No rotations: inserts rebuild the highest weight-unbalanced
    ancestor, deletes splice leaves and half-leaves and rebuild the
    subtree of an inner victim.  Rebuilding re-merges the y lists, so
    both keys only ever compare live points.
    """

    __slots__ = ("root", "cmp_x", "cmp_y")

    def __init__(self, cmp_x, cmp_y):
        self.root = None
        self.cmp_x = cmp_x
        self.cmp_y = cmp_y

    # -- construction

    def _merge_ys(self, a, b, owner):
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            if self.cmp_y(a[i], b[j]) < 0:
                out.append(a[i])
                i += 1
            else:
                out.append(b[j])
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        out.insert(_bisect_cmp(out, owner, self.cmp_y), owner)
        return out

    def _build(self, xs, lo, hi):
        if lo >= hi:
            return None
        mid = (lo + hi) // 2
        nd = _PNode(xs[mid])
        nd.left = self._build(xs, lo, mid)
        nd.right = self._build(xs, mid + 1, hi)
        if nd.left is not None or nd.right is not None:
            nd.ys = self._merge_ys(
                nd.left.ys if nd.left else [],
                nd.right.ys if nd.right else [],
                nd.owner)
        return nd

    def load(self, owners_in_x_order):
        self.root = self._build(owners_in_x_order, 0,
                                len(owners_in_x_order))

    def _inorder(self, nd, out):
        if nd is None:
            return
        self._inorder(nd.left, out)
        out.append(nd.owner)
        self._inorder(nd.right, out)

    def owners(self):
        out = []
        self._inorder(self.root, out)
        return out

    def _rebuilt(self, nd, drop=None):
        xs = []
        self._inorder(nd, xs)
        if drop is not None:
            xs.remove(drop)
        return self._build(xs, 0, len(xs))

    # -- updates

    def insert(self, owner):
        if self.root is None:
            self.root = _PNode(owner)
            return
        path = []
        nd = self.root
        while nd is not None:
            path.append(nd)
            nd = nd.left if self.cmp_x(owner, nd.owner) < 0 else nd.right
        leaf = _PNode(owner)
        parent = path[-1]
        if self.cmp_x(owner, parent.owner) < 0:
            parent.left = leaf
        else:
            parent.right = leaf
        for nd in path:
            nd.ys.insert(_bisect_cmp(nd.ys, owner, self.cmp_y), owner)
        # rebuild the highest ancestor thrown out of weight balance
        for at, nd in enumerate(path):
            if _size(nd) >= 8 and max(_size(nd.left), _size(nd.right)) \
                    > _ALPHA * _size(nd):
                fresh = self._rebuilt(nd)
                if at == 0:
                    self.root = fresh
                else:
                    up = path[at - 1]
                    if up.left is nd:
                        up.left = fresh
                    else:
                        up.right = fresh
                return

    def delete(self, owner):
        path = []
        nd = self.root
        while nd is not None and nd.owner != owner:
            path.append(nd)
            nd = nd.left if self.cmp_x(owner, nd.owner) < 0 else nd.right
        if nd is None:
            raise RuntimeError("plane point missing on delete")
        for up in path:
            up.ys.pop(_bisect_cmp(up.ys, owner, self.cmp_y))
        if nd.left is None or nd.right is None:
            fresh = nd.left if nd.right is None else nd.right
        else:
            fresh = self._rebuilt(nd, drop=owner)
        if not path:
            self.root = fresh
        elif path[-1].left is nd:
            path[-1].left = fresh
        else:
            path[-1].right = fresh

    # -- queries

    def report(self, x_ge_lo, x_le_hi, y_first, y_after):
        """Owners inside the rectangle, given boundary predicates.

        x_ge_lo / x_le_hi test one owner against the x bounds; y_first
        and y_after binary-search a y-sorted owner list for the first
        index inside and the first index past the y range.
        """
        out = []

        def slice_ys(ys):
            lo = y_first(ys)
            hi = y_after(ys)
            if lo < hi:
                out.extend(ys[lo:hi])

        def walk(nd, lo_known, hi_known):
            if nd is None:
                return
            if lo_known and hi_known:
                slice_ys(nd.ys)
                return
            ge = lo_known or x_ge_lo(nd.owner)
            le = hi_known or x_le_hi(nd.owner)
            if ge and le:
                one = [nd.owner]
                if y_first(one) == 0 and y_after(one) == 1:
                    out.append(nd.owner)
            if ge:
                walk(nd.left, lo_known, hi_known or le)
            if le:
                walk(nd.right, lo_known or ge, hi_known)

        walk(self.root, False, False)
        return out

    # -- integrity

    def check(self, expected_owners):
        """Assert shape, order and y lists; expected_owners is a set."""
        seen = self.owners()
        assert len(seen) == len(expected_owners)
        assert set(seen) == expected_owners
        for a, b in zip(seen, seen[1:]):
            assert self.cmp_x(a, b) < 0

        def walk(nd):
            if nd is None:
                return []
            sub = walk(nd.left) + [nd.owner] + walk(nd.right)
            ys = nd.ys
            assert sorted(ys) == sorted(sub)
            for a, b in zip(ys, ys[1:]):
                assert self.cmp_y(a, b) < 0
            return sub

        walk(self.root)


# ----------------------------------------------------------------------
# the index

class IndexPlane:
    """Search index over one store, maintained under edits.

    Attaches to the store's node hooks on construction; detach with
    close().  Points are keyed by the owning signature in `points`,
    mapping to (left signature, right descriptor).
    """

    def __init__(self, store, params):
        self.store = store
        self.params = params
        self.points = {}
        self.x_axis = _Axis(self._cmp_x_total)
        self.y_axis = _Axis(self._cmp_y_total)
        self.plane = _Plane(self._cmp_point_x, self._cmp_point_y)
        self.stats = {
            "points": 0,
            "range_queries": 0,
            "points_reported": 0,
            "pattern_builds": 0,
        }
        self._pause = 0
        self._scratch = set()
        self._load()
        store.on_create.append(self.on_signature_added)
        store.on_remove.append(self.on_signature_removed)

    def close(self):
        """Detach from the store; the plane stops tracking edits."""
        self.store.on_create.remove(self.on_signature_added)
        self.store.on_remove.remove(self.on_signature_removed)

    # ------------------------------------------------------------------
    # points

    @staticmethod
    def _point_of(node):
        if node.kind == PAIR:
            return node.a, (node.b, 1)
        return node.a, (node.a, node.b - 1)

    def _load(self):
        st = self.store
        for sig, node in st.iter_nodes():
            if node.kind != CHAR:
                self.points[sig] = self._point_of(node)
        self.stats["points"] = len(self.points)
        pts = self.points
        self.x_axis.load(
            (p[0] for p in pts.values()),
            lambda s: st.expand_suffix(s, _PRE)[::-1])
        self.y_axis.load(
            (p[1] for p in pts.values()),
            lambda d: _desc_prefix(st, d))
        owners = sorted(
            pts, key=lambda o: st.expand_suffix(pts[o][0], _PRE)[::-1])
        out = []
        for _, grp in groupby(
                owners,
                key=lambda o: st.expand_suffix(pts[o][0], _PRE)[::-1]):
            g = list(grp)
            if len(g) > 1:
                g.sort(key=cmp_to_key(self._cmp_point_x))
            out.extend(g)
        self.plane.load(out)

    def on_signature_added(self, node):
        if node.kind == CHAR:
            return
        if self._pause:
            self._scratch.add(node.sig)
            return
        pt = self._point_of(node)
        self.points[node.sig] = pt
        self.stats["points"] += 1
        self.x_axis.add(pt[0])
        self.y_axis.add(pt[1])
        self.plane.insert(node.sig)

    def on_signature_removed(self, node):
        if node.kind == CHAR:
            return
        if node.sig in self._scratch:
            self._scratch.discard(node.sig)
            return
        pt = self.points.get(node.sig)
        if pt is None:
            raise RuntimeError("plane point missing on delete")
        self.plane.delete(node.sig)
        self.x_axis.remove(pt[0])
        self.y_axis.remove(pt[1])
        del self.points[node.sig]
        self.stats["points"] -= 1

    # ------------------------------------------------------------------
    # comparisons (value order, then deterministic ties)

    def _cmp_x(self, s1, s2):
        """Order of the reversed expansions of two signatures."""
        if s1 == s2:
            return 0
        st = self.store
        a = st.expand_suffix(s1, _PRE)[::-1]
        b = st.expand_suffix(s2, _PRE)[::-1]
        if a != b:
            k = min(len(a), len(b))
            if a[:k] != b[:k]:
                return -1 if a[:k] < b[:k] else 1
            return -1 if len(a) < len(b) else 1
        if len(a) < _PRE:
            return 0
        n1 = st.node(s1).length
        n2 = st.node(s2).length
        l = lcs_sig(st, s1, s2)
        if l >= min(n1, n2):
            return (n1 > n2) - (n1 < n2)
        c1 = st.expand(s1, n1 - l, 1)
        c2 = st.expand(s2, n2 - l, 1)
        return -1 if c1 < c2 else 1

    def _cmp_y(self, d1, d2):
        """Order of the powered strings behind two descriptors."""
        if d1 == d2:
            return 0
        st = self.store
        a = _desc_prefix(st, d1)
        b = _desc_prefix(st, d2)
        if a != b:
            k = min(len(a), len(b))
            if a[:k] != b[:k]:
                return -1 if a[:k] < b[:k] else 1
            return -1 if len(a) < len(b) else 1
        if len(a) < _PRE:
            return 0
        n1 = _desc_len(st, d1)
        n2 = _desc_len(st, d2)
        l = _desc_lcp(st, d1, d2)
        if l >= min(n1, n2):
            return (n1 > n2) - (n1 < n2)
        c1 = _desc_byte(st, d1, l + 1)
        c2 = _desc_byte(st, d2, l + 1)
        return (c1 > c2) - (c1 < c2)

    def _cmp_x_total(self, s1, s2):
        c = self._cmp_x(s1, s2)
        if c:
            return c
        return (s1 > s2) - (s1 < s2)

    def _cmp_y_total(self, d1, d2):
        c = self._cmp_y(d1, d2)
        if c:
            return c
        return (d1 > d2) - (d1 < d2)

    def _cmp_point_x(self, o1, o2):
        if o1 == o2:
            return 0
        c = self._cmp_x_total(self.points[o1][0], self.points[o2][0])
        if c:
            return c
        return (o1 > o2) - (o1 < o2)

    def _cmp_point_y(self, o1, o2):
        if o1 == o2:
            return 0
        c = self._cmp_y_total(self.points[o1][1], self.points[o2][1])
        if c:
            return c
        return (o1 > o2) - (o1 < o2)

    # ------------------------------------------------------------------
    # pattern scratch

    @contextmanager
    def _borrow(self, pattern):
        """Intern the pattern, yield its root, and undo everything.

        Nodes created here are invisible to the plane and swept on
        exit, so queries leave the store and the index unchanged.
        """
        self.stats["pattern_builds"] += 1
        self._pause += 1
        try:
            with self.store.track() as made:
                root = tower_from_text(self.store, pattern, self.params)
                try:
                    yield root
                finally:
                    self.store.sweep(made)
        finally:
            self._pause -= 1
            if not self._pause:
                alive = [s for s in self._scratch if s in self.store]
                assert not alive, "pattern scratch outlived its query"
                self._scratch.clear()

    def _splits(self, pattern):
        """Pattern cuts that can meet the split of a lowest cover.

        The cuts are the boundaries between maximal powers of the
        pattern's position-independent parse; a one-letter pattern
        collapses to the single cut after its first character.
        """
        if len(set(pattern)) == 1:
            return [1]
        st = self.store
        runs = uniq_of_string(st, pattern, self.params).pow_runs(st)
        cap = self.params.log_star_u * math.log2(len(pattern)) + 1
        assert len(runs) <= 16 * cap
        out = []
        cum = 0
        for (base, cnt), (nxt, _) in zip(runs, runs[1:]):
            assert base != nxt
            cum += st.node(base).length * cnt
            out.append(cum)
        return out

    # ------------------------------------------------------------------
    # classification of axis entries against a cut pattern

    def _class_x(self, root, pattern, j, sig):
        """Entry vs the block of strings ending with pattern[:j]."""
        st = self.store
        ns = st.node(sig).length
        l = lce_backward(st, root, sig, j, ns)
        if l == j:
            return 0
        if l == ns:
            return -1
        eb = st.expand(sig, ns - l, 1)[0]
        qb = pattern[j - l - 1]
        return (eb > qb) - (eb < qb)

    def _class_y(self, root, pattern, j, d):
        """Entry vs the block of strings starting with pattern[j:]."""
        st = self.store
        n = len(pattern)
        want = n - j
        have = _desc_len(st, d)
        l = self._probe_y(root, n, j, d)
        if l == want:
            return 0
        if l == have:
            return -1
        eb = _desc_byte(st, d, l + 1)
        qb = pattern[j + l]
        return (eb > qb) - (eb < qb)

    def _probe_y(self, root, n, j, d):
        """lcp of the pattern's tail past j and a powered string."""
        st = self.store
        base, cnt = d
        if cnt == 0:
            return 0
        bl = st.node(base).length
        cap = min(n - j, bl * cnt)
        h = lce(st, root, base, j + 1, 1)
        if h >= cap or h < bl:
            return min(h, cap)
        # one whole copy matched and the tail goes on: measure how far
        # the tail keeps its own copy-length periodicity
        m = lce(st, root, root, j + 1, j + 1 + bl)
        return min(bl + m, cap)

    # ------------------------------------------------------------------
    # queries

    def pattern_ranges(self, pattern, j):
        """Axis ranges of the points split exactly around pattern[:j].

        Returns ((x low, x high), (y low, y high)) of axis entries
        whose reversed-left strings start with the reversed prefix and
        whose right strings start with the tail, or None when either
        range is empty.  1 <= j < len(pattern).
        """
        pattern = bytes(pattern)
        if not 1 <= j < len(pattern):
            raise ValueError("cut must be inside the pattern")
        with self._borrow(pattern) as root:
            return self._ranges(root, pattern, j)

    def _ranges(self, root, pattern, j):
        xb = self.x_axis.block(
            lambda s: self._class_x(root, pattern, j, s))
        if xb is None:
            return None
        yb = self.y_axis.block(
            lambda d: self._class_y(root, pattern, j, d))
        if yb is None:
            return None
        return xb, yb

    def report(self, x1, x2, y1, y2):
        """Owners of the points inside [x1, x2] x [y1, y2].

        Bounds are axis entries; points whose coordinates tie a bound
        by string value are included.  Returns a set of signatures.
        """
        pts = self.points

        def x_ge_lo(o):
            return self._cmp_x(pts[o][0], x1) >= 0

        def x_le_hi(o):
            return self._cmp_x(pts[o][0], x2) <= 0

        def y_first(ys):
            lo, hi = 0, len(ys)
            while lo < hi:
                mid = (lo + hi) // 2
                if self._cmp_y(pts[ys[mid]][1], y1) < 0:
                    lo = mid + 1
                else:
                    hi = mid
            return lo

        def y_after(ys):
            lo, hi = 0, len(ys)
            while lo < hi:
                mid = (lo + hi) // 2
                if self._cmp_y(pts[ys[mid]][1], y2) <= 0:
                    lo = mid + 1
                else:
                    hi = mid
            return lo

        found = self.plane.report(x_ge_lo, x_le_hi, y_first, y_after)
        self.stats["range_queries"] += 1
        self.stats["points_reported"] += len(found)
        return set(found)

    def primary_occurrences(self, pattern):
        """Lowest-cover occurrences as (signature, offset) pairs.

        The offset is 1-indexed into the owning node's expansion.  A
        one-letter pattern has no straddling occurrence and yields the
        empty set without touching the plane.
        """
        pattern = bytes(pattern)
        if not pattern:
            raise ValueError("empty pattern")
        if len(pattern) == 1:
            return set()
        with self._borrow(pattern) as root:
            return self._primaries(root, pattern)

    def _primaries(self, root, pattern):
        st = self.store
        out = set()
        for j in self._splits(pattern):
            rng = self._ranges(root, pattern, j)
            if rng is None:
                continue
            (x1, x2), (y1, y2) = rng
            for owner in self.report(x1, x2, y1, y2):
                left_len = st.node(self.points[owner][0]).length
                out.add(PrimaryOcc(owner, left_len - j + 1))
        return out

    def occurrences(self, pattern, root):
        """Sorted positions of the pattern under the given root.

        Every primary occurrence is projected through all occurrences
        of its owning node; on run owners the match also slides by
        whole copy lengths while it fits.
        """
        pattern = bytes(pattern)
        if not pattern:
            raise ValueError("empty pattern")
        if root is None or self.store.node(root).length < len(pattern):
            return []
        st = self.store
        n = len(pattern)
        out = []
        if n == 1:
            with self._borrow(pattern):
                hit = st.char(pattern[0])
                out.extend(self._positions(hit, root))
            return sorted(out)
        with self._borrow(pattern) as proot:
            for sig, off in self._primaries(proot, pattern):
                node = st.node(sig)
                if node.kind == RUN:
                    period = st.node(node.a).length
                    extra = (node.length - (off + n - 1)) // period
                else:
                    period, extra = 0, 0
                for at in self._positions(sig, root):
                    first = at + off - 1
                    out.append(first)
                    for c in range(1, extra + 1):
                        out.append(first + c * period)
        return sorted(out)

    def _positions(self, sig, root):
        """Yield the 1-indexed start of every occurrence of a node."""
        if sig == root:
            yield 1
            return
        st = self.store
        node = st.node(sig)
        for par in node.parents:
            pn = st.node(par)
            if pn.kind == PAIR:
                if pn.a == sig:
                    yield from self._positions(par, root)
                if pn.b == sig:
                    shift = st.node(pn.a).length
                    for at in self._positions(par, root):
                        yield at + shift
            else:
                step = node.length
                for at in self._positions(par, root):
                    for c in range(pn.b):
                        yield at + c * step

    # ------------------------------------------------------------------
    # integrity

    def snapshot(self):
        """Content view for equality with a from-scratch build."""
        return (dict(self.points),
                list(self.x_axis.order),
                list(self.y_axis.order),
                self.plane.owners())

    def audit(self):
        """Check the plane against the store, from the ground up."""
        st = self.store
        want = {sig: self._point_of(node)
                for sig, node in st.iter_nodes() if node.kind != CHAR}
        assert self.points == want
        assert self.stats["points"] == len(want)
        for axis, side in ((self.x_axis, 0), (self.y_axis, 1)):
            ref = {}
            for pt in want.values():
                ref[pt[side]] = ref.get(pt[side], 0) + 1
            assert axis.count == ref
            assert len(axis.order) == len(ref)
            for a, b in zip(axis.order, axis.order[1:]):
                assert axis.cmp(a, b) < 0
        self.plane.check(set(want))
