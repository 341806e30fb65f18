"""Shared decompositions of strings under the block parse.

A CommonSequence records, level by level, the parts of a string's parse
that every occurrence of that string shares regardless of context: one
clipped run plus a short trim of symbols at each edge, and a kept middle
whose symbols coincide with the enclosing text's own parse.  Levels stop
at the first row short enough to keep whole (the core).

Two builders produce the same structure.  uniq_of_string parses raw
bytes and interns whatever symbols it needs.  uniq_of_substring walks an
existing parse tree and never allocates: the kept middles are already in
the store, and the edges are described by (base, count) values.
"""

from .parsing import block_slices, boundary_bits
from .parsing import runs_of
from .store import PAIR, RUN
from .tower import fold_block


class CSLevel:
    """One level: clipped edge runs, edge trims, and the kept middle."""

    __slots__ = ("first_run", "head_trim", "tail_trim", "last_run",
                 "kept_head", "kept_tail", "kept_len", "kept_full")

    def __init__(self, first_run, head_trim, tail_trim, last_run,
                 kept_head, kept_tail, kept_len, kept_full):
        self.first_run = first_run    # (base sig, clipped count)
        self.head_trim = head_trim    # run sigs trimmed after first_run
        self.tail_trim = tail_trim    # run sigs trimmed before last_run
        self.last_run = last_run      # (base sig, clipped count)
        self.kept_head = kept_head    # leading kept run sigs (capped)
        self.kept_tail = kept_tail    # trailing kept run sigs (capped)
        self.kept_len = kept_len      # kept symbol count; None when over cap
        self.kept_full = kept_full    # all kept run sigs; None when long

    def parts(self):
        return (self.first_run, tuple(self.head_trim),
                tuple(self.tail_trim), self.last_run)


class CommonSequence:
    """Levelled decomposition shared by all occurrences of one string."""

    __slots__ = ("length", "levels", "core_runs", "top_level", "visits")

    def __init__(self, length, levels, core_runs, visits=0):
        self.length = length
        self.levels = levels
        self.core_runs = core_runs    # runs of symbols at the stop level
        self.top_level = len(levels)
        self.visits = visits

    def pow_runs(self, store):
        """Flattened (base, count) runs covering the string, outside-in."""
        out = []
        for lv in self.levels:
            out.append(lv.first_run)
            for s in lv.head_trim:
                n = store.node(s)
                out.append((n.a, n.b))
        out.extend(self.core_runs)
        for lv in reversed(self.levels):
            for s in lv.tail_trim:
                n = store.node(s)
                out.append((n.a, n.b))
            out.append(lv.last_run)
        return out

    def expand_runs(self, store):
        """Bytes of pow_runs, for oracle checks."""
        out = bytearray()
        for base, cnt in self.pow_runs(store):
            out.extend(store.expand(base) * cnt)
        return bytes(out)


def _head_cut(bits, params):
    """Shortest trim of at least delta_l symbols ending on a boundary."""
    for pos in range(params.delta_l, params.delta_l + 4):
        if bits[pos]:
            return pos
    raise AssertionError("no boundary in the head window")


def _tail_cut(bits, n, params):
    """Longest kept zone leaving at least delta_r + 1 trimmed symbols."""
    for pos in range(n - params.delta_r - 1, n - params.delta_r - 5, -1):
        if bits[pos]:
            return pos
    raise AssertionError("no boundary in the tail window")


def uniq_of_string(store, text, params):
    """Parse raw bytes into their CommonSequence, interning as needed."""
    if not text:
        raise ValueError("empty string has no decomposition")
    sh = [store.char(b) for b in text]
    levels = []
    while True:
        runs = runs_of(sh)
        if len(runs) <= params.core_bound:
            return CommonSequence(len(text), levels, runs)
        pw = [store.run(b, e) for b, e in runs]
        mids = pw[1:-1]
        bits = boundary_bits(mids, params)
        lcut = _head_cut(bits, params)
        rcut = _tail_cut(bits, len(mids), params)
        kept = mids[lcut:rcut]
        cap = params.core_bound - 1
        levels.append(CSLevel(
            runs[0], mids[:lcut], mids[rcut:], runs[-1],
            kept[:cap], kept[-cap:], len(kept), kept))
        sh = [fold_block(store, kept[a - lcut:b - lcut])
              for a, b in block_slices(bits, lcut, rcut)]


class _WalkFwd:
    """Left-to-right iterator over one level's run entries of a parse.

    Entries are (sig, base, count, base_len); sig is None when the entry
    is clipped at the start offset and so differs from the stored node.
    """

    __slots__ = ("store", "level", "stack", "cur", "visits")

    def __init__(self, store, root, level, char_off):
        self.store = store
        self.level = level
        self.stack = []
        self.cur = None
        self.visits = 0
        self._seek(root, char_off)

    def _chain(self, nd):
        """Children of a block in order, unfolding the pair chain."""
        kids = [nd.b]
        cur = nd.a
        while True:
            self.visits += 1
            n2 = self.store.node(cur)
            if n2.kind == PAIR and n2.lvl == nd.lvl:
                kids.append(n2.b)
                cur = n2.a
            else:
                kids.append(cur)
                break
        kids.reverse()
        return kids

    def _seek(self, sig, off):
        node = self.store.node
        while True:
            self.visits += 1
            nd = node(sig)
            if nd.kind == RUN:
                bl = node(nd.a).length
                if nd.lvl == self.level:
                    skip, rem = divmod(off, bl)
                    if rem:
                        raise AssertionError("offset off the symbol grid")
                    self.cur = (sig if skip == 0 else None,
                                nd.a, nd.b - skip, bl)
                    return
                skip, off = divmod(off, bl)
                self.stack.append((RUN, nd, skip + 1))
                sig = nd.a
            else:
                kids = self._chain(nd)
                i = 0
                while True:
                    kl = node(kids[i]).length
                    if off < kl:
                        break
                    off -= kl
                    i += 1
                self.stack.append((PAIR, kids, i + 1))
                sig = kids[i]

    def _down(self, sig):
        node = self.store.node
        while True:
            self.visits += 1
            nd = node(sig)
            if nd.kind == RUN:
                if nd.lvl == self.level:
                    self.cur = (sig, nd.a, nd.b, node(nd.a).length)
                    return
                self.stack.append((RUN, nd, 1))
                sig = nd.a
            else:
                kids = self._chain(nd)
                self.stack.append((PAIR, kids, 1))
                sig = kids[0]

    def next_entry(self):
        out = self.cur
        self.cur = None
        st = self.stack
        while st:
            tag, obj, idx = st[-1]
            if tag == RUN:
                if idx < obj.b:
                    st[-1] = (RUN, obj, idx + 1)
                    self._down(obj.a)
                    return out
            else:
                if idx < len(obj):
                    st[-1] = (PAIR, obj, idx + 1)
                    self._down(obj[idx])
                    return out
            st.pop()
        return out


class _WalkBwd:
    """Right-to-left mirror of _WalkFwd, started at an exclusive end."""

    __slots__ = ("store", "level", "stack", "cur", "visits")

    def __init__(self, store, root, level, char_end):
        self.store = store
        self.level = level
        self.stack = []
        self.cur = None
        self.visits = 0
        self._seek(root, self.store.node(root).length - char_end)

    def _chain(self, nd):
        kids = [nd.b]
        cur = nd.a
        while True:
            self.visits += 1
            n2 = self.store.node(cur)
            if n2.kind == PAIR and n2.lvl == nd.lvl:
                kids.append(n2.b)
                cur = n2.a
            else:
                kids.append(cur)
                break
        kids.reverse()
        return kids

    def _seek(self, sig, cut):
        """Descend to the entry ending `cut` chars before node's end."""
        node = self.store.node
        while True:
            self.visits += 1
            nd = node(sig)
            if nd.kind == RUN:
                bl = node(nd.a).length
                if nd.lvl == self.level:
                    skip, rem = divmod(cut, bl)
                    if rem:
                        raise AssertionError("offset off the symbol grid")
                    self.cur = (sig if skip == 0 else None,
                                nd.a, nd.b - skip, bl)
                    return
                skip, cut = divmod(cut, bl)
                self.stack.append((RUN, nd, skip + 1))
                sig = nd.a
            else:
                kids = self._chain(nd)
                i = len(kids) - 1
                while True:
                    kl = node(kids[i]).length
                    if cut < kl:
                        break
                    cut -= kl
                    i -= 1
                self.stack.append((PAIR, kids, len(kids) - i))
                sig = kids[i]

    def _down(self, sig):
        node = self.store.node
        while True:
            self.visits += 1
            nd = node(sig)
            if nd.kind == RUN:
                if nd.lvl == self.level:
                    self.cur = (sig, nd.a, nd.b, node(nd.a).length)
                    return
                self.stack.append((RUN, nd, 1))
                sig = nd.a
            else:
                kids = self._chain(nd)
                self.stack.append((PAIR, kids, 1))
                sig = kids[-1]

    def next_entry(self):
        out = self.cur
        self.cur = None
        st = self.stack
        while st:
            tag, obj, idx = st[-1]
            if tag == RUN:
                if idx < obj.b:
                    st[-1] = (RUN, obj, idx + 1)
                    self._down(obj.a)
                    return out
            else:
                if idx < len(obj):
                    st[-1] = (PAIR, obj, idx + 1)
                    self._down(obj[len(obj) - 1 - idx])
                    return out
            st.pop()
        return out


def uniq_of_substring(store, root, j, y, params):
    """CommonSequence of val(root)[j..j+y-1], 1-indexed, read-only.

    Walks the existing parse; never interns.  The result is identical,
    field for field, to uniq_of_string on the expanded substring.
    """
    total = store.node(root).length
    if not (1 <= j and 1 <= y and j + y - 1 <= total):
        raise ValueError("substring range out of bounds")
    lo, hi = j - 1, j - 1 + y
    need = params.core_bound - 1      # interior symbols per side
    # Forward probe size: any row that outgrows it is long enough that a
    # backward buffer of tail_need interior entries stays inside the range.
    probe = need + params.delta_r + 7
    tail_need = need + params.delta_r + 5
    levels = []
    visits = 0
    level = 0
    while True:
        fwd = _WalkFwd(store, root, level, lo)
        entries = []
        cursor = lo
        while cursor < hi and len(entries) < probe:
            sig, base, cnt, bl = fwd.next_entry()
            room = (hi - cursor) // bl
            if cnt > room:
                sig, cnt = None, room
            entries.append((sig, base, cnt, bl))
            cursor += cnt * bl
        if cursor == hi and len(entries) <= params.core_bound:
            core = [(base, cnt) for _, base, cnt, _ in entries]
            visits += fwd.visits
            return CommonSequence(y, levels, core, visits)

        first_run = (entries[0][1], entries[0][2])
        head_chars = entries[0][2] * entries[0][3]
        if cursor == hi:
            # Whole row in hand: use the exact full-row rule.
            mids = entries[1:-1]
            last = entries[-1]
            mid_sigs = [e[0] for e in mids]
            bits = boundary_bits(mid_sigs, params)
            lcut = _head_cut(bits, params)
            rcut = _tail_cut(bits, len(mids), params)
            kept = mid_sigs[lcut:rcut]
            c_lo = lo + head_chars + sum(e[2] * e[3] for e in mids[:lcut])
            c_hi = (hi - last[2] * last[3]
                    - sum(e[2] * e[3] for e in mids[rcut:]))
            levels.append(CSLevel(
                first_run, mid_sigs[:lcut], mid_sigs[rcut:],
                (last[1], last[2]),
                kept[:need], kept[-need:], len(kept), kept))
            visits += fwd.visits
        else:
            # Long row: decide each cut inside its trusted window.
            mids = entries[1:]
            head_sigs = [e[0] for e in mids[:need]]
            bits_h = boundary_bits(head_sigs, params, true_end=False)
            lcut = _head_cut(bits_h, params)

            bwd = _WalkBwd(store, root, level, hi)
            sig, base, cnt, bl = bwd.next_entry()
            last_run = (base, cnt)
            tail_chars = cnt * bl
            tail = []
            while len(tail) < tail_need:
                sig, base, cnt, bl = bwd.next_entry()
                tail.append(sig)
                tail_chars += cnt * bl
            tail.reverse()
            bits_t = boundary_bits(tail, params, true_start=False)
            rcut_t = _tail_cut(bits_t, len(tail), params)
            trimmed = tail[rcut_t:]
            c_hi = hi - tail_chars + sum(
                store.node(s).length for s in tail[:rcut_t])

            c_lo = lo + head_chars + sum(
                e[2] * e[3] for e in mids[:lcut])
            # Collect kept symbols up to the cap; the already-fetched
            # head entries may reach past the kept zone's end, so stop
            # on the char position, never on list exhaustion alone.
            kept = []
            k_cursor = c_lo
            long_cap = 2 * need
            for e in mids[lcut:]:
                if k_cursor >= c_hi:
                    break
                kept.append(e[0])
                k_cursor += e[2] * e[3]
            while k_cursor < c_hi and len(kept) <= long_cap:
                sig, base, cnt, bl = fwd.next_entry()
                kept.append(sig)
                k_cursor += cnt * bl
            if k_cursor == c_hi and len(kept) <= long_cap:
                levels.append(CSLevel(
                    first_run, [e[0] for e in mids[:lcut]], trimmed,
                    last_run, kept[:need], kept[-need:], len(kept), kept))
            else:
                levels.append(CSLevel(
                    first_run, [e[0] for e in mids[:lcut]], trimmed,
                    last_run, kept[:need],
                    tail[rcut_t - need:rcut_t], None, None))
            visits += fwd.visits + bwd.visits
        lo, hi = c_lo, c_hi
        level += 1
