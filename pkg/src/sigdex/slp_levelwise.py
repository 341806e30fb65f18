"""Level-synchronous import of a straight-line program.

The grammar is folded level by level, all variables at once, instead of
variable by variable.  Each variable owns a narrowing "kept" row per
level; a parent's kept row is exactly its left child's kept row, then a
short seam, then its right child's kept row, so the only new symbols a
variable contributes per level are its seam.  A row that falls to at
most core_bound maximal runs freezes into an explicit core; parents
absorb frozen cores into their seams on the level where that happens.

For variables whose final signature is wanted, the symbols cut away as
the kept row narrows are folded on the side into head and tail affix
strips.  Gluing the affixes back onto the frozen core reconstructs the
variable's full level row, and finishing the plain tower on it yields
the signature of the variable's expansion, identical to what a from-text
build of the same store would produce.

Working state per live variable per level is O(log* M) entries: the
seam, the run symbols it turns into, two border windows of fixed length
window = delta_l + delta_r + 4, the affix strips and the edge run
tokens.  Everything else lives in the signature store.
"""

from .parsing import block_slices, boundary_bits, merge_runs, runs_of
from .tower import fold_block, tower_from_pows


class _Var:
    """Per-variable working state, one level at a time."""

    __slots__ = (
        "left", "right",      # child indexes, None for a terminal rule
        "byte",               # terminal byte, None for a pair rule
        "tracked",            # whether the final signature is wanted
        "stop_level",         # level at which the kept row froze, else None
        "sig",                # final signature (tracked variables only)
        "run_count",          # exact run count of the current kept row
        "first_run",          # first maximal run of the row as (base, exp)
        "last_run",           # last maximal run of the row
        "core",               # explicit run tokens while freshly frozen
        "seam",               # block symbols between the children this level
        "mid",                # run symbols of the seam zone of the run row
        "head_win",           # first `window` run symbols of the row
        "tail_win",           # last `window` run symbols of the row
        "head_affix",         # cut-away prefix, block-stage symbols
        "tail_affix",         # cut-away suffix, block-stage symbols
        "head_affix_pows",    # cut-away prefix, run-stage symbols
        "tail_affix_pows",    # cut-away suffix, run-stage symbols
    )

    def __init__(self, rule, tracked):
        if rule[0] == "C":
            self.left = self.right = None
            self.byte = rule[1]
        else:
            self.left, self.right = rule[1], rule[2]
            self.byte = None
        self.tracked = tracked
        self.stop_level = None
        self.sig = None
        self.run_count = 0
        self.first_run = self.last_run = None
        self.core = None
        self.seam = []
        self.mid = None
        self.head_win = self.tail_win = None
        self.head_affix = []
        self.tail_affix = []
        self.head_affix_pows = []
        self.tail_affix_pows = []


def _cat(a, b):
    """Concatenate two row summaries (run_count, first, last, tokens).

    tokens is the explicit run list when both sides have one, else None.
    The junction merge keeps the count and the edge runs exact even when
    a whole single-run side dissolves into its neighbor.
    """
    if a is None:
        return b
    if b is None:
        return a
    rc_a, fr_a, lr_a, tk_a = a
    rc_b, fr_b, lr_b, tk_b = b
    if lr_a[0] == fr_b[0]:
        rc = rc_a + rc_b - 1
        join = (lr_a[0], lr_a[1] + fr_b[1])
        fr = join if rc_a == 1 else fr_a
        lr = join if rc_b == 1 else lr_b
    else:
        rc = rc_a + rc_b
        fr, lr = fr_a, lr_b
    tk = None
    if tk_a is not None and tk_b is not None:
        tk = merge_runs(tk_a, tk_b)
    return (rc, fr, lr, tk)


def _head_cut(bits, base, p):
    """Smallest head-cut width with a block boundary at base + width."""
    for c in range(p.lcut_min, p.lcut_max + 1):
        if bits[base + c]:
            return c
    raise AssertionError("no boundary in the head-cut range")


def _tail_cut(bits, end, p):
    """Smallest tail-cut depth with a block boundary at end - depth."""
    for d in range(p.rcut_min, p.rcut_max + 1):
        if bits[end - d]:
            return d
    raise AssertionError("no boundary in the tail-cut range")


class _Build:
    def __init__(self, store, slp, params, track):
        self.store = store
        self.slp = slp
        self.params = params
        self.vars = [None] + [_Var(slp.rules[i], i in track)
                              for i in range(1, slp.n + 1)]
        self.track = track
        self.peak = 0
        self.levels = 0

    # -- per-variable step -------------------------------------------------

    def _child_part(self, j, level):
        """Child j's contribution to a parent row: a summary or None.

        A live child contributes its whole row by reference (tokens
        unknown); a child frozen at this very level contributes its core
        explicitly; a child frozen earlier contributes nothing, because
        the parent's seam swallowed its core back then.
        """
        c = self.vars[j]
        if c.stop_level is None or c.stop_level == level:
            return (c.run_count, c.first_run, c.last_run, c.core)
        return None

    def _step(self, i, level):
        v = self.vars[i]
        st = self.store
        p = self.params
        w = p.window

        # Block stage: row summary for this level.
        if v.left is None:
            cs = st.char(v.byte)
            summary = (1, (cs, 1), (cs, 1), [(cs, 1)])
        else:
            seam_runs = runs_of(v.seam)
            seam_part = ((len(seam_runs), seam_runs[0], seam_runs[-1],
                          seam_runs) if seam_runs else None)
            summary = _cat(_cat(self._child_part(v.left, level), seam_part),
                           self._child_part(v.right, level))
        rc, fr, lr, toks = summary
        v.run_count, v.first_run, v.last_run = rc, fr, lr

        if rc <= p.core_bound:
            # The row froze.  A live child alone would exceed the bound,
            # so all children are frozen and the row is fully explicit.
            assert toks is not None, "frozen row must be explicit"
            v.core = toks
            v.stop_level = level
            if v.tracked:
                full = merge_runs(runs_of(v.head_affix), toks,
                                  runs_of(v.tail_affix))
                v.sig = tower_from_pows(st, [st.run(b, e) for b, e in full], p)
            v.seam = v.mid = v.head_win = v.tail_win = None
            return

        # Run stage: symbols of the seam zone, between the children's rows.
        lc, rv = self.vars[v.left], self.vars[v.right]
        l_live = lc.stop_level is None
        r_live = rv.stop_level is None
        left_toks = [lc.last_run] if l_live else (
            lc.core if lc.stop_level == level else [])
        right_toks = [rv.first_run] if r_live else (
            rv.core if rv.stop_level == level else [])
        toks = merge_runs(left_toks, runs_of(v.seam), right_toks)
        if not l_live and toks:
            toks = toks[1:]     # the row's own first run is cut, not kept
        if not r_live and toks:
            toks = toks[:-1]    # same for the row's own last run
        mid = [st.run(b, e) for b, e in toks]
        v.mid = mid
        assert len(mid) <= 4 * p.core_bound, "seam grew past its bound"
        if not l_live and not r_live:
            # The zone is the whole run row: rc - 2 symbols.
            assert len(mid) >= p.core_bound - 1

        # Border windows of the run row.
        if l_live:
            head = lc.head_win
        else:
            head = (mid + (rv.head_win if r_live else []))[:w]
        if r_live:
            tail = rv.tail_win
        else:
            tail = ((lc.tail_win if l_live else []) + mid)[-w:]
        assert len(head) == w and len(tail) == w, "short border window"
        v.head_win, v.tail_win = head, tail

        # Fold the seam zone into next level's seam.  The zone runs from
        # the left child's own tail cut (or this row's head cut when the
        # left side is gone) to the right child's own head cut (or this
        # row's tail cut).  The windows supply exactly the context the
        # boundary bits need.
        src = (lc.tail_win if l_live else []) + mid + \
              (rv.head_win if r_live else [])
        bits = boundary_bits(src, p, not l_live, not r_live)
        if l_live:
            zs = w - _tail_cut(bits, w, p)
        else:
            zs = _head_cut(bits, 0, p)
        if r_live:
            base = len(src) - w
            ze = base + _head_cut(bits, base, p)
        else:
            ze = len(src) - _tail_cut(bits, len(src), p)
        assert zs <= ze, "seam zone inverted"
        v.seam = [fold_block(st, src[a:b])
                  for a, b in block_slices(bits, zs, ze)]
        assert len(v.seam) <= 4 * p.core_bound, "seam grew past its bound"

        # Affix strips: fold what the head and tail cuts drop from the
        # full row, so the variable's own signature stays reachable.
        if v.tracked:
            a_pows = [st.run(b, e) for b, e in
                      merge_runs(runs_of(v.head_affix), [fr])]
            b_pows = [st.run(b, e) for b, e in
                      merge_runs([lr], runs_of(v.tail_affix))]
            src_a = a_pows + head
            bits_a = boundary_bits(src_a, p, True, False)
            cut_a = len(a_pows) + _head_cut(bits_a, len(a_pows), p)
            v.head_affix = [fold_block(st, src_a[a:b])
                            for a, b in block_slices(bits_a, 0, cut_a)]
            src_b = tail + b_pows
            bits_b = boundary_bits(src_b, p, False, True)
            cut_b = w - _tail_cut(bits_b, w, p)
            v.tail_affix = [fold_block(st, src_b[a:b])
                            for a, b in block_slices(bits_b, cut_b,
                                                     len(src_b))]
            v.head_affix_pows, v.tail_affix_pows = a_pows, b_pows

    # -- driver ------------------------------------------------------------

    def _done(self):
        if len(self.track) == self.slp.n:
            return all(v.stop_level is not None for v in self.vars[1:])
        return self.vars[self.slp.n].stop_level is not None

    def _state_entries(self, level):
        total = 0
        for v in self.vars[1:]:
            if v.stop_level is None:
                total += (len(v.seam) + len(v.mid) + len(v.head_win) +
                          len(v.tail_win) + len(v.head_affix) +
                          len(v.tail_affix) + len(v.head_affix_pows) +
                          len(v.tail_affix_pows) + 3)
            elif v.stop_level == level:
                total += len(v.core) + 3
            else:
                total += 1
        return total

    def run(self):
        n = self.slp.n
        limit = 4 * max(self.slp.lengths()[n], 2).bit_length() + 24
        level = 0
        while True:
            for i in range(1, n + 1):
                if self.vars[i].stop_level is None:
                    self._step(i, level)
            self.peak = max(self.peak, self._state_entries(level))
            for v in self.vars[1:]:
                if v.stop_level == level:
                    v.core = None   # absorbed by every parent this pass
            self.levels = level + 1
            if self._done():
                return
            level += 1
            assert level <= limit, "levelwise build failed to converge"


def _build(store, slp, params, track, stats):
    b = _Build(store, slp, params, track)
    b.run()
    if stats is not None:
        stats["levels"] = b.levels
        stats["peak_state"] = b.peak
    return b


def build_from_slp_levelwise(store, slp, params, stats=None):
    """Build the parse of val(start) level-synchronously.

    Returns the root signature, unpinned.  Same-store equivalent to
    tower_from_text over the expansion, at O(n log* M) working state
    instead of the expanded length.
    """
    b = _build(store, slp, params, {slp.n}, stats)
    return b.vars[slp.n].sig


def signatures_for_all_variables(store, slp, params, stats=None):
    """Signatures of every variable's expansion: {i: sig}.

    Like build_from_slp_levelwise, but affix strips are kept for every
    variable, so each one's full row can be reassembled the moment its
    kept row freezes.
    """
    b = _build(store, slp, params, set(range(1, slp.n + 1)), stats)
    return {i: b.vars[i].sig for i in range(1, slp.n + 1)}
