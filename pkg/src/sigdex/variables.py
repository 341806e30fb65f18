"""Lexicographic queries over the variables of a straight-line program.

Once every variable's expansion has a signature in a shared store,
comparisons between expansions run on the grammar instead of the text:
the longest common prefix of two variables is one signature-level
extension query, their order needs at most one extra character, and a
whole-grammar sort is a comparison sort over those primitives.

Two optional accelerations are built on demand.  Prefix and suffix
queries drop to constant time via a range-minimum structure over the
neighbor-lcp array of the sorted variable list; suffix queries run as
prefix queries on the child-swapped grammar, which derives the reversed
text and shares the same store.  Extension queries from arbitrary
offsets reduce to one query on the start variable via a table of
leftmost derivation-tree occurrences.
"""

import functools

from .queries import lce, lcp_sig
from .slp import Slp
from .slp_levelwise import signatures_for_all_variables


class _SparseMin:
    """Static range-minimum over a list, O(1) per query after O(n log n)."""

    def __init__(self, arr):
        self.rows = [list(arr)]
        k = 1
        while 2 * k <= len(arr):
            prev = self.rows[-1]
            self.rows.append([min(prev[i], prev[i + k])
                              for i in range(len(arr) - 2 * k + 1)])
            k *= 2
        self.logs = [0] * (len(arr) + 1)
        for i in range(2, len(arr) + 1):
            self.logs[i] = self.logs[i // 2] + 1

    def query(self, lo, hi):
        """Minimum of arr[lo..hi], inclusive bounds."""
        s = self.logs[hi - lo + 1]
        row = self.rows[s]
        return min(row[lo], row[hi - (1 << s) + 1])


class VariableOps:
    """Signature-backed order, lcp/lcs and extension queries per variable.

    Construction interns a signature for every variable's expansion.
    The heavier preprocessing layers (sorted order, neighbor-lcp range
    minima, the reversed grammar) are created the first time a query
    needs them.  Nothing is pinned: the caller decides when the store
    may collect.
    """

    def __init__(self, store, slp, params):
        self.store = store
        self.slp = slp
        self.params = params
        self.sigs = signatures_for_all_variables(store, slp, params)
        self.lengths = slp.lengths()
        self.leftmost = self._leftmost_occurrences()
        self._order = None
        self._rank = None
        self._gaps = None
        self._rev = None

    # -- plumbing ----------------------------------------------------------

    def _check(self, i):
        if not 1 <= i <= self.slp.n:
            raise ValueError("variable index out of range: %d" % i)

    def _leftmost_occurrences(self):
        """First start position of each variable under the start symbol.

        Walking rules from the top down, a variable's position is final
        before it propagates to its children, so one linear pass fills
        the table.
        """
        n = self.slp.n
        occ = [None] * (n + 1)
        occ[n] = 1
        for i in range(n, 0, -1):
            r = self.slp.rules[i]
            if r[0] != "P":
                continue
            l, rr = r[1], r[2]
            if occ[l] is None or occ[i] < occ[l]:
                occ[l] = occ[i]
            p = occ[i] + self.lengths[l]
            if occ[rr] is None or p < occ[rr]:
                occ[rr] = p
        return occ

    def _compare(self, i, j):
        if i == j:
            return 0
        ni, nj = self.lengths[i], self.lengths[j]
        l = lcp_sig(self.store, self.sigs[i], self.sigs[j])
        if l >= min(ni, nj):
            if ni != nj:
                return -1 if ni < nj else 1
            return -1 if i < j else 1   # equal expansions: stable by index
        a = self.store.expand(self.sigs[i], l + 1, 1)
        b = self.store.expand(self.sigs[j], l + 1, 1)
        return -1 if a < b else 1

    # -- queries -------------------------------------------------------

    def sort_variables(self):
        """Variable indexes ordered by expansion, ties by index."""
        if self._order is None:
            self._order = sorted(range(1, self.slp.n + 1),
                                 key=functools.cmp_to_key(self._compare))
        return self._order

    def _ensure_fast_lcp(self):
        if self._gaps is not None:
            return
        order = self.sort_variables()
        self._rank = [0] * (self.slp.n + 1)
        for k, i in enumerate(order):
            self._rank[i] = k
        neigh = [lcp_sig(self.store, self.sigs[order[k]],
                         self.sigs[order[k + 1]])
                 for k in range(len(order) - 1)]
        self._gaps = _SparseMin(neigh) if neigh else None

    def variable_lcp(self, i, j, fast=False):
        """Longest common prefix length of the two expansions."""
        self._check(i)
        self._check(j)
        if i == j:
            return self.lengths[i]
        if not fast:
            return lcp_sig(self.store, self.sigs[i], self.sigs[j])
        self._ensure_fast_lcp()
        a, b = sorted((self._rank[i], self._rank[j]))
        return self._gaps.query(a, b - 1)

    def _reversed_ops(self):
        if self._rev is None:
            rules = [r if r[0] == "C" else ("P", r[2], r[1])
                     for r in self.slp.rules[1:]]
            self._rev = VariableOps(self.store, Slp(rules), self.params)
        return self._rev

    def variable_lcs(self, i, j, fast=False):
        """Longest common suffix length, via the child-swapped grammar."""
        self._check(i)
        self._check(j)
        return self._reversed_ops().variable_lcp(i, j, fast)

    def lce_on_variables(self, i, j, a, b):
        """Match length of expansion(i) from a and expansion(j) from b.

        Positions are 1-indexed.  Both occurrences are located inside
        the start variable's text, so one in-text extension query plus
        caps at the variables' ends gives the answer.
        """
        self._check(i)
        self._check(j)
        ni, nj = self.lengths[i], self.lengths[j]
        if not 1 <= a <= ni:
            raise ValueError("position out of range: %d" % a)
        if not 1 <= b <= nj:
            raise ValueError("position out of range: %d" % b)
        root = self.sigs[self.slp.n]
        ext = lce(self.store, root, root,
                  self.leftmost[i] + a - 1, self.leftmost[j] + b - 1)
        return min(ext, ni - a + 1, nj - b + 1)
