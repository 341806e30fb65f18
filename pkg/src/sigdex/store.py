"""Signature store.

One store holds every grammar node of an engine: characters, pairs and
runs.  Interning is canonical (one signature per distinct definition), so
two equal strings built in the same store always share a root signature.
Nodes carry reference counts fed by structural parent edges plus explicit
pins; removal cascades through children whose counts drop to zero.
"""

from bisect import bisect_left
from contextlib import contextmanager

CHAR = "C"
PAIR = "P"
RUN = "R"

_PREFIX_CAP = 48


class Node:
    __slots__ = ("sig", "kind", "a", "b", "length", "lvl", "stage",
                 "refcount", "parents")

    def __init__(self, sig, kind, a, b, length, lvl, stage):
        self.sig = sig
        self.kind = kind
        self.a = a
        self.b = b
        self.length = length
        self.lvl = lvl
        self.stage = stage
        self.refcount = 0
        self.parents = {}

    def key(self):
        if self.kind == CHAR:
            return (CHAR, self.a)
        return (self.kind, self.a, self.b)

    def __repr__(self):
        return "Node(%d %s a=%d b=%d len=%d L%d%s)" % (
            self.sig, self.kind, self.a, self.b, self.length,
            self.lvl, self.stage)


class SigStore:
    def __init__(self, limit=1 << 40):
        if limit < 257:
            raise ValueError("limit too small")
        self.limit = limit
        self._nodes = {}
        self._rev = {}
        self._free = [[1, limit]]
        self._forced = None
        self._pins = {}
        self._tracks = []
        self._pref = {}
        self._suff = {}
        self.on_create = []
        self.on_remove = []
        self.created = 0
        self.removed = 0
        self.lookups = 0

    # ------------------------------------------------------------------
    # id management

    def _alloc(self):
        if self._forced is not None:
            sig = self._forced
            self._forced = None
            self._take_id(sig)
            return sig
        if not self._free:
            raise RuntimeError("signature space exhausted")
        iv = self._free[0]
        sig = iv[0]
        if iv[0] + 1 == iv[1]:
            self._free.pop(0)
        else:
            iv[0] += 1
        return sig

    def _take_id(self, sig):
        f = self._free
        i = bisect_left(f, [sig + 1]) - 1
        if i < 0 or not (f[i][0] <= sig < f[i][1]):
            raise ValueError("id %d unavailable" % sig)
        lo, hi = f[i]
        parts = []
        if lo < sig:
            parts.append([lo, sig])
        if sig + 1 < hi:
            parts.append([sig + 1, hi])
        f[i:i + 1] = parts

    def _unalloc(self, sig):
        f = self._free
        i = bisect_left(f, [sig])
        prev_touch = i > 0 and f[i - 1][1] == sig
        next_touch = i < len(f) and f[i][0] == sig + 1
        if prev_touch and next_touch:
            f[i - 1][1] = f[i][1]
            f.pop(i)
        elif prev_touch:
            f[i - 1][1] = sig + 1
        elif next_touch:
            f[i][0] = sig
        else:
            f.insert(i, [sig, sig + 1])

    # ------------------------------------------------------------------
    # interning

    def node(self, sig):
        return self._nodes[sig]

    def __contains__(self, sig):
        return sig in self._nodes

    def __len__(self):
        return len(self._nodes)

    def iter_nodes(self):
        """Live (sig, node) pairs in ascending signature order."""
        for sig in sorted(self._nodes):
            yield sig, self._nodes[sig]

    def char(self, byte):
        if not 0 <= byte <= 255:
            raise ValueError("byte out of range")
        key = (CHAR, byte)
        self.lookups += 1
        sig = self._rev.get(key)
        if sig is not None:
            return sig
        return self._create(key, CHAR, byte, 0, 1, 0, "S")

    def run(self, base, exp):
        if exp < 1:
            raise ValueError("run exponent must be positive")
        key = (RUN, base, exp)
        self.lookups += 1
        sig = self._rev.get(key)
        if sig is not None:
            return sig
        bn = self._nodes[base]
        if bn.stage != "S":
            raise ValueError("run base must be a block-stage symbol")
        return self._create(key, RUN, base, exp, bn.length * exp, bn.lvl, "W")

    def pair(self, left, right):
        key = (PAIR, left, right)
        self.lookups += 1
        sig = self._rev.get(key)
        if sig is not None:
            return sig
        ln = self._nodes[left]
        rn = self._nodes[right]
        if rn.stage != "W":
            raise ValueError("pair right child must be a run-stage symbol")
        t = rn.lvl
        if ln.stage == "W":
            if ln.lvl != t:
                raise ValueError("pair children level mismatch")
        else:
            if ln.lvl != t + 1:
                raise ValueError("pair fold level mismatch")
        if left == right:
            raise ValueError("pair of a symbol with itself")
        return self._create(key, PAIR, left, right,
                            ln.length + rn.length, t + 1, "S")

    def _create(self, key, kind, a, b, length, lvl, stage):
        sig = self._alloc()
        node = Node(sig, kind, a, b, length, lvl, stage)
        self._nodes[sig] = node
        self._rev[key] = sig
        if kind == PAIR:
            for child in (a, b):
                cn = self._nodes[child]
                cn.parents[sig] = cn.parents.get(sig, 0) + 1
                cn.refcount += 1
        elif kind == RUN:
            cn = self._nodes[a]
            cn.parents[sig] = cn.parents.get(sig, 0) + 1
            cn.refcount += 1
        self.created += 1
        for lst in self._tracks:
            lst.append(sig)
        for cb in self.on_create:
            cb(node)
        return sig

    # ------------------------------------------------------------------
    # reference management

    def pin(self, sig):
        if sig not in self._nodes:
            raise KeyError(sig)
        self._pins[sig] = self._pins.get(sig, 0) + 1
        self._nodes[sig].refcount += 1

    def unpin(self, sig):
        c = self._pins.get(sig, 0)
        if c < 1:
            raise KeyError("unpin of unpinned signature %d" % sig)
        if c == 1:
            del self._pins[sig]
        else:
            self._pins[sig] = c - 1
        self._nodes[sig].refcount -= 1

    def pins(self):
        return dict(self._pins)

    def remove_useless(self, sig):
        """Remove sig if nothing references it, cascading into children."""
        stack = [sig]
        while stack:
            s = stack.pop()
            node = self._nodes.get(s)
            if node is None or node.refcount > 0:
                continue
            for cb in self.on_remove:
                cb(node)
            del self._nodes[s]
            del self._rev[node.key()]
            self._pref.pop(s, None)
            self._suff.pop(s, None)
            self._unalloc(s)
            self.removed += 1
            if node.kind == PAIR:
                children = ((node.a, 1), (node.b, 1))
            elif node.kind == RUN:
                children = ((node.a, 1),)
            else:
                children = ()
            for child, cnt in children:
                cn = self._nodes[child]
                cn.refcount -= cnt
                del cn.parents[s]
                if cn.refcount == 0:
                    stack.append(child)

    def sweep(self, sigs):
        """Drop any of the given signatures that ended up unreferenced."""
        for sig in reversed(sigs):
            if sig in self._nodes and self._nodes[sig].refcount == 0:
                self.remove_useless(sig)

    @contextmanager
    def track(self):
        """Collect every signature created inside the with-block."""
        lst = []
        self._tracks.append(lst)
        try:
            yield lst
        finally:
            self._tracks.pop()

    # ------------------------------------------------------------------
    # expansion

    def expand(self, sig, start=1, length=None):
        """Bytes of the expansion of sig, 1-indexed [start, start+length)."""
        total = self._nodes[sig].length
        lo = start - 1
        if length is None:
            length = total - lo
        hi = lo + length
        if not (0 <= lo <= hi <= total):
            raise ValueError("expand range out of bounds")
        out = bytearray()
        stack = [(sig, lo, hi)]
        nodes = self._nodes
        while stack:
            s, a, b = stack.pop()
            if a >= b:
                continue
            nd = nodes[s]
            if nd.kind == CHAR:
                out.append(nd.a)
            elif nd.kind == PAIR:
                ll = nodes[nd.a].length
                if b > ll:
                    stack.append((nd.b, max(0, a - ll), b - ll))
                if a < ll:
                    stack.append((nd.a, a, min(b, ll)))
            else:
                bl = nodes[nd.a].length
                first = a // bl
                last = (b - 1) // bl
                for c in range(last, first - 1, -1):
                    ca = max(a, c * bl) - c * bl
                    cb = min(b, (c + 1) * bl) - c * bl
                    stack.append((nd.a, ca, cb))
        return bytes(out)

    def expand_prefix(self, sig, n):
        """First min(n, len) bytes, cached for short n."""
        node = self._nodes[sig]
        n = min(n, node.length)
        if n > _PREFIX_CAP:
            return self.expand(sig, 1, n)
        cached = self._pref.get(sig)
        if cached is None:
            cached = self.expand(sig, 1, min(_PREFIX_CAP, node.length))
            self._pref[sig] = cached
        return cached[:n]

    def expand_suffix(self, sig, n):
        """Last min(n, len) bytes, cached for short n."""
        node = self._nodes[sig]
        n = min(n, node.length)
        if n > _PREFIX_CAP:
            return self.expand(sig, node.length - n + 1, n)
        cached = self._suff.get(sig)
        if cached is None:
            k = min(_PREFIX_CAP, node.length)
            cached = self.expand(sig, node.length - k + 1, k)
            self._suff[sig] = cached
        return cached[len(cached) - n:]

    # ------------------------------------------------------------------
    # serialization

    def serialize(self, root=None):
        if root is not None and root not in self._nodes:
            raise KeyError(root)
        lines = ["SIGDEX 1 %d %d" % (self.limit, root if root else 0)]
        for sig in sorted(self._nodes):
            n = self._nodes[sig]
            if n.kind == CHAR:
                lines.append("%d C %d L%d %s" % (sig, n.a, n.lvl, n.stage))
            elif n.kind == PAIR:
                lines.append("%d P %d %d L%d %s" %
                             (sig, n.a, n.b, n.lvl, n.stage))
            else:
                lines.append("%d R %d %d L%d %s" %
                             (sig, n.a, n.b, n.lvl, n.stage))
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text):
        """Parse a dump, validating structure. Returns (store, root or None)."""
        lines = [ln for ln in text.split("\n") if ln.strip()]
        if not lines:
            raise ValueError("empty dump")
        head = lines[0].split()
        if len(head) != 4 or head[0] != "SIGDEX" or head[1] != "1":
            raise ValueError("bad header")
        limit = int(head[2])
        root = int(head[3])
        specs = {}
        for ln in lines[1:]:
            parts = ln.split()
            sig = int(parts[0])
            kind = parts[1]
            if sig in specs:
                raise ValueError("duplicate signature %d" % sig)
            if not 1 <= sig < limit:
                raise ValueError("signature %d out of range" % sig)
            if kind == "C" and len(parts) == 5:
                a, b = int(parts[2]), 0
            elif kind in ("P", "R") and len(parts) == 6:
                a, b = int(parts[2]), int(parts[3])
            else:
                raise ValueError("bad node line: %r" % ln)
            lv = parts[-2]
            stage = parts[-1]
            if not lv.startswith("L") or stage not in ("S", "W"):
                raise ValueError("bad level tag: %r" % ln)
            specs[sig] = (kind, a, b, int(lv[1:]), stage)

        if root == 0:
            if specs:
                raise ValueError("nodes present but no root")
            return cls(limit), None
        if root not in specs:
            raise ValueError("root %d not defined" % root)

        store = cls(limit)
        # Resolve bottom-up with an explicit stack; detects cycles and
        # dangling references, and re-checks level/length rules by
        # re-interning through the public constructors.
        state = {}
        order = []
        stack = [root]
        while stack:
            sig = stack[-1]
            if state.get(sig) == 2:
                stack.pop()
                continue
            if sig not in specs:
                raise ValueError("dangling reference to %d" % sig)
            kind, a, b, lvl, stage = specs[sig]
            if state.get(sig) == 1:
                state[sig] = 2
                order.append(sig)
                stack.pop()
                continue
            state[sig] = 1
            if kind == "P":
                for child in (b, a):
                    if child not in state:
                        stack.append(child)
                    elif state[child] == 1:
                        raise ValueError("cycle through %d" % child)
            elif kind == "R":
                if a not in state:
                    stack.append(a)
                elif state[a] == 1:
                    raise ValueError("cycle through %d" % a)

        unreachable = set(specs) - set(order)
        if unreachable:
            raise ValueError("useless nodes: %s" %
                             ",".join(str(s) for s in sorted(unreachable)))

        # Intern in dependency order while forcing the dumped ids.
        for sig in order:
            kind, a, b, lvl, stage = specs[sig]
            store._forced = sig
            if kind == "C":
                got = store.char(a)
            elif kind == "R":
                got = store.run(a, b)
            else:
                got = store.pair(a, b)
            if got != sig:
                raise ValueError("duplicate definition for %d" % sig)
            n = store._nodes[sig]
            if (n.lvl, n.stage) != (lvl, stage):
                raise ValueError("level tag mismatch on %d" % sig)
        if root is not None:
            store.pin(root)
        return store, root

    # ------------------------------------------------------------------
    # integrity

    def audit(self):
        """Recompute every derived quantity and compare. Raises on drift."""
        parents = {sig: {} for sig in self._nodes}
        for sig, n in self._nodes.items():
            if n.kind == PAIR:
                kids = (n.a, n.b)
            elif n.kind == RUN:
                kids = (n.a,)
            else:
                kids = ()
            for c in kids:
                if c not in self._nodes:
                    raise AssertionError("dangling child %d of %d" % (c, sig))
                parents[c][sig] = parents[c].get(sig, 0) + 1
        for sig, n in self._nodes.items():
            if parents[sig] != n.parents:
                raise AssertionError("parent map drift on %d" % sig)
            want = sum(parents[sig].values()) + self._pins.get(sig, 0)
            if n.refcount != want:
                raise AssertionError("refcount drift on %d: %d != %d" %
                                     (sig, n.refcount, want))
            if self._rev.get(n.key()) != sig:
                raise AssertionError("reverse map drift on %d" % sig)
            if n.kind == CHAR:
                if n.length != 1 or n.lvl != 0 or n.stage != "S":
                    raise AssertionError("bad char node %d" % sig)
            elif n.kind == RUN:
                bn = self._nodes[n.a]
                if n.length != bn.length * n.b or n.lvl != bn.lvl \
                        or n.stage != "W" or bn.stage != "S" or n.b < 1:
                    raise AssertionError("bad run node %d" % sig)
            else:
                ln, rn = self._nodes[n.a], self._nodes[n.b]
                if n.length != ln.length + rn.length or n.stage != "S":
                    raise AssertionError("bad pair node %d" % sig)
                if rn.stage != "W" or n.lvl != rn.lvl + 1:
                    raise AssertionError("bad pair level %d" % sig)
                if ln.stage == "W" and ln.lvl != rn.lvl:
                    raise AssertionError("bad pair level %d" % sig)
                if ln.stage == "S" and ln.lvl != rn.lvl + 1:
                    raise AssertionError("bad pair level %d" % sig)
        if len(self._rev) != len(self._nodes):
            raise AssertionError("reverse map size drift")
        # Free intervals: sorted, disjoint, and they complement the used ids.
        prev = 0
        covered = 0
        for lo, hi in self._free:
            if not (1 <= lo < hi <= self.limit) or lo <= prev:
                raise AssertionError("bad free interval [%d,%d)" % (lo, hi))
            prev = hi
            covered += hi - lo
        for sig in self._nodes:
            i = bisect_left(self._free, [sig + 1]) - 1
            if i >= 0 and self._free[i][0] <= sig < self._free[i][1]:
                raise AssertionError("live id %d marked free" % sig)
        if covered + len(self._nodes) != self.limit - 1:
            raise AssertionError("free pool does not complement live ids")
        # Everything must be reachable from pinned signatures.
        seen = set()
        stack = list(self._pins)
        while stack:
            s = stack.pop()
            if s in seen:
                continue
            seen.add(s)
            n = self._nodes[s]
            if n.kind == PAIR:
                stack.extend((n.a, n.b))
            elif n.kind == RUN:
                stack.append(n.a)
        if seen != set(self._nodes):
            raise AssertionError("unreachable live nodes: %s" %
                                 sorted(set(self._nodes) - seen)[:5])
