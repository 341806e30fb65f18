"""Straight-line programs: type, file format, DFS import, export.

Rules are 1-indexed: X_i is either ("C", byte) or ("P", l, r) with
l, r < i, and the start variable is X_n.  The importer walks the
derivation tree depth-first; the first visit of each variable expands
its definition (a literal insert for terminals), every later visit
copies the recorded first occurrence, so the whole import issues O(n)
edit operations regardless of the derived length.
"""

from .store import CHAR, PAIR, RUN
from .updater import insert, insert_copy


class Slp:
    """Validated straight-line program; start symbol is the last rule."""

    __slots__ = ("rules",)

    def __init__(self, rules):
        self.rules = [None] + [tuple(r) for r in rules]
        self._validate()

    @property
    def n(self):
        return len(self.rules) - 1

    def _validate(self):
        if self.n < 1:
            raise ValueError("an SLP needs at least one rule")
        bodies = set()
        for i in range(1, self.n + 1):
            r = self.rules[i]
            if r[0] == "C":
                if len(r) != 2 or not 0 <= r[1] <= 255:
                    raise ValueError("bad terminal rule for %d" % i)
            elif r[0] == "P":
                if len(r) != 3 or not (1 <= r[1] < i and 1 <= r[2] < i):
                    raise ValueError("bad pair rule for %d" % i)
            else:
                raise ValueError("unknown rule kind %r" % (r[0],))
            if r in bodies:
                raise ValueError("redundant rule %d" % i)
            bodies.add(r)
        seen = set()
        stack = [self.n]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            r = self.rules[x]
            if r[0] == "P":
                stack.append(r[1])
                stack.append(r[2])
        if len(seen) != self.n:
            raise ValueError("useless variables: %s"
                             % sorted(set(range(1, self.n + 1)) - seen))

    def lengths(self):
        """val lengths for X_0(unused)..X_n."""
        out = [0] * (self.n + 1)
        for i in range(1, self.n + 1):
            r = self.rules[i]
            out[i] = 1 if r[0] == "C" else out[r[1]] + out[r[2]]
        return out

    def expand(self, i=None, cap=1 << 24):
        """Naive val(X_i) (default: start), guarded by a length cap."""
        i = self.n if i is None else i
        lens = self.lengths()
        if lens[i] > cap:
            raise ValueError("expansion longer than cap")
        memo = {}

        def val(x):
            if x in memo:
                return memo[x]
            r = self.rules[x]
            s = bytes([r[1]]) if r[0] == "C" else val(r[1]) + val(r[2])
            memo[x] = s
            return s

        order = []
        stack = [(i, False)]
        done = set()
        while stack:
            x, ready = stack.pop()
            if x in done:
                continue
            if ready:
                done.add(x)
                order.append(x)
                continue
            stack.append((x, True))
            r = self.rules[x]
            if r[0] == "P":
                stack.append((r[1], False))
                stack.append((r[2], False))
        for x in order:
            val(x)
        return memo[i]


def serialize_slp(slp):
    lines = ["SLP %d" % slp.n]
    for i in range(1, slp.n + 1):
        r = slp.rules[i]
        if r[0] == "C":
            lines.append("%d C %d" % (i, r[1]))
        else:
            lines.append("%d P %d %d" % (i, r[1], r[2]))
    return "\n".join(lines) + "\n"


def parse_slp_file(data):
    lines = [ln for ln in data.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty SLP file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "SLP":
        raise ValueError("missing SLP header")
    n = int(head[1])
    if len(lines) - 1 != n:
        raise ValueError("rule count does not match header")
    rules = [None] * (n + 1)
    for ln in lines[1:]:
        parts = ln.split()
        i = int(parts[0])
        if not 1 <= i <= n or rules[i] is not None:
            raise ValueError("bad or duplicate rule index %d" % i)
        if parts[1] == "C" and len(parts) == 3:
            rules[i] = ("C", int(parts[2]))
        elif parts[1] == "P" and len(parts) == 4:
            rules[i] = ("P", int(parts[2]), int(parts[3]))
        else:
            raise ValueError("bad rule line %r" % ln)
    return Slp(rules[1:])


def build_from_slp_gfact(store, slp, params, stats=None):
    """Import an SLP by first-occurrence factorization.

    Returns the root signature, unpinned.  stats (optional dict)
    receives ops (edit operations issued) and peak_nodes.
    """
    lens = slp.lengths()
    first = {}
    root = None
    done = 0
    ops = 0
    peak = 0
    stack = [slp.n]
    while stack:
        x = stack.pop()
        rule = slp.rules[x]
        step = None
        if x in first:
            step = ("C", first[x], lens[x])
        elif rule[0] == "C":
            first[x] = done + 1
            step = ("L", rule[1])
        else:
            first[x] = done + 1
            stack.append(rule[2])
            stack.append(rule[1])
        if step is None:
            continue
        with store.track() as temp:
            if step[0] == "L":
                new = insert(store, root, bytes([step[1]]), done + 1, params)
                done += 1
            else:
                new = insert_copy(store, root, step[1], step[2],
                                  done + 1, params)
                done += step[2]
            store.pin(new)
        if root is not None:
            store.unpin(root)
            store.remove_useless(root)
        store.sweep(temp)
        root = new
        ops += 1
        if len(store) > peak:
            peak = len(store)
    if stats is not None:
        stats["ops"] = ops
        stats["peak_nodes"] = peak
    store.unpin(root)
    return root


def export_to_slp(store, root):
    """Convert the grammar under root into a strict binary SLP.

    Pairs map one-to-one onto pair rules; a run with exponent k becomes
    at most 2*ceil(log2 k) doubling and combining rules; exponent-1 runs
    alias their base variable without a rule of their own.
    """
    if root is None:
        raise ValueError("nothing to export")
    rules = []
    var = {}
    pair_var = {}

    def emit_pair(l, r):
        key = (l, r)
        if key not in pair_var:
            rules.append(("P", l, r))
            pair_var[key] = len(rules)
        return pair_var[key]

    stack = [(root, False)]
    while stack:
        sig, ready = stack.pop()
        if sig in var:
            continue
        nd = store.node(sig)
        if not ready:
            stack.append((sig, True))
            if nd.kind == RUN:
                stack.append((nd.a, False))
            elif nd.kind == PAIR:
                stack.append((nd.b, False))
                stack.append((nd.a, False))
            continue
        if nd.kind == CHAR:
            rules.append(("C", nd.a))
            var[sig] = len(rules)
        elif nd.kind == PAIR:
            var[sig] = emit_pair(var[nd.a], var[nd.b])
        else:
            base, k = var[nd.a], nd.b
            if k == 1:
                var[sig] = base
                continue
            powers = [base]
            p = 1
            while 2 * p <= k:
                powers.append(emit_pair(powers[-1], powers[-1]))
                p *= 2
            acc = None
            for j in range(len(powers) - 1, -1, -1):
                if k & (1 << j):
                    acc = powers[j] if acc is None else \
                        emit_pair(acc, powers[j])
            var[sig] = acc
    if var[root] != len(rules):
        raise AssertionError("start variable is not the last rule")
    return Slp(rules)
