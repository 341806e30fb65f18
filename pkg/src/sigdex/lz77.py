"""LZ77 factorization: parser, decoder, file format, and import.

Factors are ("L", byte) literals or ("C", src, length) copies, with src
1-based and every copy's source interval lying entirely inside the text
produced before it (no self-references).  The parser is the naive
leftmost-occurrence scan: quadratic in the worst case, which is fine at
the scales this package targets, and entirely deterministic.
"""

from .updater import insert, insert_copy


def lz77_parse(text):
    """Greedy factorization: each factor is the longest prefix of the
    rest that occurs in the already-parsed prefix, leftmost source."""
    if len(text) == 0:
        raise ValueError("cannot parse an empty text")
    factors = []
    p = 0
    n = len(text)
    while p < n:
        # Largest L such that text[p:p+L] occurs ending at or before p.
        lo, hi = 0, min(n - p, p)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if text.find(text[p:p + mid], 0, p) >= 0:
                lo = mid
            else:
                hi = mid - 1
        if lo == 0:
            factors.append(("L", text[p]))
            p += 1
        else:
            src = text.find(text[p:p + lo], 0, p)
            factors.append(("C", src + 1, lo))
            p += lo
    return factors


def lz77_decode(factors):
    """Expand a factorization back into bytes, validating as it goes."""
    out = bytearray()
    for k, f in enumerate(factors):
        if f[0] == "L":
            byte = f[1]
            if not 0 <= byte <= 255:
                raise ValueError("literal byte out of range")
            out.append(byte)
        elif f[0] == "C":
            _, src, ln = f
            if ln < 1:
                raise ValueError("copy length must be positive")
            if src < 1 or src + ln - 1 > len(out):
                raise ValueError("copy source escapes the built prefix")
            out += out[src - 1:src - 1 + ln]
        else:
            raise ValueError("unknown factor kind %r" % (f[0],))
        if k == 0 and f[0] != "L":
            raise ValueError("first factor must be a literal")
    return bytes(out)


def build_from_lz77(store, factors, params, stats=None):
    """Import a factorization: literals insert, copies copy-insert.

    Returns the root signature, unpinned.  When stats is a dict it
    receives peak_nodes, the largest live store size during the build.
    """
    lz77_decode(factors[:1])  # validates the leading literal
    root = None
    done = 0
    peak = 0
    for f in factors:
        if f[0] == "L":
            piece, ln = bytes([f[1]]), 1
        else:
            _, src, ln = f
            if src + ln - 1 > done:
                raise ValueError("copy source escapes the built prefix")
        with store.track() as temp:
            if f[0] == "L":
                new = insert(store, root, piece, done + 1, params)
            else:
                new = insert_copy(store, root, src, ln, done + 1, params)
            store.pin(new)
        if root is not None:
            store.unpin(root)
            store.remove_useless(root)
        store.sweep(temp)
        root = new
        done += ln
        if len(store) > peak:
            peak = len(store)
    if stats is not None:
        stats["peak_nodes"] = peak
    store.unpin(root)
    return root


def serialize_lz77(factors):
    lines = ["LZ77"]
    for f in factors:
        if f[0] == "L":
            lines.append("L %d" % f[1])
        else:
            lines.append("C %d %d" % (f[1], f[2]))
    return "\n".join(lines) + "\n"


def parse_lz77_file(data):
    lines = [ln for ln in data.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "LZ77":
        raise ValueError("missing LZ77 header")
    factors = []
    built = 0
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "L" and len(parts) == 2:
            byte = int(parts[1])
            if not 0 <= byte <= 255:
                raise ValueError("literal byte out of range")
            factors.append(("L", byte))
            built += 1
        elif parts[0] == "C" and len(parts) == 3:
            src, cln = int(parts[1]), int(parts[2])
            if cln < 1 or src < 1 or src + cln - 1 > built:
                raise ValueError("bad copy factor %r" % ln)
            factors.append(("C", src, cln))
            built += cln
        else:
            raise ValueError("bad factor line %r" % ln)
    if not factors:
        raise ValueError("empty factorization")
    if factors[0][0] != "L":
        raise ValueError("first factor must be a literal")
    return factors
