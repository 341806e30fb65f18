"""Command-line front door.

Builds engine dumps from raw text, LZ77 parses or grammar files, runs
extension queries and edits against a dump, searches patterns, sorts
grammar variables, exports grammars, and verifies invariants.  Every
answer is machine-readable, one line per answer, and identical
invocations print identical bytes; only the timing column of `bench`
is exempt.
"""

import argparse
import sys
import time

from .engine import Engine, SLP_BUILDERS, TEXT_BUILDERS
from .lz77 import parse_lz77_file
from .params import EngineConfig
from .queries import VisitCounter
from .slp import parse_slp_file, serialize_slp
from .variables import VariableOps


def _read_bytes(path):
    with open(path, "rb") as f:
        return f.read()


def _write_text(path, data):
    with open(path, "w", encoding="ascii") as f:
        f.write(data)


def _load(path):
    return Engine.from_dump(_read_bytes(path).decode("ascii"))


def _emit_query_stats(counter):
    print("nodes_visited=%d" % counter.n)


def _parser():
    top = argparse.ArgumentParser(
        prog="sigdex",
        description="compressed dynamic strings: build, query, edit, "
                    "search")
    sub = top.add_subparsers(dest="cmd", required=True)

    def dag(p):
        p.add_argument("--dag", required=True, help="engine dump file")

    def out(p, required=False):
        p.add_argument("--out", required=required,
                       help="output file (default: the --dag file)")

    def stats_flag(p):
        p.add_argument("--stats", action="store_true",
                       help="also print query statistics as key=value")

    p = sub.add_parser("build", help="parse an input file into a dump")
    p.add_argument("input", help="input file")
    p.add_argument("--from", dest="fmt", default="text",
                   choices=["text", "lz77", "slp"])
    p.add_argument("--builder", default=None,
                   help="text: naive|linear, slp: gfact|levelwise")
    p.add_argument("--max-len", type=int, default=None,
                   help="maximum text length the engine must support")
    p.add_argument("--out", required=True)

    p = sub.add_parser("lce", help="longest common extension of two "
                                   "suffixes")
    dag(p)
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    stats_flag(p)

    for name, what in (("lcp", "prefix"), ("lcs", "suffix")):
        p = sub.add_parser(name, help="longest common %s of two dumps"
                           % what)
        p.add_argument("dag_a")
        p.add_argument("dag_b")
        stats_flag(p)

    p = sub.add_parser("insert", help="insert text at a position")
    dag(p)
    p.add_argument("i", type=int)
    p.add_argument("text")
    out(p)

    p = sub.add_parser("insert-copy", help="insert a copy of a substring")
    dag(p)
    p.add_argument("j", type=int)
    p.add_argument("y", type=int)
    p.add_argument("i", type=int)
    out(p)

    p = sub.add_parser("delete", help="delete a substring")
    dag(p)
    p.add_argument("j", type=int)
    p.add_argument("y", type=int)
    out(p)

    p = sub.add_parser("search", help="all occurrences of a pattern")
    dag(p)
    p.add_argument("pattern")
    stats_flag(p)

    p = sub.add_parser("sort-vars", help="variables of a grammar file in "
                                         "lexicographic order")
    p.add_argument("slp", help="grammar file")

    p = sub.add_parser("export-slp", help="export the dump as a grammar "
                                          "file")
    dag(p)
    p.add_argument("--out", required=True)

    p = sub.add_parser("dump", help="print the dump to stdout")
    dag(p)

    p = sub.add_parser("load", help="validate a dump and rewrite it")
    p.add_argument("input")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run the full invariant suite")
    dag(p)

    p = sub.add_parser("stats", help="size figures of a dump")
    p.add_argument("--dag", default=None)

    p = sub.add_parser("bench", help="timing rows for the core operations")
    dag(p)
    return top


def _cmd_build(args, parser):
    raw = _read_bytes(args.input)
    config = EngineConfig(args.max_len) if args.max_len else EngineConfig()
    eng = Engine(config)
    if args.fmt == "text":
        builder = args.builder or "naive"
        if builder not in TEXT_BUILDERS:
            parser.error("--builder must be naive or linear for text")
        eng.set_text(raw, builder)
    elif args.fmt == "lz77":
        if args.builder:
            parser.error("--builder does not apply to lz77 input")
        eng.set_from_lz77(parse_lz77_file(raw.decode("ascii")))
    else:
        builder = args.builder or "levelwise"
        if builder not in SLP_BUILDERS:
            parser.error("--builder must be gfact or levelwise for slp")
        eng.set_from_slp(parse_slp_file(raw.decode("ascii")), builder)
    _write_text(args.out, eng.dump())
    return 0


def _cmd_edit(args):
    eng = _load(args.dag)
    if args.cmd == "insert":
        eng.insert(args.i, args.text.encode("utf-8"))
    elif args.cmd == "insert-copy":
        eng.insert_copy(args.j, args.y, args.i)
    else:
        eng.delete(args.j, args.y)
    _write_text(args.out or args.dag, eng.dump())
    return 0


def _cmd_bench(eng):
    print("op,input_size,answer,nodes_visited,micros")
    n = eng.text_length
    if not n:
        return 0

    def row(op, fn, counted):
        t0 = time.perf_counter_ns()
        answer = fn()
        micros = (time.perf_counter_ns() - t0) // 1000
        print("%s,%d,%d,%d,%d" % (op, n, answer, counted(), micros))

    c = VisitCounter()
    row("lce", lambda: eng.lce(1, n // 2 + 1, c), lambda: c.n)
    c2 = VisitCounter()
    row("lce_backward", lambda: eng.lce_backward(n, max(1, n // 3), c2),
        lambda: c2.n)
    pat = eng.expand(max(1, n // 3), min(8, n))
    idx = eng.enable_index()
    row("search", lambda: len(eng.search(pat)),
        lambda: idx.stats["points_reported"])
    return 0


def main(argv=None):
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        if args.cmd == "build":
            return _cmd_build(args, parser)
        if args.cmd == "lce":
            eng = _load(args.dag)
            c = VisitCounter()
            print(eng.lce(args.i, args.j, c))
            if args.stats:
                _emit_query_stats(c)
            return 0
        if args.cmd in ("lcp", "lcs"):
            a = _load(args.dag_a)
            b = _load(args.dag_b)
            c = VisitCounter()
            print(a.lcp(b, c) if args.cmd == "lcp" else a.lcs(b, c))
            if args.stats:
                _emit_query_stats(c)
            return 0
        if args.cmd in ("insert", "insert-copy", "delete"):
            return _cmd_edit(args)
        if args.cmd == "search":
            eng = _load(args.dag)
            hits = eng.search(args.pattern.encode("utf-8"))
            print(" ".join(str(h) for h in hits))
            if args.stats:
                for key, val in eng.index.stats.items():
                    print("%s=%d" % (key, val))
            return 0
        if args.cmd == "sort-vars":
            slp = parse_slp_file(_read_bytes(args.slp).decode("ascii"))
            eng = Engine()
            ops = VariableOps(eng.store, slp, eng.params)
            print(" ".join(str(v) for v in ops.sort_variables()))
            return 0
        if args.cmd == "export-slp":
            _write_text(args.out, serialize_slp(_load(args.dag).to_slp()))
            return 0
        if args.cmd == "dump":
            sys.stdout.write(_load(args.dag).dump())
            return 0
        if args.cmd == "load":
            eng = Engine.from_dump(_read_bytes(args.input).decode("ascii"))
            eng.store.audit()
            _write_text(args.out, eng.dump())
            return 0
        if args.cmd == "verify":
            eng = _load(args.dag)
            eng.enable_index()
            eng.verify()
            print("ok")
            return 0
        if args.cmd == "stats":
            eng = _load(args.dag) if args.dag else Engine()
            figures = eng.stats()
            print("N=%d w=%d" % (figures["N"], figures["w"]))
            return 0
        if args.cmd == "bench":
            return _cmd_bench(_load(args.dag))
        parser.error("unknown command")
    except (OSError, ValueError, KeyError, AssertionError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
