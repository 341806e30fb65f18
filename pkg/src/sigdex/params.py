"""Shared numeric parameters for the parse pipeline.

Every component that computes block boundaries must agree on the same
constants, so they are derived once from the signature-universe bound and
carried around as a single object.
"""

import math


def log_star(x):
    """Iterated base-2 logarithm.

    Number of times log2 must be applied to x before the value drops to
    1 or below.  log_star(1) == 0, log_star(2) == 1, log_star(16) == 3,
    log_star(65536) == 4.
    """
    if x <= 1:
        return 0
    n = 0
    v = float(x)
    while v > 1.0:
        v = math.log2(v)
        n += 1
    return n


class ParseParams:
    """Constants that define the deterministic block-boundary function.

    universe   -- strict upper bound on signature ids (the color space.)
    passes     -- bit-reduction passes applied before color elimination.
    delta_l    -- how far to the left a boundary bit can depend on values.
    delta_r    -- same for the right side.
    window     -- head/tail window length kept per grammar variable by the
                  level-synchronous importer.
    core_bound -- run-count threshold below which a level stops splitting
                  off cut affixes and freezes into an explicit core.
    """

    def __init__(self, universe):
        if universe < 256:
            raise ValueError("universe must be at least 256")
        self.universe = universe
        self.log_star_u = log_star(universe)
        self.passes = self.log_star_u + 2
        self.delta_l = self.log_star_u + 8
        self.delta_r = 4
        # Context supplied around explicit segments when re-deriving bits.
        self.ctx_l = self.delta_l + 6
        self.ctx_r = self.delta_r + 2
        # Cut affix length ranges (left cut ends at a block boundary, right
        # cut starts at one; boundaries occur at least every 4 positions).
        self.lcut_min = self.delta_l
        self.lcut_max = self.delta_l + 3
        self.rcut_min = self.delta_r + 1
        self.rcut_max = self.delta_r + 4
        # A level with at most this many maximal runs freezes.
        self.core_bound = self.delta_l + self.delta_r + 9
        # Per-variable window length used by the level-synchronous importer.
        self.window = self.delta_l + self.delta_r + 4

    def __repr__(self):
        return "ParseParams(universe=%d, passes=%d, delta_l=%d, delta_r=%d)" % (
            self.universe, self.passes, self.delta_l, self.delta_r)


class EngineConfig:
    """Capacity settings for one engine instance.

    max_text_len bounds the text the engine will hold; sig_limit is the
    documented cap on live signatures (audited, not enforced per
    allocation).  Parse constants are derived from a roomier power-of-two
    bound so transient allocations never change the parse function.
    """

    def __init__(self, max_text_len=1 << 20, sig_limit=None):
        if max_text_len < 1:
            raise ValueError("max_text_len must be positive")
        self.max_text_len = max_text_len
        self.sig_limit = sig_limit if sig_limit is not None else 4 * max_text_len
        bound = max(1 << 16, 16 * max_text_len)
        self.params = ParseParams(bound)
        # Calibration constants: multiplicative slack over the asymptotic
        # bounds, checked by the test suite wherever a bound is asserted.
        self.c_uniq = 16      # run count of a common sequence
        self.c_access = 64    # node visits per substring extraction / query
        self.c_edit = 64      # signature churn per edit
        self.c_lz = 32        # store size after an LZ77 import
        self.c_state = 64     # peak working state of the levelwise importer
        self.c_export = 4     # exported SLP size over store size x log N

    def __repr__(self):
        return "EngineConfig(max_text_len=%d, sig_limit=%d)" % (
            self.max_text_len, self.sig_limit)
