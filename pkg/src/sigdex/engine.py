"""One dynamic text behind a single facade.

Ties together the store, the builders, the extension queries, the edit
operations and the optional search plane, with the bookkeeping every
caller would otherwise repeat: temporaries are swept after each
operation, the replaced root is released and collected, and the
configured maximum text length is enforced before a new root is
adopted.
"""

from .encoder import encode_text, encode_text_linear
from .index import IndexPlane
from .lz77 import build_from_lz77
from .params import EngineConfig
from .queries import lce, lce_backward, lcp_sig, lcs_sig
from .slp import build_from_slp_gfact, export_to_slp
from .slp_levelwise import build_from_slp_levelwise
from .store import SigStore
from .tower import tower_from_text
from .updater import delete, insert, insert_copy

TEXT_BUILDERS = {
    "naive": encode_text,
    "linear": encode_text_linear,
}

SLP_BUILDERS = {
    "gfact": build_from_slp_gfact,
    "levelwise": build_from_slp_levelwise,
}


class Engine:
    """A store, its pinned root, and an optional search plane."""

    def __init__(self, config=None):
        self.config = config if config is not None else EngineConfig()
        self.store = SigStore(self.config.sig_limit)
        self.root = None
        self.index = None

    @property
    def params(self):
        return self.config.params

    @property
    def text_length(self):
        if self.root is None:
            return 0
        return self.store.node(self.root).length

    # ------------------------------------------------------------------
    # adopting a new root

    def _adopt(self, build):
        """Run a builder or edit, swap the pinned root, collect garbage."""
        old = self.root
        with self.store.track() as temp:
            done = False
            try:
                new = build()
                if new is not None:
                    n = self.store.node(new).length
                    if n > self.config.max_text_len:
                        raise ValueError(
                            "text longer than the configured maximum")
                    self.store.pin(new)
                done = True
            finally:
                if not done:
                    self.store.sweep(temp)
        if old is not None and old != new:
            self.store.unpin(old)
            self.store.remove_useless(old)
        self.store.sweep(temp)
        self.root = new
        return new

    # ------------------------------------------------------------------
    # building

    def set_text(self, text, builder="naive"):
        """Replace the content with a parse of the given bytes."""
        text = bytes(text)
        make = TEXT_BUILDERS[builder]
        self._adopt(
            lambda: make(self.store, text, self.params) if text else None)

    def set_from_lz77(self, factors):
        """Replace the content with a composition of an LZ77 parse."""
        self._adopt(
            lambda: build_from_lz77(self.store, factors, self.params)
            if factors else None)

    def set_from_slp(self, slp, builder="levelwise"):
        """Replace the content with a conversion of a grammar."""
        make = SLP_BUILDERS[builder]
        self._adopt(lambda: make(self.store, slp, self.params))

    # ------------------------------------------------------------------
    # queries

    def expand(self, start=1, length=None):
        if self.root is None:
            if start == 1 and length in (None, 0):
                return b""
            raise ValueError("empty text")
        return self.store.expand(self.root, start, length)

    def _need_root(self):
        if self.root is None:
            raise ValueError("empty text")

    def lce(self, i, j, counter=None):
        """Longest common extension of the suffixes at i and j."""
        self._need_root()
        return lce(self.store, self.root, self.root, i, j, counter)

    def lce_backward(self, i, j, counter=None):
        """Longest common extension, leftwards from i and j inclusive."""
        self._need_root()
        return lce_backward(self.store, self.root, self.root, i, j, counter)

    def _visiting(self, other, op, counter):
        """Run a two-text query, interning the other text if foreign."""
        if self.root is None or other.root is None:
            return 0
        if other.store is self.store:
            return op(self.store, self.root, other.root, counter)
        with self.store.track() as temp:
            twin = tower_from_text(self.store, other.expand(), self.params)
            try:
                return op(self.store, self.root, twin, counter)
            finally:
                self.store.sweep(temp)

    def lcp(self, other, counter=None):
        """Longest common prefix with another engine's text."""
        return self._visiting(other, lcp_sig, counter)

    def lcs(self, other, counter=None):
        """Longest common suffix with another engine's text."""
        return self._visiting(other, lcs_sig, counter)

    # ------------------------------------------------------------------
    # edits

    def insert(self, i, text):
        """Insert bytes so the first one lands at position i."""
        text = bytes(text)
        self._adopt(
            lambda: insert(self.store, self.root, text, i, self.params))

    def insert_copy(self, j, y, i):
        """Insert a copy of the y bytes starting at j, landing at i."""
        self._need_root()
        self._adopt(
            lambda: insert_copy(self.store, self.root, j, y, i, self.params))

    def delete(self, j, y):
        """Delete the y bytes starting at position j."""
        self._need_root()
        self._adopt(
            lambda: delete(self.store, self.root, j, y, self.params))

    # ------------------------------------------------------------------
    # search

    def enable_index(self):
        if self.index is None:
            self.index = IndexPlane(self.store, self.params)
        return self.index

    def disable_index(self):
        if self.index is not None:
            self.index.close()
            self.index = None

    def search(self, pattern):
        """Sorted occurrence positions; builds the plane on first use."""
        return self.enable_index().occurrences(bytes(pattern), self.root)

    # ------------------------------------------------------------------
    # export, dump, stats

    def to_slp(self):
        self._need_root()
        return export_to_slp(self.store, self.root)

    def dump(self):
        return self.store.serialize(self.root)

    @classmethod
    def from_dump(cls, data):
        store, root = SigStore.deserialize(data)
        mtl = max(1, store.limit // 4)
        eng = cls(EngineConfig(mtl, sig_limit=store.limit))
        eng.store = store
        eng.root = root
        return eng

    def stats(self):
        return {"N": self.text_length, "w": len(self.store)}

    def verify(self):
        """Audit the store, the parse and the plane; True or an abort."""
        self.store.audit()
        if self.root is not None:
            before = self.store.created
            again = tower_from_text(self.store, self.expand(), self.params)
            assert again == self.root, "re-parse disagrees with the root"
            assert self.store.created == before, "re-parse minted nodes"
        if self.index is not None:
            self.index.audit()
        return True
