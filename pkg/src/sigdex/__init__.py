"""Compressed dynamic strings over run-length grammars.

Texts are stored as canonical run-length grammars built by a local,
deterministic parse.  Equal substrings share signatures, so equality is a
signature comparison, longest-common-extension queries run on the grammar,
edits touch polylogarithmically many nodes, and an optional index answers
substring searches without decompression.
"""

__version__ = "0.1.0"

from .engine import Engine
from .index import IndexPlane, PrimaryOcc
from .params import EngineConfig, ParseParams
from .queries import VisitCounter, lce, lce_backward, lcp_sig, lcs_sig
from .slp import Slp
from .store import SigStore
from .variables import VariableOps

__all__ = [
    "Engine",
    "EngineConfig",
    "IndexPlane",
    "ParseParams",
    "PrimaryOcc",
    "SigStore",
    "Slp",
    "VariableOps",
    "VisitCounter",
    "lce",
    "lce_backward",
    "lcp_sig",
    "lcs_sig",
    "__version__",
]
