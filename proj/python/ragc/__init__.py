"""Grammar compression with RePair, MR-RePair and RL-MR-RePair."""

import json as _json

from ._ragc import (
    ALGORITHMS,
    ENCODINGS,
    CorruptError,
    compress,
    decompress,
    grammar_stats,
    stats,
)
from ._ragc import bench_json as _bench_json


def bench(corpus, algos=("repair", "mr", "rlmr"), encodings=(), reps=1, external=False):
    """Bench a file or directory; returns the report as a dict."""
    return _json.loads(_bench_json(str(corpus), list(algos), list(encodings), reps, external))


__all__ = [
    "ALGORITHMS",
    "ENCODINGS",
    "CorruptError",
    "bench",
    "compress",
    "decompress",
    "grammar_stats",
    "stats",
]
