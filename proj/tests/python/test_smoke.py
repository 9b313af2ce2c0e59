import json
import os

import pytest

import ragc


def test_round_trip_every_cell():
    data = b"abracadabra " * 50 + bytes(range(256))
    for algo in ragc.ALGORITHMS:
        for enc in ragc.ENCODINGS:
            if enc == "pairpge" and algo != "repair":
                with pytest.raises(ValueError, match="applied it neither to MR-RePair"):
                    ragc.compress(data, algo, enc)
                continue
            assert ragc.decompress(ragc.compress(data, algo, enc)) == data


def test_empty_input_is_a_header():
    f = ragc.compress(b"", "repair", "fble")
    assert len(f) == 9
    assert ragc.decompress(f) == b""


def test_stats_identities():
    s = ragc.grammar_stats(b"a" * 8, "rlmr")
    assert (s["d"], s["tau_length"], s["size"]) == (1, 1, 5)
    s = ragc.grammar_stats(b"abc", "repair")
    assert (s["d"], s["tau_length"], s["size"]) == (0, 3, 6)
    st = ragc.stats(ragc.compress(b"abab" * 100, "mr", "poppt-pge", epsilon=6))
    assert st["epsilon"] == 6
    assert st["size"] == st["sigma"] + st["rhs_total"] + st["tau_length"]
    assert st["n"] == 400


def test_corrupt_input_raises():
    f = bytearray(ragc.compress(b"hello hello hello", "repair", "huffman"))
    f[0] ^= 0xFF
    with pytest.raises(ragc.CorruptError):
        ragc.decompress(bytes(f))
    with pytest.raises(ValueError):
        ragc.compress(b"x", "nope", "fble")


def test_bench_report(tmp_path):
    (tmp_path / "rep").write_bytes(os.urandom(512) * 64)
    (tmp_path / "rnd").write_bytes(os.urandom(32768))
    report = ragc.bench(tmp_path, reps=2)
    files = {os.path.basename(f["path"]): f for f in report["files"]}
    assert all(len(f["cells"]) == 19 for f in files.values())
    assert all(c["verified"] for f in files.values() for c in f["cells"])
    best = {k: min(c["ratio_percent"] for c in f["cells"]) for k, f in files.items()}
    assert best["rep"] * 10 < best["rnd"]
    json.dumps(report)
