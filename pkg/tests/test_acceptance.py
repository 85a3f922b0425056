"""Exit criteria for the build. Each test records one PASS/FAIL summary line."""

import os
import time

import numpy as np
import pytest

import mutants
from xcrush import bench, oracle
from xcrush.analysis import measure_avalanche, prng_sanity
from xcrush.cipher import decrypt_block, decrypt_blocks, encrypt_block, encrypt_blocks
from xcrush.keyschedule import CipherKey, expand_key, expand_keys_np
from xcrush.modes import Mode, decrypt_stream, encrypt_stream
from xcrush.primitives import avalanche_np, c_function, unavalanche_np
from xcrush.vectors import KNOWN_ANSWERS, check_vectors


def test_01_known_answers(criterion):
    t0 = time.perf_counter()
    ok = True
    for kat in KNOWN_ANSWERS:
        sk = expand_key(CipherKey(kat.key_words))
        ok &= encrypt_block(kat.plaintext_words, sk) == kat.ciphertext_words
        ok &= decrypt_block(kat.ciphertext_words, sk) == kat.plaintext_words
    ok &= all(r.passed for r in check_vectors())
    elapsed = time.perf_counter() - t0
    key_sizes = sorted(len(k.key_words) * 64 for k in KNOWN_ANSWERS)
    criterion(1, "known-answer tests", ok and elapsed < 1.0,
              f"3 vectors x 2 directions, keys {key_sizes}, {elapsed:.3f}s")
    assert ok
    assert key_sizes == [128, 192, 256]
    assert elapsed < 1.0


def test_02_round_trip(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    n = 100_000
    bad = 0
    for w in (2, 3, 4):
        keys = rng.integers(0, 2**64, size=(n, w), dtype=np.uint64)
        blocks = rng.integers(0, 2**64, size=(n, 4), dtype=np.uint64)
        sk = expand_keys_np(keys)
        bad += int((decrypt_blocks(encrypt_blocks(blocks, sk), sk) != blocks).any(axis=1).sum())
    elapsed = time.perf_counter() - t0
    criterion(2, "block round trip", bad == 0 and elapsed < 30,
              f"3 x {n} random (key, block) pairs, {bad} failures, {elapsed:.2f}s")
    assert bad == 0
    assert elapsed < 30


def test_03_primitive_inverse(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    x = rng.integers(0, 2**64, size=1_000_000, dtype=np.uint64)
    a = rng.integers(0, 2**64, size=1_000_000, dtype=np.uint64)
    bad = int((unavalanche_np(avalanche_np(x, a), a) != x).sum())
    elapsed = time.perf_counter() - t0
    criterion(3, "avalanche inverse", bad == 0 and elapsed < 10,
              f"10^6 random pairs, {bad} failures, {elapsed:.2f}s")
    assert bad == 0
    assert elapsed < 10


def test_04_c_function_identity(criterion):
    bad = [x for x in range(64) if c_function(x) != x]
    criterion(4, "C-function identity on [0,63]", not bad, f"{64 - len(bad)}/64 exact")
    assert not bad


def test_05_oracle_equivalence(criterion, oracle_exe, corpus_text):
    fresh = oracle.run_oracle(oracle_exe, oracle.corpus_inputs(303, 5))
    checked_in = oracle.load_corpus(corpus_text)
    problems = oracle.compare_library(fresh) + oracle.compare_library(checked_in)
    cases = fresh + checked_in
    sizes = sorted({c.key_bits for c in cases})
    ok = not problems and len(fresh) >= 300 and len(checked_in) >= 300 and sizes == [128, 192, 256]
    criterion(5, "reference oracle equivalence", ok,
              f"{len(cases)} cases (keys {sizes}), {len(problems)} mismatches")
    assert not problems
    assert len(fresh) >= 300 and len(checked_in) >= 300
    assert sizes == [128, 192, 256]


def test_06_stream_round_trip(criterion):
    rng = np.random.default_rng(6)
    lengths = set(range(0, 4097, 32)) | {1, 31, 33, 63, 65, 4095}
    lengths |= set(int(v) for v in rng.integers(0, 4097, size=120))
    keys = [CipherKey.from_bytes(os.urandom(b)) for b in (16, 24, 32)]
    failures = []
    for n in sorted(lengths):
        msg = rng.bytes(n)
        for key in keys:
            for mode in (Mode.ECB, Mode.CTR):
                if decrypt_stream(encrypt_stream(msg, key, mode), key) != msg:
                    failures.append((n, key.bits, mode.name))
    aligned = sum(1 for n in lengths if n % 32 == 0)
    criterion(6, "stream round trip", not failures and len(lengths) >= 200,
              f"{len(lengths)} lengths ({aligned} multiples of 32) x 3 keys x ECB/CTR, "
              f"{len(failures)} failures")
    assert not failures
    assert len(lengths) >= 200


def test_07_diffusion(criterion):
    t0 = time.perf_counter()
    reports = {r: measure_avalanche(r, r == 3, 10_000, rng_seed=7) for r in (1, 2, 3)}
    elapsed = time.perf_counter() - t0
    full = reports[3]
    mean_ok = abs(full.mean_flip_fraction - 0.5) <= 0.02
    entry_dev = float(np.abs(full.matrix - 0.5).max())
    side = ", ".join(f"r{r}={reports[r].mean_flip_fraction:.4f}" for r in (1, 2, 3))
    ok = mean_ok and entry_dev <= 0.05 and elapsed < 120
    criterion(7, "diffusion", ok,
              f"10^4 trials, mean flip {side}; 3-round max entry |p-0.5|={entry_dev:.4f}, "
              f"{elapsed:.1f}s")
    assert mean_ok
    assert entry_dev <= 0.05
    assert elapsed < 120


def test_08_performance(criterion):
    cpu_hz = float(os.environ.get("XCRUSH_CPU_HZ", 0)) or bench.detect_cpu_hz() or 4e9
    runs = [bench.run_bench(16 * bench.MIB, 11, cpu_hz) for _ in range(3)]
    medians = [r.throughput for r in runs]
    variation = (max(medians) - min(medians)) / min(medians)
    cpb = max(r.cycles_per_byte for r in runs)
    checksums = {r.checksum for r in runs}
    ok = variation < 0.10 and cpb <= 100 and len(checksums) == 1
    criterion(8, "throughput", ok,
              f"medians {', '.join(f'{m / bench.MIB:.1f}' for m in medians)} MiB/s, "
              f"variation {variation:.1%}, {cpb:.1f} cycles/byte at {cpu_hz / 1e9:.2f} GHz")
    assert len(checksums) == 1
    assert variation < 0.10
    assert cpb <= 100


def test_09_prng_sanity(criterion):
    key = CipherKey.from_hex("0123456789abcdeffedcba98765432100f1e2d3c4b5a69788796a5b4c3d2e1f0")
    first = prng_sanity(key, 100_000)
    second = prng_sanity(key, 100_000)
    in_range = 0.49 <= first.one_bit_fraction <= 0.51
    same = first.to_kv() == second.to_kv()
    criterion(9, "PRNG sanity", in_range and same,
              f"one-bit fraction {first.one_bit_fraction:.5f} over 10^5 outputs, "
              f"reproducible={same}")
    assert in_range
    assert same


@pytest.mark.parametrize("name,kwargs", [
    ("round-key order", dict(encrypt=mutants.encrypt_swapped_round_keys,
                             decrypt=mutants.decrypt_swapped_round_keys)),
    ("word-update order", dict(encrypt=mutants.encrypt_reversed_updates)),
    ("byte order", dict(to_bytes=mutants.block_to_bytes_le,
                        from_bytes=mutants.block_from_bytes_le)),
])
def test_10_mutation_sensitivity(criterion, name, kwargs):
    results = check_vectors(**kwargs)
    caught = not all(r.passed for r in results)
    criterion(10, f"mutation sensitivity ({name})", caught,
              f"{sum(not r.passed for r in results)}/{len(results)} KAT checks fail")
    assert caught
