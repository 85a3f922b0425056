import numpy as np
import pytest

from xcrush import analysis
from xcrush.analysis import measure_avalanche, measure_c_distribution, prng_sanity
from xcrush.cipher import encrypt_block
from xcrush.keyschedule import CipherKey, expand_key


def test_flip_masks_msb_first():
    m = analysis.flip_masks()
    assert int(m[0, 0]) == 1 << 63
    assert int(m[63, 0]) == 1
    assert int(m[64, 1]) == 1 << 63
    assert int(m[255, 3]) == 1
    assert (np.count_nonzero(m, axis=1) == 1).all()


def test_avalanche_deterministic():
    a = measure_avalanche(3, True, 1, rng_seed=42)
    b = measure_avalanche(3, True, 1, rng_seed=42)
    assert np.array_equal(a.matrix, b.matrix)
    assert a.to_kv() == b.to_kv()


def test_avalanche_report_invariants():
    r = measure_avalanche(2, False, 50, rng_seed=3)
    assert r.matrix.shape == (256, 256)
    assert ((r.matrix >= 0) & (r.matrix <= 1)).all()
    assert r.mean_flip_fraction == pytest.approx(r.matrix.mean())
    assert 0 <= r.min_flipped <= r.max_flipped <= 256


def test_avalanche_chunking_independent(monkeypatch):
    a = measure_avalanche(3, True, 300, rng_seed=5)
    monkeypatch.setattr(analysis, "_CHUNK", 37)
    b = measure_avalanche(3, True, 300, rng_seed=5)
    assert np.array_equal(a.matrix, b.matrix)


def test_avalanche_full_cipher_uses_encrypt_block():
    # Recompute one trial by hand with the scalar cipher and compare rows.
    rng = np.random.default_rng(9)
    key = tuple(int(w) for w in analysis._random_words(rng, (1, 4))[0])
    pt = tuple(int(w) for w in analysis._random_words(rng, (1, 4))[0])
    sk = expand_key(CipherKey(key))
    base = encrypt_block(pt, sk)
    expected = np.zeros((256, 256))
    for i in range(256):
        flipped = list(pt)
        flipped[i // 64] ^= 1 << (63 - i % 64)
        out = encrypt_block(flipped, sk)
        bits = "".join(f"{a ^ b:064b}" for a, b in zip(base, out))
        expected[i] = [int(c) for c in bits]
    report = measure_avalanche(3, True, 1, rng_seed=9)
    assert np.array_equal(report.matrix, expected)


def test_one_round_diffuses_less():
    r1 = measure_avalanche(1, False, 200, rng_seed=1)
    r3 = measure_avalanche(3, True, 200, rng_seed=1)
    assert r1.mean_flip_fraction < r3.mean_flip_fraction
    assert r1.matrix.min() < 0.1


def test_avalanche_validation():
    with pytest.raises(ValueError):
        measure_avalanche(3, True, 0)
    with pytest.raises(ValueError):
        measure_avalanche(4, True, 1)


def test_cdist_identity_region():
    r = measure_c_distribution(0, 64, "increment")
    assert r.distinct_values == 64
    assert (r.histogram == 1).all()


def test_cdist_single_input():
    r = measure_c_distribution(0xDEADBEEF, 1)
    assert np.count_nonzero(r.histogram) == 1
    assert r.count == 1


def test_cdist_increment_spread():
    r = measure_c_distribution(0x0123456789ABCDEF, 65536, "increment")
    assert r.count == 65536
    assert r.distinct_values >= 60


def test_cdist_low_hamming():
    r = measure_c_distribution(0x0123456789ABCDEF, 20000, "random-low-hamming", rng_seed=2)
    assert r.count == 20000
    assert r.distinct_values >= 32
    again = measure_c_distribution(0x0123456789ABCDEF, 20000, "random-low-hamming", rng_seed=2)
    assert np.array_equal(r.histogram, again.histogram)


def test_cdist_validation():
    with pytest.raises(ValueError):
        measure_c_distribution(0, 0)
    with pytest.raises(ValueError):
        measure_c_distribution(0, 10, "bogus")


def test_prng_sanity_minimum():
    key = CipherKey((1, 2))
    assert prng_sanity(key, 1000).n == 1000
    with pytest.raises(ValueError):
        prng_sanity(key, 999)


def test_prng_sanity_deterministic():
    key = CipherKey((7, 8, 9))
    assert prng_sanity(key, 5000).to_kv() == prng_sanity(key, 5000).to_kv()


def test_prng_sanity_monobit():
    key = CipherKey.from_hex("3f" * 32)
    r = prng_sanity(key, 100_000)
    assert 0.49 <= r.one_bit_fraction <= 0.51
    assert r.passed is True
    assert abs(r.serial_correlation) < 0.02


def test_kv_format():
    r = measure_c_distribution(0, 64)
    lines = r.to_kv().splitlines()
    assert "cdist.distinct_values=64" in lines
    assert all(line.count("=") == 1 for line in lines)
