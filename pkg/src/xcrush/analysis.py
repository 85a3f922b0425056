"""Empirical diffusion and distribution measurements.

All experiments draw their inputs from an explicitly seeded numpy
``Generator`` that is independent of the cipher's own PRNG, and all inputs
are drawn up front so results do not depend on the chunking used to
evaluate them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cipher import encrypt_blocks
from .keyschedule import CipherKey, NUM_SUBKEYS, WARMUP_ROUNDS, expand_keys_np, prng_stream
from .primitives import c_function_np
from .report import format_kv, format_text

BLOCK_BITS = 256
_CHUNK = 256


def _random_words(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.integers(0, 2**64, size=shape, dtype=np.uint64, endpoint=False)


def _bits(blocks: np.ndarray) -> np.ndarray:
    """Unpack ``(..., 4)`` uint64 blocks into ``(..., 256)`` bits, MSB of word 1 first."""
    be = np.ascontiguousarray(blocks).astype(">u8")
    raw = be.view(np.uint8).reshape(blocks.shape[:-1] + (32,))
    return np.unpackbits(raw, axis=-1)


def flip_masks() -> np.ndarray:
    """``(256, 4)`` masks; row ``i`` flips bit ``i`` in MSB-first block order."""
    masks = np.zeros((BLOCK_BITS, 4), dtype=np.uint64)
    for i in range(BLOCK_BITS):
        masks[i, i // 64] = np.uint64(1) << np.uint64(63 - i % 64)
    return masks


@dataclass
class AvalancheReport:
    rounds: int
    whiten: bool
    samples: int
    key_bits: int
    rng_seed: int
    mean_flip_fraction: float
    min_flipped: int
    max_flipped: int
    matrix: np.ndarray = field(repr=False)

    def metrics(self) -> dict:
        return {
            "rounds": self.rounds,
            "whiten": self.whiten,
            "samples": self.samples,
            "key_bits": self.key_bits,
            "seed": self.rng_seed,
            "mean_flip_fraction": self.mean_flip_fraction,
            "min_flipped_bits": self.min_flipped,
            "max_flipped_bits": self.max_flipped,
            "matrix_min": float(self.matrix.min()),
            "matrix_max": float(self.matrix.max()),
            "max_abs_bias": float(np.abs(self.matrix - 0.5).max()),
        }

    def to_text(self) -> str:
        return format_text(f"avalanche, {self.rounds} round(s)", self.metrics())

    def to_kv(self) -> str:
        return format_kv({f"avalanche.r{self.rounds}.{k}": v for k, v in self.metrics().items()})


def measure_avalanche(rounds: int = 3, whiten: bool = True, samples: int = 10_000,
                      rng_seed: int = 0, key_bits: int = 256) -> AvalancheReport:
    """Estimate P(output bit j flips | input bit i flips) over random keys and plaintexts.

    ``matrix[i, j]`` uses the MSB-first bit numbering of :func:`flip_masks`.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if rounds not in (1, 2, 3):
        raise ValueError(f"rounds must be 1, 2 or 3, got {rounds}")
    if key_bits not in (128, 192, 256):
        raise ValueError(f"key_bits must be 128, 192 or 256, got {key_bits}")
    rng = np.random.default_rng(rng_seed)
    keys = _random_words(rng, (samples, key_bits // 64))
    plaintexts = _random_words(rng, (samples, 4))
    masks = flip_masks()

    counts = np.zeros((BLOCK_BITS, BLOCK_BITS), dtype=np.int64)
    lo, hi = BLOCK_BITS, 0
    for start in range(0, samples, _CHUNK):
        pt = plaintexts[start:start + _CHUNK]
        sk = expand_keys_np(keys[start:start + _CHUNK])
        n = len(pt)
        base = encrypt_blocks(pt, sk, rounds, whiten)
        flipped = (pt[None, :, :] ^ masks[:, None, :]).reshape(-1, 4)
        out = encrypt_blocks(flipped, np.tile(sk, (BLOCK_BITS, 1)), rounds, whiten)
        diff = _bits(out.reshape(BLOCK_BITS, n, 4) ^ base[None, :, :])
        counts += diff.sum(axis=1, dtype=np.int64)
        per_trial = diff.sum(axis=2, dtype=np.int64)
        lo = min(lo, int(per_trial.min()))
        hi = max(hi, int(per_trial.max()))

    matrix = counts / samples
    return AvalancheReport(rounds, whiten, samples, key_bits, rng_seed,
                           float(matrix.mean()), lo, hi, matrix)


@dataclass
class DistributionReport:
    histogram: np.ndarray
    distinct_values: int
    chi_square: float

    @property
    def count(self) -> int:
        return int(self.histogram.sum())

    def metrics(self) -> dict:
        return {
            "count": self.count,
            "distinct_values": self.distinct_values,
            "chi_square": self.chi_square,
            "min_bin": int(self.histogram.min()),
            "max_bin": int(self.histogram.max()),
        }

    def to_text(self) -> str:
        return format_text("C-function output distribution", self.metrics())

    def to_kv(self) -> str:
        return format_kv({f"cdist.{k}": v for k, v in self.metrics().items()})


def measure_c_distribution(base: int, count: int, stride: str = "increment",
                           rng_seed: int = 0, max_flips: int = 3) -> DistributionReport:
    """Histogram of C-function outputs over inputs close to ``base``.

    ``increment`` uses ``base + i`` (mod 2**64); ``random-low-hamming`` XORs
    ``base`` with random masks of 1..``max_flips`` set bits.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if stride == "increment":
        xs = np.uint64(base) + np.arange(count, dtype=np.uint64)
    elif stride == "random-low-hamming":
        rng = np.random.default_rng(rng_seed)
        xs = np.full(count, base, dtype=np.uint64)
        nflips = rng.integers(1, max_flips + 1, size=count)
        for k in range(max_flips):
            pos = rng.integers(0, 64, size=count).astype(np.uint64)
            bit = np.where(nflips > k, np.uint64(1) << pos, np.uint64(0)).astype(np.uint64)
            xs ^= bit
    else:
        raise ValueError(f"unknown stride {stride!r}")
    hist = np.bincount(c_function_np(xs).astype(np.int64), minlength=64)
    expected = count / 64
    chi2 = float(((hist - expected) ** 2 / expected).sum())
    return DistributionReport(hist, int(np.count_nonzero(hist)), chi2)


@dataclass
class PrngReport:
    key_bits: int
    n: int
    one_bit_fraction: float
    serial_correlation: float
    byte_chi_square: float

    @property
    def passed(self) -> bool | None:
        """Monobit check; only meaningful for ``n >= 10**5``."""
        if self.n < 100_000:
            return None
        return 0.49 <= self.one_bit_fraction <= 0.51

    def metrics(self) -> dict:
        return {
            "key_bits": self.key_bits,
            "n": self.n,
            "one_bit_fraction": self.one_bit_fraction,
            "serial_correlation": self.serial_correlation,
            "byte_chi_square": self.byte_chi_square,
            "monobit_pass": self.passed,
        }

    def to_text(self) -> str:
        return format_text("key-schedule PRNG sanity", self.metrics())

    def to_kv(self) -> str:
        return format_kv({f"prng.{k}": v for k, v in self.metrics().items()})


def prng_sanity(seed_key: CipherKey, n: int) -> PrngReport:
    """Statistics over ``n`` generator outputs following the 10 warm-up steps."""
    if n < 1000:
        raise ValueError(f"n must be >= 1000, got {n}")
    words = np.array(prng_stream(seed_key, n, skip=WARMUP_ROUNDS), dtype=np.uint64)
    raw = words.astype(">u8").view(np.uint8)
    ones = int(np.unpackbits(raw).sum())
    frac = ones / (64 * n)

    u = (words >> np.uint64(11)).astype(np.float64) / 2.0**53
    corr = float(np.corrcoef(u[:-1], u[1:])[0, 1])

    hist = np.bincount(raw >> 2, minlength=64)
    expected = raw.size / 64
    chi2 = float(((hist - expected) ** 2 / expected).sum())
    return PrngReport(seed_key.bits, n, frac, corr, chi2)


__all__ = [
    "AvalancheReport", "DistributionReport", "PrngReport", "flip_masks",
    "measure_avalanche", "measure_c_distribution", "prng_sanity", "NUM_SUBKEYS",
]
