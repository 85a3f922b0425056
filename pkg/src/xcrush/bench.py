"""Single-threaded ECB throughput measurement."""

from __future__ import annotations

import hashlib
import os
import statistics
import time
import warnings
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from .cipher import BLOCK_BYTES, encrypt_blocks
from .keyschedule import CipherKey, expand_key
from .report import format_kv, format_text

MIB = 1 << 20
BENCH_KEY = CipherKey((0x0123456789ABCDEF, 0xFEDCBA9876543210,
                       0x0F1E2D3C4B5A6978, 0x8796A5B4C3D2E1F0))
_DATA_SEED = 0x5843


@dataclass
class BenchResult:
    bytes_processed: int
    wall_time: float
    throughput: float
    trials: int
    trial_throughputs: list[float] = field(repr=False)
    checksum: str
    key_expansion_time: float
    cycles_per_byte: float | None = None
    cpu_hz: float | None = None
    pinned_cpu: int | None = None

    @property
    def spread(self) -> float:
        """(max - min) / median over the measured trials."""
        return (max(self.trial_throughputs) - min(self.trial_throughputs)) / self.throughput

    def metrics(self) -> dict:
        return {
            "bytes_processed": self.bytes_processed,
            "trials": self.trials,
            "median_wall_time_s": self.wall_time,
            "throughput_bytes_per_s": self.throughput,
            "throughput_mib_per_s": self.throughput / MIB,
            "throughput_min": min(self.trial_throughputs),
            "throughput_max": max(self.trial_throughputs),
            "spread": self.spread,
            "cpu_hz": self.cpu_hz,
            "cycles_per_byte": self.cycles_per_byte,
            "key_expansion_s": self.key_expansion_time,
            "checksum": self.checksum,
            "pinned_cpu": self.pinned_cpu,
        }

    def to_text(self) -> str:
        return format_text("ECB encryption throughput", self.metrics())

    def to_kv(self) -> str:
        return format_kv({f"bench.{k}": v for k, v in self.metrics().items()})


def bench_buffer(buffer_bytes: int) -> np.ndarray:
    """Deterministic pseudo-random plaintext as an ``(n, 4)`` uint64 array."""
    rng = np.random.default_rng(_DATA_SEED)
    return rng.integers(0, 2**64, size=(buffer_bytes // BLOCK_BYTES, 4), dtype=np.uint64)


def checksum(blocks: np.ndarray) -> str:
    return hashlib.sha256(np.asarray(blocks, dtype=np.uint64).astype(">u8").tobytes()).hexdigest()


@contextmanager
def _pinned(enable: bool):
    if not enable or not hasattr(os, "sched_setaffinity"):
        yield None
        return
    before = os.sched_getaffinity(0)
    cpu = min(before)
    try:
        os.sched_setaffinity(0, {cpu})
    except OSError:
        yield None
        return
    try:
        yield cpu
    finally:
        os.sched_setaffinity(0, before)


def run_bench(buffer_bytes: int = 16 * MIB, trials: int = 11, cpu_hz: float | None = None,
              pin: bool = True) -> BenchResult:
    """Time ECB encryption of a fixed buffer; report the median trial.

    One warm-up trial is run and discarded. Every trial's output checksum
    must match, which also keeps the measured work observable.
    """
    if buffer_bytes < MIB or buffer_bytes % BLOCK_BYTES:
        raise ValueError(f"buffer_bytes must be a multiple of 32 and >= 1 MiB, got {buffer_bytes}")
    if trials < 5:
        raise ValueError(f"trials must be >= 5, got {trials}")
    if cpu_hz is not None and cpu_hz <= 0:
        raise ValueError("cpu_hz must be positive")

    data = bench_buffer(buffer_bytes)
    resolution = time.get_clock_info("perf_counter").resolution

    with _pinned(pin) as cpu:
        t0 = time.perf_counter()
        sk = np.array(expand_key(BENCH_KEY), dtype=np.uint64)
        key_time = time.perf_counter() - t0

        reference = checksum(encrypt_blocks(data, sk))  # warm-up
        times = []
        for _ in range(trials):
            t0 = time.perf_counter()
            out = encrypt_blocks(data, sk)
            elapsed = time.perf_counter() - t0
            if checksum(out) != reference:
                raise RuntimeError("ciphertext checksum changed between trials")
            times.append(elapsed)

    if resolution > 0.01 * min(times):
        warnings.warn(f"timer resolution {resolution:g}s exceeds 1% of trial duration")

    rates = [buffer_bytes / t for t in times]
    median_time = statistics.median(times)
    throughput = buffer_bytes / median_time
    cpb = cpu_hz / throughput if cpu_hz else None
    return BenchResult(buffer_bytes, median_time, throughput, trials, rates, reference,
                       key_time, cpb, cpu_hz, cpu)


def detect_cpu_hz() -> float | None:
    """Best-effort nominal clock from /proc/cpuinfo (Linux only)."""
    try:
        with open("/proc/cpuinfo") as f:
            for line in f:
                if line.lower().startswith("cpu mhz"):
                    return float(line.split(":")[1]) * 1e6
    except (OSError, ValueError, IndexError):
        pass
    return None
