import numpy as np
import pytest

from xcrush import bench
from xcrush.cipher import encrypt_block
from xcrush.keyschedule import expand_key


def test_validation():
    with pytest.raises(ValueError):
        bench.run_bench(bench.MIB + 1, 5)
    with pytest.raises(ValueError):
        bench.run_bench(bench.MIB // 2, 5)
    with pytest.raises(ValueError):
        bench.run_bench(bench.MIB, 4)


def test_report_without_cpu_hz():
    r = bench.run_bench(bench.MIB, 5)
    assert r.cycles_per_byte is None
    assert r.bytes_processed == bench.MIB
    assert r.throughput > 0
    assert len(r.trial_throughputs) == 5
    assert "bench.cycles_per_byte=-" in r.to_kv()


def test_report_with_cpu_hz():
    r = bench.run_bench(bench.MIB, 5, cpu_hz=3e9)
    assert r.cycles_per_byte == pytest.approx(3e9 / r.throughput)


def test_workload_deterministic():
    a = bench.run_bench(bench.MIB, 5, pin=False)
    b = bench.run_bench(bench.MIB, 5, pin=False)
    assert a.checksum == b.checksum
    assert a.bytes_processed == b.bytes_processed


def test_checksum_matches_scalar_encryption():
    data = bench.bench_buffer(bench.MIB)
    sk = expand_key(bench.BENCH_KEY)
    out = np.array([encrypt_block(tuple(int(w) for w in row), sk) for row in data],
                   dtype=np.uint64)
    assert bench.run_bench(bench.MIB, 5).checksum == bench.checksum(out)
