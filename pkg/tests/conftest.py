import ctypes
from pathlib import Path

import pytest

from xcrush import oracle

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def oracle_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("oracle")


@pytest.fixture(scope="session")
def oracle_exe(oracle_dir):
    if oracle.find_compiler() is None:
        pytest.skip("no C++ compiler available for the reference oracle")
    return oracle.build_oracle(out_dir=oracle_dir)


class RefLib:
    """ctypes view of the reference primitives."""

    def __init__(self, path):
        lib = ctypes.CDLL(str(path))
        u64 = ctypes.c_ulonglong
        lib.o_compress.argtypes = [u64]
        lib.o_compress.restype = ctypes.c_int
        lib.o_avalanche.argtypes = [u64, u64]
        lib.o_avalanche.restype = u64
        lib.o_unavalanche.argtypes = [u64, u64]
        lib.o_unavalanche.restype = u64
        lib.o_seed.argtypes = [u64] * 5
        lib.o_next.restype = u64
        lib.o_state.argtypes = [ctypes.POINTER(u64)]
        self._lib = lib

    def compress(self, x):
        return self._lib.o_compress(x)

    def avalanche(self, x, a):
        return self._lib.o_avalanche(x, a)

    def unavalanche(self, y, a):
        return self._lib.o_unavalanche(y, a)

    def prng(self, state, n):
        self._lib.o_seed(*state)
        out = [self._lib.o_next() for _ in range(n)]
        buf = (ctypes.c_ulonglong * 5)()
        self._lib.o_state(buf)
        return out, tuple(buf)


@pytest.fixture(scope="session")
def reflib(oracle_dir):
    if oracle.find_compiler() is None:
        pytest.skip("no C++ compiler available for the reference oracle")
    return RefLib(oracle.build_oracle_library(out_dir=oracle_dir))


@pytest.fixture(scope="session")
def corpus_text():
    return (DATA / "oracle_corpus.txt").read_text()

ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion.

    Usage: ``criterion(number, title, passed, detail)``. The line is recorded
    even when the test later fails on its assertion.
    """
    def record(number, title, passed, detail=""):
        ACCEPTANCE.append((number, title, bool(passed), detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}: {detail}")
