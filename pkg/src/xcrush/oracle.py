"""Differential testing against the vendored C reference implementation.

The reference lives in ``oracle/`` at the repository root (see
``oracle/ORACLE-NOTES.md``) and is not part of the installed package. It is
compiled on demand with the host C++ compiler and fed cases in batch.

Corpus format, one case per line, lowercase hex, words big-endian::

    <key bits> <key> <plaintext> <16 subkeys> <ciphertext>
"""

from __future__ import annotations

import argparse
import os
import shutil
import subprocess
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cipher import decrypt_block, encrypt_block
from .keyschedule import CipherKey, expand_key
from .vectors import KNOWN_ANSWERS


class OracleError(RuntimeError):
    pass


def default_oracle_dir() -> Path:
    env = os.environ.get("XCRUSH_ORACLE_DIR")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "oracle"


def find_compiler() -> str | None:
    for name in (os.environ.get("CXX"), "c++", "g++", "clang++"):
        if name and shutil.which(name):
            return name
    return None


def build_oracle(src_dir: Path | None = None, out_dir: Path | None = None) -> Path:
    """Compile the reference and its batch driver; return the executable path."""
    src_dir = Path(src_dir or default_oracle_dir())
    driver = src_dir / "driver.cpp"
    if not driver.exists() or not (src_dir / "xcrush_ref.c").exists():
        raise OracleError(f"reference sources not found in {src_dir}")
    cxx = find_compiler()
    if cxx is None:
        raise OracleError("no C++ compiler found (set CXX)")
    out_dir = Path(out_dir or tempfile.mkdtemp(prefix="xcrush-oracle-"))
    exe = out_dir / "xcrush_oracle"
    # The reference relies on 64-bit `long`; -O1 keeps rotations as rol/ror.
    cmd = [cxx, "-O1", "-w", f"-I{src_dir}", "-o", str(exe), str(driver)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        raise OracleError(f"oracle build failed ({' '.join(cmd)}):\n{proc.stderr}")
    return exe


def build_oracle_library(src_dir: Path | None = None, out_dir: Path | None = None) -> Path:
    """Compile ``shim.cpp`` into a shared library exposing the reference primitives."""
    src_dir = Path(src_dir or default_oracle_dir())
    cxx = find_compiler()
    if cxx is None:
        raise OracleError("no C++ compiler found (set CXX)")
    out_dir = Path(out_dir or tempfile.mkdtemp(prefix="xcrush-oracle-"))
    lib = out_dir / "libxcrush_ref.so"
    cmd = [cxx, "-O1", "-w", "-shared", "-fPIC", f"-I{src_dir}", "-o", str(lib),
           str(src_dir / "shim.cpp")]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        raise OracleError(f"oracle library build failed ({' '.join(cmd)}):\n{proc.stderr}")
    return lib


@dataclass(frozen=True)
class OracleCase:
    key: tuple[int, ...]
    plaintext: tuple[int, ...]
    subkeys: tuple[int, ...]
    ciphertext: tuple[int, ...]

    @property
    def key_bits(self) -> int:
        return 64 * len(self.key)

    def to_line(self) -> str:
        def h(ws):
            return "".join(f"{w:016x}" for w in ws)
        return f"{self.key_bits:x} {h(self.key)} {h(self.plaintext)} {h(self.subkeys)} {h(self.ciphertext)}"

    @classmethod
    def from_line(cls, line: str) -> "OracleCase":
        bits, key, pt, sk, ct = line.split()

        def w(s):
            return tuple(int(s[i:i + 16], 16) for i in range(0, len(s), 16))
        case = cls(w(key), w(pt), w(sk), w(ct))
        if case.key_bits != int(bits, 16) or len(case.plaintext) != 4 \
                or len(case.subkeys) != 16 or len(case.ciphertext) != 4:
            raise ValueError(f"malformed corpus line: {line!r}")
        return case


def run_oracle(exe: Path, inputs: list[tuple[tuple[int, ...], tuple[int, ...]]]) -> list[OracleCase]:
    """Run (key, plaintext) pairs through the reference executable."""
    stdin = "".join(
        f"{len(k)} " + " ".join(f"{w:x}" for w in k + p) + "\n" for k, p in inputs)
    proc = subprocess.run([str(exe)], input=stdin, capture_output=True, text=True)
    if proc.returncode != 0:
        raise OracleError(f"oracle exited with {proc.returncode}: {proc.stderr}")
    lines = proc.stdout.splitlines()
    if len(lines) != len(inputs):
        raise OracleError(f"oracle returned {len(lines)} lines for {len(inputs)} cases")
    cases = []
    for (key, pt), line in zip(inputs, lines):
        words = [int(x, 16) for x in line.split()]
        sk, ct, back = tuple(words[:16]), tuple(words[16:20]), tuple(words[20:24])
        if back != pt:
            raise OracleError(f"oracle failed its own round trip for key {key}")
        cases.append(OracleCase(key, pt, sk, ct))
    return cases


def corpus_inputs(n: int, rng_seed: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The published vectors first, then random cases cycling 128/192/256-bit keys."""
    if n < len(KNOWN_ANSWERS):
        raise ValueError(f"n must be >= {len(KNOWN_ANSWERS)}")
    inputs = [(k.key_words, k.plaintext_words) for k in KNOWN_ANSWERS]
    rng = np.random.default_rng(rng_seed)
    for i in range(n - len(inputs)):
        nk = 2 + i % 3
        words = rng.integers(0, 2**64, size=nk + 4, dtype=np.uint64)
        key = tuple(int(w) for w in words[:nk])
        pt = tuple(int(w) for w in words[nk:])
        inputs.append((key, pt))
    return inputs


def generate_oracle_corpus(n: int, rng_seed: int, exe: Path | None = None) -> str:
    exe = exe or build_oracle()
    cases = run_oracle(exe, corpus_inputs(n, rng_seed))
    return "".join(c.to_line() + "\n" for c in cases)


def load_corpus(text: str) -> list[OracleCase]:
    return [OracleCase.from_line(line) for line in text.splitlines() if line.strip()]


def compare_library(cases: list[OracleCase]) -> list[str]:
    """Return one message per disagreement between the library and the corpus."""
    problems = []
    for i, case in enumerate(cases, 1):
        sk = expand_key(CipherKey(case.key))
        if sk != case.subkeys:
            problems.append(f"case {i}: subkeys differ")
        if encrypt_block(case.plaintext, sk) != case.ciphertext:
            problems.append(f"case {i}: ciphertext differs")
        if decrypt_block(case.ciphertext, sk) != case.plaintext:
            problems.append(f"case {i}: decryption differs")
    return problems


def main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="python -m xcrush.oracle",
                                description="Generate or check a reference-implementation corpus.")
    sub = p.add_subparsers(dest="cmd", required=True)
    g = sub.add_parser("generate")
    g.add_argument("-n", type=int, default=300)
    g.add_argument("--seed", type=int, default=7)
    g.add_argument("-o", "--output", default="-")
    c = sub.add_parser("check")
    c.add_argument("corpus")
    args = p.parse_args(argv)

    if args.cmd == "generate":
        try:
            text = generate_oracle_corpus(args.n, args.seed)
        except OracleError as e:
            print(f"error: {e}", file=sys.stderr)
            return 3
        if args.output == "-":
            sys.stdout.write(text)
        else:
            Path(args.output).write_text(text)
        return 0

    problems = compare_library(load_corpus(Path(args.corpus).read_text()))
    for msg in problems:
        print(msg)
    print(f"{'FAIL' if problems else 'PASS'}: {len(problems)} mismatches")
    return 1 if problems else 0


if __name__ == "__main__":
    sys.exit(main())
