"""Command-line entry point: ``xcrush <subcommand> ...``.

Exit codes: 0 success, 1 known-answer mismatch, 2 invalid arguments,
3 I/O or entropy failure, 4 container format or padding error.
"""

from __future__ import annotations

import argparse
import secrets
import sys
import warnings
from pathlib import Path

from . import analysis, bench, modes, vectors
from .keyschedule import CipherKey, InvalidKeyError

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_FORMAT = 4

WARNING = ("warning: No security claims are made for XCRUSH. "
           "Do not rely on it to protect real data.")


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"xcrush: {msg}", file=sys.stderr)


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write_output(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _load_key(args) -> CipherKey:
    if args.key_file:
        try:
            text = Path(args.key_file).read_text()
        except OSError as e:
            raise OSError(f"key file: {e}") from e
    else:
        _err("note: keys given on the command line end up in shell history; prefer --key-file")
        text = args.key
    return CipherKey.from_hex(text)


def _add_key_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--key", help="key as 32, 48 or 64 hex digits")
    g.add_argument("--key-file", help="file containing the key in hex")


def cmd_encrypt(args) -> int:
    key = _load_key(args)
    mode = modes.Mode[args.mode.upper()]
    nonce = None
    if args.nonce is not None:
        if mode is not modes.Mode.CTR:
            raise UsageError("nonce: only valid with --mode ctr")
        try:
            nonce = bytes.fromhex(args.nonce)
        except ValueError:
            raise UsageError("nonce: not a hexadecimal string") from None
        if len(nonce) != modes.NONCE_SIZE:
            raise UsageError(f"nonce: expected 32 hex digits, got {len(args.nonce)}")
    data = _read_input(args.input)
    out = modes.encrypt_stream(data, key, mode, nonce)
    _write_output(args.output, out)
    _err(f"encrypted {len(data)} bytes, mode {mode.name}, {key.bits}-bit key")
    _err(WARNING)
    return EXIT_OK


def cmd_decrypt(args) -> int:
    key = _load_key(args)
    data = _read_input(args.input)
    plain = modes.decrypt_stream(data, key)
    header = modes.ContainerHeader.unpack(data)
    _write_output(args.output, plain)
    _err(f"decrypted {len(plain)} bytes, mode {header.mode.name}, {key.bits}-bit key")
    _err(WARNING)
    return EXIT_OK


def cmd_keygen(args) -> int:
    try:
        raw = secrets.token_bytes(args.bits // 8)
    except (OSError, NotImplementedError) as e:
        _err(f"entropy source unavailable: {e}")
        return EXIT_IO
    print(raw.hex())
    return EXIT_OK


def cmd_vectors(args) -> int:
    results = vectors.check_vectors()
    for r in results:
        print(r.describe())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_MISMATCH if failed else EXIT_OK


def _emit(report, fmt: str) -> None:
    print(report.to_kv() if fmt == "kv" else report.to_text())
    if fmt == "text":
        print()


def cmd_analyze(args) -> int:
    if not (args.avalanche or args.cdist or args.prng):
        raise UsageError("analyze: choose at least one of --avalanche, --cdist, --prng")
    if args.avalanche:
        rounds = [args.rounds] if args.rounds else [1, 2, 3]
        for r in rounds:
            whiten = (r == 3) if args.whiten is None else args.whiten
            _emit(analysis.measure_avalanche(r, whiten, args.samples, args.seed, args.key_bits),
                  args.format)
    if args.cdist:
        base = int(args.base, 0)
        _emit(analysis.measure_c_distribution(base, args.count, args.stride, args.seed),
              args.format)
    if args.prng:
        key = CipherKey.from_hex(args.prng_key) if args.prng_key else \
            CipherKey.from_hex(f"{args.seed:064x}")
        _emit(analysis.prng_sanity(key, args.n), args.format)
    return EXIT_OK


def cmd_bench(args) -> int:
    cpu_hz = args.cpu_hz
    if cpu_hz is not None and cpu_hz.lower() == "auto":
        cpu_hz = bench.detect_cpu_hz()
    elif cpu_hz is not None:
        try:
            cpu_hz = float(cpu_hz)
        except ValueError:
            raise UsageError(f"cpu-hz: not a number: {args.cpu_hz!r}") from None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = bench.run_bench(args.mib * bench.MIB, args.trials, cpu_hz, pin=not args.no_pin)
    for w in caught:
        _err(f"warning: {w.message}")
    _emit(result, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="xcrush",
        description="XCRUSH 256-bit block cipher: file encryption, known-answer tests, "
                    "diffusion analysis and benchmarking. Run `xcrush vectors` first.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    e = sub.add_parser("encrypt", help="encrypt a file into an XCRU container")
    e.add_argument("input", help="input path, or - for stdin")
    e.add_argument("output", help="output path, or - for stdout")
    _add_key_args(e)
    e.add_argument("--mode", choices=["ecb", "ctr"], default="ctr")
    e.add_argument("--nonce", help="CTR nonce, 32 hex digits (random if omitted)")
    e.set_defaults(func=cmd_encrypt)

    d = sub.add_parser("decrypt", help="decrypt an XCRU container")
    d.add_argument("input")
    d.add_argument("output")
    _add_key_args(d)
    d.set_defaults(func=cmd_decrypt)

    k = sub.add_parser("keygen", help="print a random key in hex")
    k.add_argument("--bits", type=int, choices=[128, 192, 256], default=256)
    k.set_defaults(func=cmd_keygen)

    v = sub.add_parser("vectors", help="run the built-in known-answer tests")
    v.set_defaults(func=cmd_vectors)

    a = sub.add_parser("analyze", help="diffusion and distribution measurements")
    a.add_argument("--avalanche", action="store_true")
    a.add_argument("--cdist", action="store_true")
    a.add_argument("--prng", action="store_true")
    a.add_argument("--rounds", type=int, choices=[1, 2, 3],
                   help="avalanche rounds (default: report 1, 2 and 3)")
    a.add_argument("--whiten", action=argparse.BooleanOptionalAction, default=None,
                   help="apply the whitening XOR (default: only at 3 rounds)")
    a.add_argument("--samples", type=int, default=10_000)
    a.add_argument("--key-bits", type=int, choices=[128, 192, 256], default=256)
    a.add_argument("--seed", type=int, default=1)
    a.add_argument("--base", default="0x0123456789abcdef", help="C-function base input")
    a.add_argument("--count", type=int, default=65536)
    a.add_argument("--stride", choices=["increment", "random-low-hamming"], default="increment")
    a.add_argument("--n", type=int, default=100_000, help="PRNG outputs to draw")
    a.add_argument("--prng-key", help="PRNG seed key in hex (default derived from --seed)")
    a.add_argument("--format", choices=["text", "kv"], default="text")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bench", help="measure ECB throughput")
    b.add_argument("--mib", type=int, default=16)
    b.add_argument("--trials", type=int, default=11)
    b.add_argument("--cpu-hz", help="CPU clock in Hz, or 'auto' to read /proc/cpuinfo")
    b.add_argument("--no-pin", action="store_true", help="do not pin to a single CPU")
    b.add_argument("--format", choices=["text", "kv"], default="text")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except modes.ContainerError as e:
        _err(str(e))
        return EXIT_FORMAT
    except (UsageError, InvalidKeyError) as e:
        _err(str(e))
        return EXIT_USAGE
    except OSError as e:
        _err(f"I/O error: {e}")
        return EXIT_IO
    except ValueError as e:
        _err(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
