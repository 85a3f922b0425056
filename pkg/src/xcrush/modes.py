"""ECB and CTR byte-stream encryption with a fixed 32-byte container header.

Header layout (big-endian)::

    0   4  magic        b"XCRU"
    4   1  version      0x01
    5   1  key_bytes    16, 24 or 32
    6   1  mode         0x01 ECB, 0x02 CTR
    7   1  reserved     0x00
    8  16  nonce        zero for ECB
   24   8  payload_len  plaintext byte count

Words are serialised big-endian, so block bytes read the same as the hex
words of the published test vectors.
"""

from __future__ import annotations

import enum
import os
import struct
from dataclasses import dataclass

import numpy as np

from .cipher import BLOCK_BYTES, decrypt_blocks, encrypt_blocks
from .keyschedule import CipherKey, expand_key

MAGIC = b"XCRU"
VERSION = 1
HEADER_SIZE = 32
NONCE_SIZE = 16
_HEADER = struct.Struct(">4sBBBB16sQ")


class Mode(enum.IntEnum):
    ECB = 1
    CTR = 2


class ContainerError(ValueError):
    """Base class for container decoding failures. ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class FormatError(ContainerError):
    pass


class PaddingError(ContainerError):
    pass


class LengthError(ContainerError):
    pass


@dataclass(frozen=True)
class ContainerHeader:
    key_bytes: int
    mode: Mode
    nonce: bytes
    payload_len: int
    version: int = VERSION

    def pack(self) -> bytes:
        return _HEADER.pack(MAGIC, self.version, self.key_bytes, int(self.mode), 0,
                            self.nonce, self.payload_len)

    @classmethod
    def unpack(cls, data: bytes) -> "ContainerHeader":
        if len(data) < HEADER_SIZE:
            raise LengthError("header", f"need {HEADER_SIZE} bytes, got {len(data)}")
        magic, version, key_bytes, mode, reserved, nonce, payload_len = _HEADER.unpack(
            data[:HEADER_SIZE])
        if magic != MAGIC:
            raise FormatError("magic", f"expected {MAGIC!r}, got {magic!r}")
        if version != VERSION:
            raise FormatError("version", f"unsupported version {version}")
        if key_bytes not in (16, 24, 32):
            raise FormatError("key_bits", f"invalid key size byte {key_bytes}")
        if mode not in (1, 2):
            raise FormatError("mode", f"unknown mode {mode}")
        if reserved != 0:
            raise FormatError("reserved", f"must be 0, got {reserved}")
        return cls(key_bytes, Mode(mode), nonce, payload_len, version)


# -- byte <-> word mapping ---------------------------------------------------

_BE64 = np.dtype(">u8")


def bytes_to_blocks(data: bytes) -> np.ndarray:
    """Map ``32*n`` bytes to an ``(n, 4)`` uint64 array, 8 bytes per word big-endian."""
    if len(data) % BLOCK_BYTES:
        raise ValueError(f"length {len(data)} is not a multiple of {BLOCK_BYTES}")
    return np.frombuffer(data, dtype=_BE64).astype(np.uint64).reshape(-1, 4)


def blocks_to_bytes(blocks: np.ndarray) -> bytes:
    return np.asarray(blocks, dtype=np.uint64).astype(_BE64).tobytes()


def block_to_bytes(block) -> bytes:
    return b"".join(int(w).to_bytes(8, "big") for w in block)


def block_from_bytes(data: bytes) -> tuple[int, int, int, int]:
    if len(data) != BLOCK_BYTES:
        raise ValueError(f"block must be {BLOCK_BYTES} bytes, got {len(data)}")
    return tuple(int.from_bytes(data[i:i + 8], "big") for i in range(0, 32, 8))  # type: ignore


# -- padding -----------------------------------------------------------------

def pad(data: bytes) -> bytes:
    n = BLOCK_BYTES - len(data) % BLOCK_BYTES
    return data + bytes([n]) * n


def unpad(data: bytes) -> bytes:
    if not data or len(data) % BLOCK_BYTES:
        raise PaddingError("padding", f"padded length {len(data)} is not a positive multiple of 32")
    n = data[-1]
    if not 1 <= n <= BLOCK_BYTES:
        raise PaddingError("padding", f"invalid pad length byte {n}")
    if data[-n:] != bytes([n]) * n:
        raise PaddingError("padding", "pad bytes are inconsistent")
    return data[:-n]


# -- modes -------------------------------------------------------------------

def _schedule(key: CipherKey) -> np.ndarray:
    return np.array(expand_key(key), dtype=np.uint64)


def ctr_keystream(sk: np.ndarray, nonce: bytes, nblocks: int) -> np.ndarray:
    """Keystream blocks ``E(nonce_block XOR i)`` for ``i`` in ``0..nblocks-1``.

    The nonce occupies the low 16 bytes of the block; the 256-bit counter is
    XORed in big-endian, so for any realistic length only the last word moves.
    """
    base = bytes_to_blocks(bytes(BLOCK_BYTES - NONCE_SIZE) + nonce)[0]
    counters = np.repeat(base[None, :], nblocks, axis=0)
    counters[:, 3] ^= np.arange(nblocks, dtype=np.uint64)
    return encrypt_blocks(counters, sk)


def encrypt_stream(plaintext: bytes, key: CipherKey, mode: Mode = Mode.CTR,
                   nonce: bytes | None = None) -> bytes:
    mode = Mode(mode)
    sk = _schedule(key)
    if mode is Mode.ECB:
        nonce = bytes(NONCE_SIZE)
        body = blocks_to_bytes(encrypt_blocks(bytes_to_blocks(pad(plaintext)), sk))
    else:
        if nonce is None:
            nonce = os.urandom(NONCE_SIZE)
        if len(nonce) != NONCE_SIZE:
            raise ValueError(f"nonce: expected {NONCE_SIZE} bytes, got {len(nonce)}")
        body = _ctr_xor(plaintext, sk, nonce)
    header = ContainerHeader(len(key.words) * 8, mode, bytes(nonce), len(plaintext))
    return header.pack() + body


def _ctr_xor(data: bytes, sk: np.ndarray, nonce: bytes) -> bytes:
    if not data:
        return b""
    nblocks = -(-len(data) // BLOCK_BYTES)
    stream = np.frombuffer(blocks_to_bytes(ctr_keystream(sk, nonce, nblocks)), dtype=np.uint8)
    return (np.frombuffer(data, dtype=np.uint8) ^ stream[:len(data)]).tobytes()


def decrypt_stream(container: bytes, key: CipherKey) -> bytes:
    header = ContainerHeader.unpack(container)
    if header.key_bytes != len(key.words) * 8:
        raise FormatError("key_bits", f"container expects a {header.key_bytes * 8}-bit key, "
                                      f"got {key.bits}")
    body = container[HEADER_SIZE:]
    sk = _schedule(key)
    if header.mode is Mode.ECB:
        expected = (header.payload_len // BLOCK_BYTES + 1) * BLOCK_BYTES
        if len(body) != expected:
            raise LengthError("payload_len", f"body is {len(body)} bytes, expected {expected}")
        plain = unpad(blocks_to_bytes(decrypt_blocks(bytes_to_blocks(body), sk)))
        if len(plain) != header.payload_len:
            raise PaddingError("padding", f"unpadded length {len(plain)} does not match "
                                          f"payload_len {header.payload_len}")
        return plain
    if len(body) != header.payload_len:
        raise LengthError("payload_len", f"body is {len(body)} bytes, expected {header.payload_len}")
    return _ctr_xor(body, sk, header.nonce)
