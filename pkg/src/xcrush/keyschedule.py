"""Key expansion: a 320-bit avalanche-based PRNG seeded with the master key."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .primitives import MASK64, avalanche, avalanche_np

# Leading decimal digits of the fractional part of sqrt(2).
SEED_CONSTANT = 4142135623730950488

NUM_SUBKEYS = 16
WARMUP_ROUNDS = 10
KEY_BITS = (128, 192, 256)

PrngState = tuple[int, int, int, int, int]


class InvalidKeyError(ValueError):
    """Raised for keys that are not 128, 192 or 256 bits of valid hex/words."""


@dataclass(frozen=True)
class CipherKey:
    """A 128, 192 or 256-bit master key held as 2, 3 or 4 64-bit words."""

    words: tuple[int, ...]

    def __post_init__(self):
        words = tuple(int(w) for w in self.words)
        if len(words) not in (2, 3, 4):
            raise InvalidKeyError(
                f"key length: expected 2, 3 or 4 words (128/192/256 bits), got {len(words)}"
            )
        for w in words:
            if not 0 <= w <= MASK64:
                raise InvalidKeyError(f"key word out of 64-bit range: {w:#x}")
        object.__setattr__(self, "words", words)

    @property
    def bits(self) -> int:
        return 64 * len(self.words)

    @classmethod
    def from_hex(cls, text: str) -> "CipherKey":
        """Parse 32/48/64 hex digits as big-endian words. Whitespace is ignored."""
        digits = "".join(text.split())
        if digits[:2].lower() == "0x":
            digits = digits[2:]
        if len(digits) not in (32, 48, 64):
            raise InvalidKeyError(
                f"key length: expected 32, 48 or 64 hex digits, got {len(digits)}"
            )
        try:
            value = bytes.fromhex(digits)
        except ValueError:
            raise InvalidKeyError("key: not a hexadecimal string") from None
        return cls.from_bytes(value)

    @classmethod
    def from_bytes(cls, data: bytes) -> "CipherKey":
        if len(data) not in (16, 24, 32):
            raise InvalidKeyError(
                f"key length: expected 16, 24 or 32 bytes, got {len(data)}"
            )
        return cls(tuple(int.from_bytes(data[i:i + 8], "big") for i in range(0, len(data), 8)))

    def to_bytes(self) -> bytes:
        return b"".join(w.to_bytes(8, "big") for w in self.words)

    def hex(self) -> str:
        return self.to_bytes().hex()


def _as_key(k) -> CipherKey:
    return k if isinstance(k, CipherKey) else CipherKey(tuple(k))


def seed_from_key(k: CipherKey | Sequence[int]) -> PrngState:
    """Lay the key words out in the 5-word PRNG state, filling with SEED_CONSTANT."""
    words = _as_key(k).words
    return tuple(words) + (SEED_CONSTANT,) * (5 - len(words))  # type: ignore[return-value]


def prng_next(s: Sequence[int]) -> tuple[int, PrngState]:
    """One step of the generator. Returns ``(output, new_state)``.

    The all-zero state is a fixed point; seeded states never reach it
    because the key leaves at least one SEED_CONSTANT word in place.
    """
    s1, t, s3, s4, s5 = s
    y = avalanche(s1, (s1 + t) & MASK64)
    return y, (y, s3, s4, s5, s1)


def prng_stream(k: CipherKey | Sequence[int], n: int, skip: int = 0) -> list[int]:
    state = seed_from_key(k)
    out = []
    for i in range(skip + n):
        y, state = prng_next(state)
        if i >= skip:
            out.append(y)
    return out


def expand_key(k: CipherKey | Sequence[int]) -> tuple[int, ...]:
    """Return the 16 subkeys SK1..SK16 at indices 0..15."""
    return tuple(prng_stream(k, NUM_SUBKEYS, skip=WARMUP_ROUNDS))


def expand_keys_np(keys: np.ndarray) -> np.ndarray:
    """Vectorised :func:`expand_key` for an ``(n, w)`` uint64 array, w in {2, 3, 4}.

    Returns an ``(n, 16)`` uint64 array.
    """
    keys = np.asarray(keys, dtype=np.uint64)
    if keys.ndim != 2 or keys.shape[1] not in (2, 3, 4):
        raise InvalidKeyError(f"key length: expected (n, 2|3|4) words, got shape {keys.shape}")
    n, w = keys.shape
    state = [keys[:, i].copy() for i in range(w)]
    state += [np.full(n, SEED_CONSTANT, dtype=np.uint64) for _ in range(5 - w)]
    out = np.empty((n, NUM_SUBKEYS), dtype=np.uint64)
    for i in range(WARMUP_ROUNDS + NUM_SUBKEYS):
        s1, t = state[0], state[1]
        y = avalanche_np(s1, s1 + t)
        state = [y, state[2], state[3], state[4], s1]
        if i >= WARMUP_ROUNDS:
            out[:, i - WARMUP_ROUNDS] = y
    return out
