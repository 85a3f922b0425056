"""The 3-round, 256-bit block cipher and its inverse.

A block is four 64-bit words ``(w1, w2, w3, w4)``; a schedule is the 16
subkeys from :func:`xcrush.keyschedule.expand_key`. Within a round every
word update sees the already-updated values of the words before it.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .primitives import MASK64, avalanche, avalanche_np, unavalanche, unavalanche_np

Block = tuple[int, int, int, int]

BLOCK_WORDS = 4
BLOCK_BYTES = 32
ROUNDS = 3


def _check(p: Sequence[int], sk: Sequence[int]) -> None:
    if len(p) != BLOCK_WORDS:
        raise ValueError(f"block must have 4 words, got {len(p)}")
    if len(sk) != 16:
        raise ValueError(f"subkey schedule must have 16 words, got {len(sk)}")


def _round(t: list[int], rk: Sequence[int]) -> None:
    t1, t2, t3, t4 = t
    t1 = avalanche(t1, (t2 + t3 + t4 + rk[0]) & MASK64)
    t2 = avalanche(t2, (t1 + t3 + t4 + rk[1]) & MASK64)
    t3 = avalanche(t3, (t1 + t2 + t4 + rk[2]) & MASK64)
    t4 = avalanche(t4, (t1 + t2 + t3 + rk[3]) & MASK64)
    t[:] = (t1, t2, t3, t4)


def encrypt_block_rounds(p: Sequence[int], sk: Sequence[int], rounds: int = ROUNDS,
                         whiten: bool = True) -> Block:
    """Round-reduced encryption, for diffusion analysis only."""
    _check(p, sk)
    if rounds not in (1, 2, 3):
        raise ValueError(f"rounds must be 1, 2 or 3, got {rounds}")
    t = list(p)
    for i in range(rounds):
        _round(t, sk[4 * i:4 * i + 4])
    if whiten:
        t = [w ^ k for w, k in zip(t, sk[12:16])]
    return tuple(t)  # type: ignore[return-value]


def encrypt_block(p: Sequence[int], sk: Sequence[int]) -> Block:
    return encrypt_block_rounds(p, sk, ROUNDS, True)


def decrypt_block(c: Sequence[int], sk: Sequence[int]) -> Block:
    _check(c, sk)
    a, b, cc, d = (w ^ k for w, k in zip(c, sk[12:16]))
    for i in reversed(range(ROUNDS)):
        rk = sk[4 * i:4 * i + 4]
        d = unavalanche(d, (a + b + cc + rk[3]) & MASK64)
        cc = unavalanche(cc, (a + b + d + rk[2]) & MASK64)
        b = unavalanche(b, (a + cc + d + rk[1]) & MASK64)
        a = unavalanche(a, (b + cc + d + rk[0]) & MASK64)
    return a, b, cc, d


# -- vectorised ------------------------------------------------------------

def _schedule_columns(sk: np.ndarray) -> list[np.ndarray]:
    sk = np.asarray(sk, dtype=np.uint64)
    if sk.shape[-1] != 16:
        raise ValueError(f"subkey schedule must have 16 words, got shape {sk.shape}")
    # (16,) broadcasts as scalars; (n, 16) gives one schedule per block.
    return [sk[..., j] for j in range(16)]


def encrypt_blocks(blocks: np.ndarray, sk: np.ndarray, rounds: int = ROUNDS,
                   whiten: bool = True) -> np.ndarray:
    """Encrypt an ``(n, 4)`` uint64 array. ``sk`` is ``(16,)`` or ``(n, 16)``."""
    blocks = np.asarray(blocks, dtype=np.uint64)
    if rounds not in (1, 2, 3):
        raise ValueError(f"rounds must be 1, 2 or 3, got {rounds}")
    k = _schedule_columns(sk)
    t1, t2, t3, t4 = (blocks[:, i] for i in range(4))
    for i in range(rounds):
        j = 4 * i
        t1 = avalanche_np(t1, t2 + t3 + t4 + k[j])
        t2 = avalanche_np(t2, t1 + t3 + t4 + k[j + 1])
        t3 = avalanche_np(t3, t1 + t2 + t4 + k[j + 2])
        t4 = avalanche_np(t4, t1 + t2 + t3 + k[j + 3])
    if whiten:
        t1, t2, t3, t4 = t1 ^ k[12], t2 ^ k[13], t3 ^ k[14], t4 ^ k[15]
    return np.stack([t1, t2, t3, t4], axis=1)


def decrypt_blocks(blocks: np.ndarray, sk: np.ndarray) -> np.ndarray:
    blocks = np.asarray(blocks, dtype=np.uint64)
    k = _schedule_columns(sk)
    a, b, c, d = (blocks[:, i] ^ k[12 + i] for i in range(4))
    for i in reversed(range(ROUNDS)):
        j = 4 * i
        d = unavalanche_np(d, a + b + c + k[j + 3])
        c = unavalanche_np(c, a + b + d + k[j + 2])
        b = unavalanche_np(b, a + c + d + k[j + 1])
        a = unavalanche_np(a, b + c + d + k[j])
    return np.stack([a, b, c, d], axis=1)
