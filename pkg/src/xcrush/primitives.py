"""Word-level primitives: the C-function compression and the keyed avalanche.

Scalar versions operate on Python ints; the ``*_np`` versions operate
elementwise on ``numpy.uint64`` arrays, which wrap modulo 2**64 on their own.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
WORD_BITS = 64


def c_function(x: int) -> int:
    """Compress a 64-bit word to a rotation distance in [0, 63]."""
    x = ((x >> 32) + x) & MASK64
    x = (x >> 11) ^ x
    x = ((x >> 9) + x) & MASK64
    x = ((x >> 6) + x) & MASK64
    return x & 0x3F


def rotl(v: int, s: int) -> int:
    s &= 63
    return ((v << s) | (v >> (WORD_BITS - s))) & MASK64


def rotr(v: int, s: int) -> int:
    s &= 63
    return ((v >> s) | (v << (WORD_BITS - s))) & MASK64


def avalanche(x: int, a: int) -> int:
    """Return ``(x + a) <<< c_function(a)``.

    The rotation distance comes from the addend ``a``, not from the sum.
    """
    return rotl((x + a) & MASK64, c_function(a))


def unavalanche(y: int, a: int) -> int:
    """Inverse of :func:`avalanche` for the same addend."""
    return (rotr(y, c_function(a)) - a) & MASK64


# -- vectorised ------------------------------------------------------------

_S32 = np.uint64(32)
_S11 = np.uint64(11)
_S9 = np.uint64(9)
_S6 = np.uint64(6)
_M6 = np.uint64(0x3F)
_W = np.uint64(WORD_BITS)


def c_function_np(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.uint64)
    x = (x >> _S32) + x
    x ^= x >> _S11
    x += x >> _S9
    x += x >> _S6
    x &= _M6
    return x


# numpy defines shifts by >= 64 as producing 0, so s == 0 yields v | 0 == v.
def avalanche_np(x: np.ndarray, a: np.ndarray) -> np.ndarray:
    s = c_function_np(a)
    v = x + a
    return (v << s) | (v >> (_W - s))


def unavalanche_np(y: np.ndarray, a: np.ndarray) -> np.ndarray:
    s = c_function_np(a)
    v = (y >> s) | (y << (_W - s))
    return v - a
