"""XCRUSH: a 3-round ARX block cipher with a 256-bit block and data-dependent rotations."""

from .cipher import Block, decrypt_block, decrypt_blocks, encrypt_block, encrypt_block_rounds, encrypt_blocks
from .keyschedule import CipherKey, InvalidKeyError, SEED_CONSTANT, expand_key, prng_next, seed_from_key
from .modes import Mode, decrypt_stream, encrypt_stream
from .primitives import avalanche, c_function, unavalanche

__version__ = "0.1.0"

__all__ = [
    "Block", "CipherKey", "InvalidKeyError", "Mode", "SEED_CONSTANT",
    "avalanche", "c_function", "decrypt_block", "decrypt_blocks", "decrypt_stream",
    "encrypt_block", "encrypt_block_rounds", "encrypt_blocks", "encrypt_stream",
    "expand_key", "prng_next", "seed_from_key", "unavalanche",
]
