"""Built-in known-answer vectors and a checker for them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import cipher, keyschedule, modes


@dataclass(frozen=True)
class KnownAnswer:
    name: str
    key: str
    plaintext: str
    ciphertext: str

    @property
    def key_words(self) -> tuple[int, ...]:
        return _words(self.key)

    @property
    def plaintext_words(self) -> tuple[int, ...]:
        return _words(self.plaintext)

    @property
    def ciphertext_words(self) -> tuple[int, ...]:
        return _words(self.ciphertext)


def _words(text: str) -> tuple[int, ...]:
    return tuple(int(w, 16) for w in text.split())


KNOWN_ANSWERS = (
    KnownAnswer(
        "XCRUSH-128",
        "1599D14129204267 E4C91210F1C15541",
        "9338192346089EEE 965D12810033DDF0 434C5669E9E31202 86416B3296055DC1",
        "2AC5C0D9B62355A2 9DEFB4F22A3D6DBF CC18261B50072FBC CCB953C4947A6C39",
    ),
    KnownAnswer(
        "XCRUSH-192",
        "4211121041C35A31 E4E4961BB81941BA CC982462195662AA",
        "4440306090522AB0 31249688284691DF 4C15654900DB1A19 19A0FF64135229D2",
        "2FEFD41974AFDD44 15BA6339E5C03563 42BA28CF31B5F400 CCD58FC905686D9F",
    ),
    KnownAnswer(
        "XCRUSH-256",
        "F0E0D0C0B0A09080 7060504030201000 F1D3B597795B3D1F 021346578A9BCEDF",
        "311D411620304361 48165C7790022614 9536295B87012640 396218842A490866",
        "000947604A76E469 E34346B03745CAC9 244D96ACC783C42B 95406757BE5653D9",
    ),
)


@dataclass
class CheckResult:
    name: str
    direction: str
    passed: bool
    expected: tuple
    actual: tuple

    def describe(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name} {self.direction}"
        if not self.passed:
            line += "\n  expected: " + _fmt(self.expected)
            line += "\n  actual:   " + _fmt(self.actual)
            diff = [i + 1 for i, (e, a) in enumerate(zip(self.expected, self.actual)) if e != a]
            if diff:
                line += f"\n  differing words: {diff}"
        return line


def _fmt(items) -> str:
    return " ".join(f"{w:016X}" if isinstance(w, int) else str(w) for w in items)


def check_vectors(
    encrypt: Callable = cipher.encrypt_block,
    decrypt: Callable = cipher.decrypt_block,
    expand: Callable = keyschedule.expand_key,
    to_bytes: Callable = modes.block_to_bytes,
    from_bytes: Callable = modes.block_from_bytes,
) -> list[CheckResult]:
    """Run every vector encrypt, decrypt, and through the byte mapping.

    The callables are parameters so that deliberately broken variants can be
    shown to fail.
    """
    results = []
    for kat in KNOWN_ANSWERS:
        sk = expand(keyschedule.CipherKey(kat.key_words))
        pt, ct = kat.plaintext_words, kat.ciphertext_words
        got = tuple(encrypt(pt, sk))
        results.append(CheckResult(kat.name, "encrypt", got == ct, ct, got))
        got = tuple(decrypt(ct, sk))
        results.append(CheckResult(kat.name, "decrypt", got == pt, pt, got))

        pt_bytes = bytes.fromhex("".join(kat.plaintext.split()))
        ct_bytes = bytes.fromhex("".join(kat.ciphertext.split()))
        got_bytes = to_bytes(encrypt(from_bytes(pt_bytes), sk))
        results.append(CheckResult(kat.name, "bytes", got_bytes == ct_bytes,
                                   (ct_bytes.hex(),), (got_bytes.hex(),)))
    return results
