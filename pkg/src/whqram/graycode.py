"""Gray-code orderings used to schedule parity updates.

Words are integers with bit 1 (the leftmost bit) as the most significant,
matching the indexing in :mod:`whqram.spectrum`. Change sets use the same
1-based, left-to-right bit positions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


@dataclass(frozen=True)
class GrayCode:
    n: int
    words: tuple[int, ...]
    periodic: bool
    change_sets: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def bit_positions(mask: int, n: int) -> frozenset[int]:
    """1-based MSB-first positions of the set bits of ``mask``."""
    return frozenset(a for a in range(1, n + 1) if mask >> (n - a) & 1)


def _change_sets(words: Sequence[int], n: int, periodic: bool) -> tuple[frozenset[int], ...]:
    steps = len(words) if periodic else len(words) - 1
    return tuple(
        bit_positions(words[k] ^ words[(k + 1) % len(words)], n) for k in range(steps)
    )


def standard_gray(n: int) -> GrayCode:
    """Binary reflected Gray code on ``n`` bits, starting at ``0_n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    words = tuple(i ^ (i >> 1) for i in range(1 << n))
    return GrayCode(n, words, True, _change_sets(words, n, True))


def _mirror(word: int, n: int) -> int:
    out = 0
    for _ in range(n):
        out = (out << 1) | (word & 1)
        word >>= 1
    return out


@lru_cache(maxsize=None)
def _bounded_words(n: int, k: int) -> tuple[int, ...]:
    if k == 0:
        return (0,)
    if k >= n:
        # base family: mirrored reflected code, so word 2 is delta_1 and the last is delta_n
        return tuple(_mirror(i ^ (i >> 1), n) for i in range(1 << n))
    # G^{n,k} from G^{n-1,k} (new last bit 0) and G^{n-1,k-1} reversed (new last bit 1)
    head = _bounded_words(n - 1, k)
    tail = _bounded_words(n - 1, k - 1)
    return tuple(w << 1 for w in head) + tuple((w << 1) | 1 for w in reversed(tail))


def bounded_gray(n: int, k: int) -> GrayCode:
    """Enumerate the words of Hamming weight at most ``k`` with steps of distance <= 2.

    The first word is ``0_n``, the second ``delta_1`` and the last ``delta_n``.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    words = _bounded_words(n, k)
    return GrayCode(n, words, True, _change_sets(words, n, True))


def support_gray_order(support: Iterable[int], n: int) -> list[int]:
    """Order ``support`` by first appearance in the reflected Gray code."""
    wanted = set(support)
    if not wanted:
        raise ValueError("support must be nonempty")
    return [w for w in standard_gray(n).words if w in wanted]


def b_nk(n: int, k: int) -> int:
    """Number of ``n``-bit words of Hamming weight at most ``k``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return sum(math.comb(n, i) for i in range(k + 1))


def binary_entropy(alpha) -> float:
    a = Fraction(alpha) if not isinstance(alpha, float) else alpha
    if not 0 < a < 1:
        raise ValueError("binary entropy is defined on (0, 1)")
    a = float(a)
    return -a * math.log2(a) - (1 - a) * math.log2(1 - a)
