"""Alphabets, words, rotations and least-rotation canonical forms.

Words are plain ``str`` values. An :class:`Alphabet` carries the letter
order used for lexicographic comparison and validates membership.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    _rank: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        for s in symbols:
            if len(s) != 1:
                raise ValueError(f"letters must be single characters, got {s!r}")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate letters in alphabet {''.join(symbols)!r}")
        object.__setattr__(self, "_rank", {s: i for i, s in enumerate(symbols)})

    @classmethod
    def of(cls, letters: Iterable[str]) -> "Alphabet":
        return cls(tuple(letters))

    def __contains__(self, letter: str) -> bool:
        return letter in self._rank

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return "".join(self.symbols)

    def rank(self, letter: str) -> int:
        return self._rank[letter]

    def check(self, word: str) -> str:
        """Return ``word`` unchanged, raising ValueError if it leaves the alphabet."""
        bad = set(word) - self._rank.keys()
        if bad:
            raise ValueError(
                f"letters {''.join(sorted(bad))!r} not in alphabet {str(self)!r}"
            )
        return word

    def is_ascii_ordered(self) -> bool:
        return list(self.symbols) == sorted(self.symbols)

    def sort_key(self, word: str) -> tuple[int, ...]:
        return tuple(self._rank[c] for c in word)


UNDERLYING = Alphabet.of("01234")
CODED = Alphabet.of("abcde")


def rotate(w: str, k: int) -> str:
    if not 0 <= k <= len(w):
        raise ValueError(f"rotation offset {k} out of range for length {len(w)}")
    return w[k:] + w[:k]


def smallest_period(w: str) -> int:
    """Smallest p dividing |w| with w a power of w[:p] (KMP failure function)."""
    n = len(w)
    if n == 0:
        raise ValueError("empty word has no period")
    fail = _failure(w)
    p = n - fail[n - 1]
    return p if n % p == 0 else n


def distinct_rotations(w: str) -> set[str]:
    if not w:
        raise ValueError("empty word has no rotations")
    p = smallest_period(w)
    return {w[k:] + w[:k] for k in range(p)}


def canonical_rotation(w: str, alphabet: Alphabet | None = None) -> str:
    """Least rotation of ``w`` in the alphabet's order.

    Booth's algorithm, O(|w|). Without an alphabet, character code order is
    used, which agrees with declaration order for both built-in alphabets.
    """
    if not w:
        raise ValueError("empty word has no canonical rotation")
    if alphabet is None or alphabet.is_ascii_ordered():
        seq: str | list[int] = w
    else:
        seq = [alphabet.rank(c) for c in w]
    k = least_rotation_offset(seq)
    return w[k:] + w[:k]


def least_rotation_offset(s) -> int:
    """Booth's least rotation; returns the offset of the least rotation."""
    n = len(s)
    ss = s + s
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = ss[j]
        i = f[j - k - 1]
        while i != -1 and sj != ss[k + i + 1]:
            if sj < ss[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if i == -1 and sj != ss[k + i + 1]:
            if sj < ss[k + i + 1]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


def brute_force_canonical(w: str, alphabet: Alphabet | None = None) -> str:
    if not w:
        raise ValueError("empty word has no canonical rotation")
    rots = [w[k:] + w[:k] for k in range(len(w))]
    if alphabet is None:
        return min(rots)
    return min(rots, key=alphabet.sort_key)


def count_letter(w: str, x: str) -> int:
    return w.count(x)


def find_occurrences(haystack: str, needle: str) -> list[int]:
    """All start positions of ``needle`` in ``haystack``, overlaps included.

    KMP scan, linear in |haystack| + |needle|.
    """
    if not needle:
        raise ValueError("empty needle")
    m = len(needle)
    fail = _failure(needle)
    out = []
    q = 0
    for i, c in enumerate(haystack):
        while q and needle[q] != c:
            q = fail[q - 1]
        if needle[q] == c:
            q += 1
        if q == m:
            out.append(i - m + 1)
            q = fail[q - 1]
    return out


def is_rotation_of(u: str, w: str) -> int | None:
    """Least offset k with rotate(w, k) == u, or None."""
    if len(u) != len(w):
        return None
    if not w:
        return 0
    k = (w + w).find(u)
    return k if 0 <= k < len(w) else None


def _failure(w: str) -> list[int]:
    fail = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return fail
