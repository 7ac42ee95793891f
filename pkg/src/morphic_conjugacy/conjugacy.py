"""Conjugacy classes over a factor universe.

A class is *complete* in an infinite word when every distinct rotation of
its members is a factor; the word *avoids* the class otherwise, and an
:class:`AvoidanceCertificate` names a rotation that is missing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .factors import FactorSet, MembershipOracle, MembershipVerdict
from .words import Alphabet, canonical_rotation, count_letter, is_rotation_of, smallest_period

INDEX_LETTER = "1"


@dataclass(frozen=True)
class ConjugacyClass:
    canonical: str
    index: int
    period: int

    @property
    def length(self) -> int:
        return len(self.canonical)

    @property
    def elements(self) -> frozenset[str]:
        w = self.canonical
        return frozenset(w[k:] + w[:k] for k in range(self.period))

    def __len__(self) -> int:
        return self.period

    def __contains__(self, w: str) -> bool:
        return is_rotation_of(w, self.canonical) is not None

    def __str__(self) -> str:
        return self.canonical


@dataclass(frozen=True)
class AvoidanceCertificate:
    cls: ConjugacyClass
    missing_rotation: str
    offset: int
    source: str
    verdict: MembershipVerdict | None = None

    def to_dict(self, max_word_len: int | None = None) -> dict:
        d = {
            "class": self.cls.canonical,
            "missing_rotation": self.missing_rotation,
            "offset": self.offset,
            "source": self.source,
        }
        if self.verdict is not None:
            d["derivation"] = self.verdict.to_dict(max_word_len)
        return d


COMPLETE = "complete"
Universe = Union[FactorSet, MembershipOracle]


def class_of(w: str, alphabet: Alphabet | None = None, index_letter: str = INDEX_LETTER) -> ConjugacyClass:
    if not w:
        raise ValueError("empty word has no conjugacy class")
    canon = canonical_rotation(w, alphabet)
    return ConjugacyClass(canon, count_letter(canon, index_letter), smallest_period(canon))


def is_complete(c: ConjugacyClass, universe: FactorSet) -> str | AvoidanceCertificate:
    """``COMPLETE`` or a certificate naming the least-offset missing rotation."""
    if c.length > universe.bound:
        raise ValueError(f"class length {c.length} exceeds universe bound {universe.bound}")
    w = c.canonical
    for k in range(c.length):
        r = w[k:] + w[:k]
        if r not in universe:
            return AvoidanceCertificate(c, r, k, f"lookup (bound {universe.bound})")
    return COMPLETE


def complete_classes_up_to(
    universe: FactorSet,
    max_len: int,
    index_filter: int | None = None,
    alphabet: Alphabet | None = None,
    min_len: int = 2,
) -> list[ConjugacyClass]:
    """All complete classes with min_len <= length <= max_len, sorted.

    A complete class has all its rotations among the factors, so it suffices
    to scan factors u and test rotate(u, 1) first; most fail there.
    """
    if max_len > universe.bound:
        raise ValueError(f"max_len {max_len} exceeds universe bound {universe.bound}")
    found: dict[str, ConjugacyClass] = {}
    for n in range(max(min_len, 1), max_len + 1):
        layer = universe.of_length(n)
        for u in layer:
            if u[1:] + u[0] not in layer:
                continue
            if index_filter is not None and count_letter(u, INDEX_LETTER) > index_filter:
                continue
            if all(u[k:] + u[:k] in layer for k in range(2, n)):
                c = class_of(u, alphabet)
                found.setdefault(c.canonical, c)
    key = (lambda c: (c.length, alphabet.sort_key(c.canonical))) if alphabet else (
        lambda c: (c.length, c.canonical)
    )
    return sorted(found.values(), key=key)


def class_avoided_in_word(
    w: str, universe: Universe, level: str = "underlying", alphabet: Alphabet | None = None
) -> str | AvoidanceCertificate:
    """Scan rotations of ``w`` by offset; certify the first non-factor.

    Uses a factor-set lookup when the word fits under the set's bound,
    otherwise the de-substitution decider.
    """
    if len(w) < 2:
        raise ValueError("classes of length at least 2 only")
    c = class_of(w, alphabet)
    for k in range(len(w)):
        r = w[k:] + w[:k]
        if isinstance(universe, FactorSet):
            if len(r) > universe.bound:
                raise ValueError(f"word of length {len(w)} exceeds universe bound {universe.bound}")
            if r not in universe:
                return AvoidanceCertificate(c, r, k, f"lookup (bound {universe.bound})")
        else:
            verdict = universe.decide(r, level)
            if not verdict.is_factor:
                return AvoidanceCertificate(c, r, k, "desubstitution", verdict)
    return COMPLETE


def replay_certificate(cert: AvoidanceCertificate, universe: Universe, level: str = "underlying") -> bool:
    """Check that the missing rotation is in the class and really is absent."""
    w = cert.cls.canonical
    if cert.missing_rotation not in cert.cls:
        return False
    if len(cert.missing_rotation) != len(w):
        return False
    if isinstance(universe, FactorSet):
        return cert.missing_rotation not in universe
    verdict = cert.verdict or universe.decide(cert.missing_rotation, level)
    return verdict.word == cert.missing_rotation and not verdict.is_factor and universe.replay(verdict)
