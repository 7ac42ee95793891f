"""Exact factor sets and a de-substitution membership decider.

Two routes answer "is u a factor of the infinite word?":

* :func:`closure_factor_set` / :func:`coded_factor_set` compute the exact set
  of factors up to a length bound by closing under the morphism.
* :class:`MembershipOracle` handles words of any length by cutting them at
  marker occurrences, reading off the pre-image, and recursing until the
  word is short enough to look up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .morphism import Morphism, fixed_point_prefix

DEFAULT_MAX_MEMBERS = 2_000_000
MAX_UNDERLYING_BOUND = 4096
MAX_CODED_BOUND = 1024
BASE_BOUND = 200


class ResourceError(RuntimeError):
    """A configured size or depth budget would be exceeded."""


class FactorSet:
    """All factors of length <= ``bound`` of an infinite word.

    Only the length-``bound`` factors are stored; shorter ones are their
    prefixes (every factor of an infinite word extends to the right) and are
    materialized per length on first use.
    """

    def __init__(self, subject: str, alphabet, bound: int, top: frozenset[str], rounds: int = 0):
        self.subject = subject
        self.alphabet = alphabet
        self.bound = bound
        self.rounds = rounds
        self._levels: dict[int, frozenset[str]] = {bound: top, 0: frozenset({""})}

    def of_length(self, n: int) -> frozenset[str]:
        if not 0 <= n <= self.bound:
            raise ValueError(f"length {n} outside factor set bound {self.bound}")
        level = self._levels.get(n)
        if level is None:
            level = frozenset(u[:n] for u in self._levels[self.bound])
            self._levels[n] = level
        return level

    def __contains__(self, u: str) -> bool:
        if len(u) > self.bound:
            raise ValueError(f"word of length {len(u)} exceeds factor set bound {self.bound}")
        return u in self.of_length(len(u))

    def members(self, max_len: int | None = None) -> Iterator[str]:
        top = self.bound if max_len is None else min(max_len, self.bound)
        for n in range(1, top + 1):
            yield from sorted(self.of_length(n))

    def counts(self, max_len: int | None = None) -> list[int]:
        """Number of factors of each length 0..max_len (factor complexity)."""
        top = self.bound if max_len is None else min(max_len, self.bound)
        return [len(self.of_length(n)) for n in range(top + 1)]

    def restrict(self, k: int) -> "FactorSet":
        return FactorSet(self.subject, self.alphabet, k, self.of_length(k), self.rounds)

    def __repr__(self):
        return f"FactorSet({self.subject!r}, bound={self.bound}, top={len(self._levels[self.bound])})"


def _windows(s: str, k: int) -> set[str]:
    return {s[i : i + k] for i in range(len(s) - k + 1)}


def closure_factor_set(
    m: Morphism,
    seed: str,
    k: int,
    max_members: int = DEFAULT_MAX_MEMBERS,
    max_bound: int = MAX_UNDERLYING_BOUND,
) -> FactorSet:
    """Exact length-<=k factors of m^omega(seed).

    Start from the length-k windows of a prefix of the fixed point and add the
    length-k windows of m(u) for every member u until nothing new appears.
    For non-erasing m, a length-k factor of m(w) lies inside m(u) for some
    length-k factor u of w, so the fixpoint misses nothing; and images of
    factors are factors, so it adds nothing spurious.
    """
    if m.is_erasing:
        raise ValueError("closure needs a non-erasing morphism")
    if k < 1:
        raise ValueError("bound must be at least 1")
    if k > max_bound:
        raise ResourceError(f"bound {k} exceeds the configured cap {max_bound}")
    start = fixed_point_prefix(m, seed, 2 * k)
    members = _windows(start, k)
    frontier = set(members)
    rounds = 0
    while frontier:
        rounds += 1
        fresh: set[str] = set()
        for u in frontier:
            fresh |= _windows(m.apply(u), k)
        fresh -= members
        members |= fresh
        if len(members) > max_members:
            raise ResourceError(f"factor set exceeds {max_members} members at bound {k}")
        frontier = fresh
    name = m.name or "m"
    return FactorSet(f"{name}^omega({seed})", m.source, k, frozenset(members), rounds)


def coding_span(k: int, coder: Morphism) -> int:
    """Underlying factor length whose images cover every length-k coded factor."""
    return math.ceil(k / coder.min_image_len) + 1


def coded_factor_set(
    underlying: FactorSet,
    coder: Morphism,
    k: int,
    max_members: int = DEFAULT_MAX_MEMBERS,
    max_bound: int = MAX_CODED_BOUND,
) -> FactorSet:
    """Exact length-<=k factors of coder(underlying word)."""
    if coder.is_erasing:
        raise ValueError("coded factor sets need a non-erasing coding")
    if k < 1:
        raise ValueError("bound must be at least 1")
    if k > max_bound:
        raise ResourceError(f"bound {k} exceeds the configured cap {max_bound}")
    span = coding_span(k, coder)
    if underlying.bound < span:
        raise ValueError(
            f"underlying bound {underlying.bound} too small; need {span} for coded bound {k}"
        )
    members: set[str] = set()
    for u in underlying.of_length(span):
        members |= _windows(coder.apply(u), k)
        if len(members) > max_members:
            raise ResourceError(f"coded factor set exceeds {max_members} members at bound {k}")
    name = coder.name or "h"
    return FactorSet(f"{name}({underlying.subject})", coder.target, k, frozenset(members))


def brute_force_factor_sets(text: str, k: int) -> list[set[str]]:
    """Factors of length 0..k of a finite text, by direct window scan."""
    return [_windows(text, n) if n else {""} for n in range(k + 1)]


# ---------------------------------------------------------------- markers


@dataclass(frozen=True)
class MarkerSpec:
    marker: str
    level: str


@dataclass(frozen=True)
class MarkerCheck:
    spec: MarkerSpec
    verified: bool
    witness: str = ""

    def to_dict(self) -> dict:
        return {
            "marker": self.spec.marker,
            "level": self.spec.level,
            "verified": self.verified,
            "witness": self.witness,
        }


def verify_marker(spec: MarkerSpec, m: Morphism, factor2: FactorSet) -> MarkerCheck:
    """Check that ``marker`` occurs in m(x) exactly at the starts of images.

    Requires (i) the marker to prefix every image, (ii) no occurrence at a
    non-zero offset inside an image, (iii) no occurrence straddling the
    junction m(a)|m(b) for any length-2 factor ab of x. Two letters of
    context suffice when the marker is no longer than the shortest image.
    """
    marker = spec.marker
    if not marker:
        raise ValueError("empty marker")
    if len(marker) > m.min_image_len:
        return MarkerCheck(spec, False, f"marker longer than shortest image ({m.min_image_len})")
    if factor2.bound < 2:
        raise ValueError("marker verification needs length-2 factors")
    for x in m.source:
        img = m.images[x]
        pos = img.find(marker, 1)
        if pos != -1:
            return MarkerCheck(spec, False, f"occurs at offset {pos} of image of {x!r} ({img})")
        if not img.startswith(marker):
            return MarkerCheck(spec, False, f"not a prefix of image of {x!r} ({img})")
    for ab in sorted(factor2.of_length(2)):
        left, right = m.images[ab[0]], m.images[ab[1]]
        joined = left + right
        for pos in range(max(0, len(left) - len(marker) + 1), len(left)):
            if joined.startswith(marker, pos):
                return MarkerCheck(
                    spec, False, f"straddles junction of {ab!r} at offset {pos} ({left}|{right})"
                )
    return MarkerCheck(spec, True)


# ------------------------------------------------------- de-substitution


@dataclass(frozen=True)
class Preimage:
    """A candidate pre-image v with w occurring in m(v) at ``offset``."""

    word: str
    offset: int


@dataclass(frozen=True)
class Parse:
    boundaries: tuple[int, ...]
    candidates: tuple[Preimage, ...]
    failure: str = ""


def desubstitute(w: str, m: Morphism, marker: str) -> Parse:
    """Every pre-image v (up to free right extension) with w inside m(v).

    Image boundaries inside ``w`` sit exactly at marker occurrences, except
    possibly one in the last |marker|-1 positions where the marker is cut
    off. Pieces between boundaries must be whole images; the left stub must
    be a suffix of some image, the right stub a prefix. A cut-off marker at
    the end starts an image of any letter, so that letter is dropped.
    """
    inverse = {img: x for x, img in m.images.items()}
    occ = []
    pos = w.find(marker)
    while pos != -1:
        occ.append(pos)
        pos = w.find(marker, pos + 1)

    tails = [None] + [
        j for j in range(max(len(w) - len(marker) + 1, 0), len(w))
        if marker.startswith(w[j:]) and (not occ or j >= occ[-1] + m.min_image_len)
    ]
    candidates: list[Preimage] = []
    failures: list[str] = []
    for tail in tails:
        cuts = occ + ([tail] if tail is not None else [])
        if not cuts:
            for x in m.source:
                img = m.images[x]
                p = img.find(w)
                if p != -1:
                    candidates.append(Preimage(x, p))
            if not candidates:
                failures.append("no image contains the word and it has no marker")
            continue
        middle = []
        ok = True
        for a, b in zip(cuts, cuts[1:]):
            letter = inverse.get(w[a:b])
            if letter is None:
                failures.append(f"piece {a}..{b} {_clip(w[a:b])!r} is not an image")
                ok = False
                break
            middle.append(letter)
        if not ok:
            continue
        left = w[: cuts[0]]
        if left:
            lefts = [(x, len(m.images[x]) - len(left)) for x in m.source if m.images[x].endswith(left)]
            if not lefts:
                failures.append(f"left stub {_clip(left)!r} is not an image suffix")
                continue
        else:
            lefts = [("", 0)]
        if tail is not None:
            rights = [""]
        else:
            right = w[cuts[-1] :]
            rights = [x for x in m.source if m.images[x].startswith(right)]
            if not rights:
                failures.append(f"right stub {_clip(right)!r} is not an image prefix")
                continue
            # the final piece was not counted in ``middle``
        mid = "".join(middle)
        for (lx, off), rx in product(lefts, rights):
            candidates.append(Preimage(lx + mid + rx, off))
    unique = tuple(dict.fromkeys(candidates))
    return Parse(tuple(occ), unique, "" if unique else "; ".join(failures))


def _clip(s: str, n: int = 40) -> str:
    return s if len(s) <= n else s[: n - 3] + "..."


# ------------------------------------------------------- membership decider

UNDERLYING_LEVEL = "underlying"
CODED_LEVEL = "coded"


@dataclass
class MembershipVerdict:
    """Verdict for one word plus the step that justifies it.

    ``step`` is ``"lookup"`` (answered from an exact factor set) or
    ``"desubstitute"`` (answered by the verdicts on the candidate pre-images
    in ``children``; for a factor verdict one succeeding child is kept).
    """

    word: str
    level: str
    is_factor: bool
    step: str
    bound: int = 0
    morphism: str = ""
    marker: str = ""
    boundaries: tuple[int, ...] = ()
    candidates: tuple[Preimage, ...] = ()
    children: list["MembershipVerdict"] = field(default_factory=list)
    failure: str = ""

    @property
    def verdict(self) -> str:
        return "factor" if self.is_factor else "non-factor"

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def to_dict(self, max_word_len: int | None = None) -> dict:
        d = {
            "word": render_word(self.word, max_word_len),
            "level": self.level,
            "verdict": self.verdict,
            "step": self.step,
        }
        if self.step == "lookup":
            d["bound"] = self.bound
        else:
            d["morphism"] = self.morphism
            d["marker"] = self.marker
            d["boundary_count"] = len(self.boundaries)
            d["candidates"] = [
                {"preimage": render_word(c.word, max_word_len), "offset": c.offset}
                for c in self.candidates
            ]
            if self.failure:
                d["failure"] = self.failure
            d["children"] = [c.to_dict(max_word_len) for c in self.children]
        return d


def render_word(w: str, max_len: int | None = None):
    """Plain string, or a length + digest summary for very long words."""
    if max_len is None or len(w) <= max_len:
        return w
    import hashlib

    return {
        "length": len(w),
        "sha256": hashlib.sha256(w.encode()).hexdigest(),
        "head": w[:32],
        "tail": w[-32:],
    }


class MembershipOracle:
    """Exact factor membership for x = inner^omega(seed) and coder(x).

    ``inner`` and ``coder`` must be non-erasing, and each marker must be
    verified to occur only at image starts; the constructor checks both and
    refuses to build otherwise.
    """

    def __init__(
        self,
        inner: Morphism,
        seed: str,
        coder: Morphism,
        inner_marker: str,
        coder_marker: str,
        base_bound: int = BASE_BOUND,
        max_depth: int = 64,
    ):
        self.inner = inner
        self.seed = seed
        self.coder = coder
        self.base_bound = base_bound
        self.max_depth = max_depth
        self.underlying = closure_factor_set(inner, seed, max(base_bound, coding_span(base_bound, coder)))
        self.coded = coded_factor_set(self.underlying, coder, base_bound)
        self.marker_checks = {
            UNDERLYING_LEVEL: verify_marker(MarkerSpec(inner_marker, UNDERLYING_LEVEL), inner, self.underlying),
            CODED_LEVEL: verify_marker(MarkerSpec(coder_marker, CODED_LEVEL), coder, self.underlying),
        }
        for check in self.marker_checks.values():
            if not check.verified:
                raise ValueError(
                    f"marker {check.spec.marker!r} refuted at {check.spec.level} level: {check.witness}"
                )
        self._memo: dict[tuple[str, str], MembershipVerdict] = {}

    def factor_set(self, level: str) -> FactorSet:
        return self.underlying if level == UNDERLYING_LEVEL else self.coded

    def _level(self, level: str) -> tuple[Morphism, str]:
        if level == UNDERLYING_LEVEL:
            return self.inner, self.marker_checks[UNDERLYING_LEVEL].spec.marker
        if level == CODED_LEVEL:
            return self.coder, self.marker_checks[CODED_LEVEL].spec.marker
        raise ValueError(f"unknown level {level!r}")

    def alphabet(self, level: str):
        return self.inner.source if level == UNDERLYING_LEVEL else self.coder.target

    def is_factor(self, w: str, level: str = UNDERLYING_LEVEL) -> bool:
        return self.decide(w, level).is_factor

    def decide(self, w: str, level: str = UNDERLYING_LEVEL) -> MembershipVerdict:
        self.alphabet(level).check(w)
        return self._decide(w, level, 0)

    def _decide(self, w: str, level: str, depth: int) -> MembershipVerdict:
        key = (level, w)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        base = self.factor_set(level)
        if len(w) <= base.bound:
            verdict = MembershipVerdict(w, level, w in base, "lookup", bound=base.bound)
        else:
            if depth >= self.max_depth:
                raise ResourceError(f"de-substitution depth exceeded {self.max_depth}")
            m, marker = self._level(level)
            parse = desubstitute(w, m, marker)
            verdict = MembershipVerdict(
                w, level, False, "desubstitute",
                morphism=m.name, marker=marker,
                boundaries=parse.boundaries, candidates=parse.candidates,
                failure=parse.failure,
            )
            for cand in parse.candidates:
                sub = self._decide(cand.word, UNDERLYING_LEVEL, depth + 1)
                if sub.is_factor:
                    verdict.is_factor = True
                    verdict.children = [sub]
                    break
                verdict.children.append(sub)
        self._memo[key] = verdict
        return verdict

    def clear_cache(self):
        self._memo.clear()

    def replay(self, verdict: MembershipVerdict) -> bool:
        """Re-check a derivation step by step without searching.

        Lookup steps are re-looked-up; de-substitution steps recompute the
        candidate list locally and compare; a factor verdict additionally
        checks that the word sits in the image of its witness pre-image.
        """
        stack = [verdict]
        seen: set[int] = set()
        while stack:
            v = stack.pop()
            if id(v) in seen:
                continue
            seen.add(id(v))
            base = self.factor_set(v.level)
            if v.step == "lookup":
                if len(v.word) > base.bound or (v.word in base) != v.is_factor:
                    return False
                continue
            m, marker = self._level(v.level)
            if v.marker != marker:
                return False
            parse = desubstitute(v.word, m, marker)
            if parse.candidates != v.candidates:
                return False
            if v.is_factor:
                if len(v.children) != 1 or not v.children[0].is_factor:
                    return False
                child = v.children[0]
                match = [c for c in v.candidates if c.word == child.word]
                # a dropped trailing letter still contributes the marker
                image = m.apply(child.word) + marker
                offset = match[0].offset if match else 0
                if not match or image[offset : offset + len(v.word)] != v.word:
                    return False
            else:
                if [c.word for c in v.candidates] != [c.word for c in v.children]:
                    return False
                if any(c.is_factor for c in v.children):
                    return False
            stack.extend(v.children)
        return True
