"""Morphisms as letter-to-word tables.

Application uses ``str.translate`` with a letter -> image table, so applying
a morphism to a word of a million letters is a single C-level pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .words import Alphabet


class MorphismParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Morphism:
    source: Alphabet
    target: Alphabet
    images: Mapping[str, str]
    name: str = ""
    _table: dict[int, str] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if set(self.images) != set(self.source.symbols):
            missing = set(self.source.symbols) - set(self.images)
            extra = set(self.images) - set(self.source.symbols)
            raise ValueError(
                f"images must cover the source alphabet exactly "
                f"(missing {sorted(missing)}, extra {sorted(extra)})"
            )
        images = {x: self.images[x] for x in self.source}
        for img in images.values():
            self.target.check(img)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_table", {ord(x): img for x, img in images.items()})

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.images) == dict(other.images)
        )

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.images.items())))

    def __call__(self, w: str) -> str:
        return self.apply(w)

    def __getitem__(self, letter: str) -> str:
        return self.images[letter]

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target

    @property
    def min_image_len(self) -> int:
        return min(len(v) for v in self.images.values())

    @property
    def max_image_len(self) -> int:
        return max(len(v) for v in self.images.values())

    @property
    def is_erasing(self) -> bool:
        return self.min_image_len == 0

    @property
    def prolongable_letters(self) -> tuple[str, ...]:
        if not self.is_endomorphism:
            return ()
        return tuple(
            x for x in self.source if len(self.images[x]) >= 2 and self.images[x][0] == x
        )

    def apply(self, w: str) -> str:
        self.source.check(w)
        return w.translate(self._table)

    # Alias kept for callers that apply a coding to an underlying word.
    image_word = apply

    def to_text(self) -> str:
        lines = [f"alphabet: {self.source}"]
        if not self.is_endomorphism:
            lines.append(f"target: {self.target}")
        lines += [f"{x} -> {self.images[x]}".rstrip() for x in self.source]
        return "\n".join(lines) + "\n"


def identity(alphabet: Alphabet) -> Morphism:
    return Morphism(alphabet, alphabet, {x: x for x in alphabet}, name="id")


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """outer o inner: x -> outer(inner(x))."""
    if inner.target != outer.source:
        raise ValueError(
            f"cannot compose: inner target {inner.target} != outer source {outer.source}"
        )
    return Morphism(
        inner.source,
        outer.target,
        {x: outer.apply(img) for x, img in inner.images.items()},
    )


def power(m: Morphism, n: int) -> Morphism:
    if not m.is_endomorphism:
        raise ValueError("power requires an endomorphism")
    if n < 0:
        raise ValueError("exponent must be non-negative")
    result = identity(m.source)
    base = m
    # square-and-multiply; composition of powers of one morphism commutes
    while n:
        if n & 1:
            result = compose(base, result)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def iterate(m: Morphism, w: str, n: int) -> str:
    """m^n(w) by repeated application, without building the power table."""
    for _ in range(n):
        w = m.apply(w)
    return w


class FixedPointStream:
    """Growing prefix of the fixed point m^omega(seed).

    The buffer always equals a prefix of m(buffer[:consumed]); extending it
    appends m(next unconsumed block), so work is proportional to output.
    """

    def __init__(self, m: Morphism, seed: str):
        if seed not in m.prolongable_letters:
            raise ValueError(f"morphism is not prolongable on {seed!r}")
        self.morphism = m
        self.seed = seed
        self._buffer = m.images[seed]
        self._consumed = 1

    def __len__(self) -> int:
        return len(self._buffer)

    def prefix(self, min_len: int) -> str:
        m = self.morphism
        while len(self._buffer) < min_len:
            block = self._buffer[self._consumed : len(self._buffer)]
            if not block:
                # every remaining letter erased: the fixed point is finite
                raise ValueError("fixed point does not grow beyond its current prefix")
            self._consumed = len(self._buffer)
            self._buffer += block.translate(m._table)
        return self._buffer

    def snapshot(self) -> str:
        return self._buffer


def fixed_point_prefix(m: Morphism, seed: str, min_len: int) -> str:
    return FixedPointStream(m, seed).prefix(min_len)


def parse_morphism(text: str, alphabet: Alphabet | None = None) -> Morphism:
    """Parse ``<letter> -> <image>`` rules, one per line.

    An empty image denotes the empty word. ``#`` starts a comment. Optional
    headers ``alphabet: ...`` (source) and ``target: ...`` fix letter order;
    otherwise alphabets follow first appearance.
    """
    source: list[str] | None = list(alphabet.symbols) if alphabet else None
    target: list[str] | None = None
    images: dict[str, str] = {}
    seen_letters: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            source = list("".join(line[len("alphabet:"):].split()))
            continue
        if line.startswith("target:"):
            target = list("".join(line[len("target:"):].split()))
            continue
        if "->" not in line:
            raise MorphismParseError(f"expected '<letter> -> <image>', got {raw!r}", lineno)
        lhs, rhs = (part.strip() for part in line.split("->", 1))
        if len(lhs) != 1:
            raise MorphismParseError(f"left side must be one letter, got {lhs!r}", lineno)
        if " " in rhs:
            raise MorphismParseError(f"image may not contain spaces: {rhs!r}", lineno)
        if lhs in images:
            raise MorphismParseError(f"duplicate rule for {lhs!r}", lineno)
        images[lhs] = rhs
        for c in lhs + rhs:
            if c not in seen_letters:
                seen_letters.append(c)
    if not images:
        raise MorphismParseError("no rules found")
    if source is None:
        source = list(images)
    try:
        src = Alphabet.of(source)
    except ValueError as e:
        raise MorphismParseError(str(e)) from None
    if target is None:
        image_letters = [c for c in seen_letters if any(c in img for img in images.values())]
        if all(c in src for c in image_letters):
            target = list(src.symbols)
        else:
            target = image_letters
    try:
        return Morphism(src, Alphabet.of(target), images)
    except ValueError as e:
        raise MorphismParseError(str(e)) from None
