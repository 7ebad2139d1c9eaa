"""Braid words, the word problem, and braids acting on slot assignments.

Words are sequences of signed generators and are stored in application
order: the first letter is the crossing performed first.  Generator i
crosses the strands currently sitting in slots i and i+1 (positive sign
one way over, negative the other).

Equality of words is semantic.  It is decided by handle reduction: a
handle is a subword framed by a generator and its inverse with only
higher-index letters between them, and repeatedly rewriting the leftmost
handle terminates in a handle-free word, which is empty exactly when the
braid is trivial.

The slot-assignment groupoid treats a permutation as an object — slot j
holds strand pi(j) — and a word as an arrow from pi to the assignment
obtained by pushing each slot's content along the word's trajectory.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator


class StrandMismatch(ValueError):
    """The two words run on different strand counts."""


class SourceTargetMismatch(ValueError):
    """Arrows compose only when the first ends where the second starts."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as the image tuple (1-based)."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.image}")

    @staticmethod
    def identity(n: int) -> Permutation:
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def from_cycles(n: int, cycles: Iterable[Iterable[int]]) -> Permutation:
        image = list(range(1, n + 1))
        for cycle in cycles:
            items = list(cycle)
            for a, b in zip(items, items[1:] + items[:1]):
                image[a - 1] = b
        return Permutation(tuple(image))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def then(self, other: Permutation) -> Permutation:
        """The permutation doing self first, then other."""
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other(self(i)) for i in range(1, self.degree + 1)))

    def inverse(self) -> Permutation:
        image = [0] * self.degree
        for i, v in enumerate(self.image, start=1):
            image[v - 1] = i
        return Permutation(tuple(image))

    def is_identity(self) -> bool:
        return all(self(i) == i for i in range(1, self.degree + 1))

    def cycle_string(self) -> str:
        """Disjoint-cycle display, fixed points omitted; 'id' when trivial."""
        seen: set[int] = set()
        parts = []
        for i in range(1, self.degree + 1):
            if i in seen or self(i) == i:
                continue
            cycle = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cycle.append(j)
                seen.add(j)
                j = self(j)
            parts.append("(" + " ".join(str(c) for c in cycle) + ")")
        return "".join(parts) if parts else "id"


def adjacent_transposition(n: int, i: int) -> Permutation:
    image = list(range(1, n + 1))
    image[i - 1], image[i] = image[i], image[i - 1]
    return Permutation(tuple(image))


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid generators; letters are (index, sign) pairs."""

    strands: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise ValueError("need at least one strand")
        for idx, sign in self.letters:
            if not 1 <= idx <= self.strands - 1:
                raise ValueError(f"generator {idx} out of range for {self.strands} strands")
            if sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {sign}")

    def __len__(self) -> int:
        return len(self.letters)

    def concat(self, other: BraidWord) -> BraidWord:
        """This word followed by the other."""
        if other.strands != self.strands:
            raise StrandMismatch(f"{self.strands} vs {other.strands} strands")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(
            self.strands, tuple((i, -s) for i, s in reversed(self.letters))
        )

    def writhe(self) -> int:
        return sum(s for _, s in self.letters)


def word(strands: int, letters: Iterable[tuple[int, int]] = ()) -> BraidWord:
    return BraidWord(strands, tuple((int(i), int(s)) for i, s in letters))


def underlying_perm(w: BraidWord) -> Permutation:
    """Where each slot's content ends up once every crossing has happened."""
    return reduce(
        lambda acc, letter: acc.then(adjacent_transposition(w.strands, letter[0])),
        w.letters,
        Permutation.identity(w.strands),
    )


# --------------------------------------------------------------------------
# Word problem


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[tuple[int, int]] = []
    for letter in w.letters:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return BraidWord(w.strands, tuple(out))


def _leftmost_handle(letters: tuple[tuple[int, int], ...]) -> tuple[int, int] | None:
    """The handle closing earliest: positions (a, b) framing it, or None.

    A handle ends at position b when scanning back from b the first letter
    of index <= index(b) carries the same index with opposite sign.
    """
    for b, (idx, sign) in enumerate(letters):
        for a in range(b - 1, -1, -1):
            ai, asgn = letters[a]
            if ai <= idx:
                if ai == idx and asgn == -sign:
                    return a, b
                break
    return None


def handle_reduce(w: BraidWord) -> BraidWord:
    """Rewrite until handle-free; the result is empty iff the braid is trivial."""
    letters = free_reduce(w).letters
    fuel = 200_000 + 500 * len(letters) ** 2
    while True:
        found = _leftmost_handle(letters)
        if found is None:
            return BraidWord(w.strands, letters)
        a, b = found
        idx, sign = letters[a]
        middle: list[tuple[int, int]] = []
        for i, s in letters[a + 1 : b]:
            if i == idx + 1:
                middle.extend([(idx + 1, -sign), (idx, s), (idx + 1, sign)])
            else:
                middle.append((i, s))
        letters = letters[:a] + tuple(middle) + letters[b + 1 :]
        letters = free_reduce(BraidWord(w.strands, letters)).letters
        fuel -= 1
        if fuel <= 0:  # reduction is proven to terminate; this is a tripwire
            raise RuntimeError("handle reduction ran far beyond any plausible bound")


def is_trivial(w: BraidWord) -> bool:
    return not handle_reduce(w).letters


def braid_equal(w1: BraidWord, w2: BraidWord) -> bool:
    """Semantic equality of braid words."""
    if w1.strands != w2.strands:
        raise StrandMismatch(f"{w1.strands} vs {w2.strands} strands")
    if w1.writhe() != w2.writhe():
        return False
    if underlying_perm(w1) != underlying_perm(w2):
        return False
    return is_trivial(w1.concat(w2.inverse()))


# --------------------------------------------------------------------------
# Slot-assignment groupoid


@dataclass(frozen=True)
class XBraidArrow:
    """A word seen as an arrow between slot assignments.

    The source assigns strand source(j) to slot j; the target is obtained
    by pushing contents along the word's trajectory.
    """

    source: Permutation
    word: BraidWord

    def __post_init__(self) -> None:
        if self.source.degree != self.word.strands:
            raise ValueError("assignment degree must match strand count")

    @property
    def target(self) -> Permutation:
        return underlying_perm(self.word).inverse().then(self.source)

    def inverse(self) -> XBraidArrow:
        return XBraidArrow(self.target, self.word.inverse())


def identity_x(pi: Permutation) -> XBraidArrow:
    return XBraidArrow(pi, BraidWord(pi.degree, ()))


def compose_x(a: XBraidArrow, b: XBraidArrow) -> XBraidArrow:
    """b after a: concatenate words once the endpoints line up."""
    if a.target != b.source:
        raise SourceTargetMismatch(
            f"first arrow ends at {a.target.image}, second starts at {b.source.image}"
        )
    return XBraidArrow(a.source, a.word.concat(b.word))


# --------------------------------------------------------------------------
# Text and JSON forms

_TOKEN = re.compile(r"t(\d+)(')?", re.IGNORECASE)


def parse_word(text: str, strands: int | None = None) -> BraidWord:
    """Parse words like ``t1 t2' t3``; apostrophe marks an inverse letter.

    Letters are written in application order, first crossing first.  The
    strand count defaults to one more than the largest index used.
    """
    letters: list[tuple[int, int]] = []
    pos = 0
    for match in _TOKEN.finditer(text):
        if text[pos : match.start()].strip():
            raise ValueError(f"bad braid word {text!r}")
        letters.append((int(match.group(1)), -1 if match.group(2) else 1))
        pos = match.end()
    if text[pos:].strip():
        raise ValueError(f"bad braid word {text!r}")
    if strands is None:
        strands = max((i for i, _ in letters), default=0) + 1
    return BraidWord(strands, tuple(letters))


def format_word(w: BraidWord) -> str:
    if not w.letters:
        return "e"
    return " ".join(f"t{i}" + ("'" if s < 0 else "") for i, s in w.letters)


def word_to_json(w: BraidWord) -> dict:
    return {"n": w.strands, "word": [[i, s] for i, s in w.letters]}


def word_from_json(obj: dict) -> BraidWord:
    return BraidWord(int(obj["n"]), tuple((int(i), int(s)) for i, s in obj["word"]))
