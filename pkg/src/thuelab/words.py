"""Alphabets, words, square (repetition) detection, and square-free generators.

A word is a finite sequence of integer symbols ``0..C-1`` over an alphabet of
size ``C``.  All reported positions are 1-based.  For display, symbols map to
``"1".."9"`` (small alphabets) or ``"a".."z"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

Word = tuple[int, ...]

_DIGITS = "123456789"
_LETTERS = "abcdefghijklmnopqrstuvwxyz"

# Grams shorter than this are compared directly; longer suffix squares are
# located through occurrences of the last _ANCHOR symbols.
_ANCHOR = 8


def format_symbols(word: Sequence[int], size: Optional[int] = None) -> str:
    """Render a word as a display string ("123..." or "abc...")."""
    if len(word) == 0:
        return ""
    top = (size - 1) if size is not None else max(word)
    if top < len(_DIGITS):
        table = _DIGITS
    elif top < len(_LETTERS):
        table = _LETTERS
    else:
        raise ValueError(f"no display alphabet for symbols up to {top}")
    return "".join(table[s] for s in word)


def parse_symbols(text: str) -> Word:
    """Parse a display string back into a word."""
    out = []
    for ch in text:
        if ch in _DIGITS:
            out.append(_DIGITS.index(ch))
        elif ch in _LETTERS:
            out.append(_LETTERS.index(ch))
        else:
            raise ValueError(f"invalid symbol character {ch!r}")
    return tuple(out)


@dataclass(frozen=True)
class Alphabet:
    """Symbol set of size ``size``; symbols are the integers 0..size-1."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("alphabet size must be >= 1")

    def validate_word(self, word: Sequence[int]) -> Word:
        w = tuple(word)
        for s in w:
            if not 0 <= s < self.size:
                raise ValueError(f"symbol {s} outside alphabet of size {self.size}")
        return w

    def format(self, word: Sequence[int]) -> str:
        return format_symbols(self.validate_word(word), self.size)

    def parse(self, text: str) -> Word:
        return self.validate_word(parse_symbols(text))


@dataclass(frozen=True)
class Repetition:
    """A square located by the 1-based position of its last symbol and its
    half-size ``half`` (the length of the repeated block)."""

    end: int
    half: int

    def __post_init__(self) -> None:
        if self.half < 1 or self.end - 2 * self.half + 1 < 1:
            raise ValueError(f"impossible repetition end={self.end} half={self.half}")

    @property
    def start(self) -> int:
        return self.end - 2 * self.half + 1

    def block(self, word: Sequence[int]) -> Word:
        """The repeated block, read out of the word this annotates."""
        return tuple(word[self.end - self.half : self.end])


def is_nonrepetitive(word: Sequence[int]) -> bool:
    """Trusted oracle: direct scan over every (end, half) pair."""
    n = len(word)
    for end in range(2, n + 1):
        for h in range(1, end // 2 + 1):
            if word[end - 2 * h : end - h] == word[end - h : end]:
                return False
    return True


def first_square(word: Sequence[int], h_min: int = 1) -> Optional[Repetition]:
    """Earliest-ending square with half >= h_min; ties broken by smaller half.

    Direct scan, oracle-grade.
    """
    if h_min < 1:
        raise ValueError("h_min must be >= 1")
    n = len(word)
    for end in range(2 * h_min, n + 1):
        for h in range(h_min, end // 2 + 1):
            if word[end - 2 * h : end - h] == word[end - h : end]:
                return Repetition(end, h)
    return None


def first_square_fast(word: Sequence[int], h_min: int = 1) -> Optional[Repetition]:
    """Same contract as :func:`first_square`, via a per-half shifted
    comparison (quadratic overall instead of cubic)."""
    if h_min < 1:
        raise ValueError("h_min must be >= 1")
    n = len(word)
    if n < 2 * h_min:
        return None
    arr = np.asarray(word, dtype=np.int64)
    best: Optional[Repetition] = None
    for h in range(h_min, n // 2 + 1):
        if best is not None and 2 * h >= best.end:
            break
        eq = arr[h:] == arr[:-h]
        # A square of half h ends (0-based) at i+h as soon as eq holds on a
        # window [i-h+1, i]; the earliest window start inside a run of
        # consecutive matches gives the earliest end.
        false_pos = np.flatnonzero(~eq)
        bounds = np.concatenate(([-1], false_pos, [eq.size]))
        gaps = bounds[1:] - bounds[:-1] - 1
        hit = np.flatnonzero(gaps >= h)
        if hit.size:
            start = int(bounds[hit[0]]) + 1  # first index of the h-long window
            end = start + 2 * h  # 1-based position of the square's last symbol
            if best is None or end < best.end:
                best = Repetition(end, h)
    return best


def is_nonrepetitive_fast(word: Sequence[int]) -> bool:
    return first_square_fast(word) is None


def _suffix_square_half_seq(word: Sequence[int], h_min: int) -> int:
    l = len(word)
    for h in range(h_min, l // 2 + 1):
        if word[l - 2 * h : l - h] == word[l - h : l]:
            return h
    return 0


def _suffix_square_half_bytes(word, h_min: int) -> int:
    """Smallest h >= h_min such that a square of half h ends at the last
    position, 0 if none.  ``word`` is bytes-like; occurrences of the last
    _ANCHOR symbols prune the candidate halves."""
    l = len(word)
    hmax = l // 2
    if h_min > hmax:
        return 0
    for h in range(h_min, min(hmax, _ANCHOR - 1) + 1):
        if word[l - 2 * h : l - h] == word[l - h : l]:
            return h
    lo = max(h_min, _ANCHOR)
    if lo > hmax:
        return 0
    gram = bytes(word[l - _ANCHOR :])
    # A square of half h repeats the gram starting at l - h - _ANCHOR.
    s_lo = l - hmax - _ANCHOR
    end = l - lo - _ANCHOR
    while end >= s_lo:
        s = word.rfind(gram, s_lo, end + _ANCHOR)
        if s < 0:
            return 0
        h = l - _ANCHOR - s
        if word[l - 2 * h : l - h] == word[l - h : l]:
            return h
        end = s - 1
    return 0


def suffix_square(word: Sequence[int], h_min: int = 1) -> Optional[Repetition]:
    """Square with the smallest half >= h_min ending at the last position."""
    if h_min < 1:
        raise ValueError("h_min must be >= 1")
    if isinstance(word, (bytes, bytearray)):
        h = _suffix_square_half_bytes(word, h_min)
    else:
        h = _suffix_square_half_seq(word, h_min)
    return Repetition(len(word), h) if h else None


def suffix_square_halves(word: Sequence[int], h_min: int = 1) -> tuple[int, ...]:
    """Every half >= h_min of a square ending at the last position."""
    l = len(word)
    return tuple(
        h
        for h in range(h_min, l // 2 + 1)
        if word[l - 2 * h : l - h] == word[l - h : l]
    )


# Square-freeness-preserving substitution over three symbols
# (display: 1 -> 12312, 2 -> 131232, 3 -> 1323132).
_THUE_IMAGES = (
    (0, 1, 2, 0, 1),
    (0, 2, 0, 1, 2, 1),
    (0, 2, 1, 2, 0, 2, 1),
)


def thue_substitute(word: Sequence[int]) -> Word:
    """Apply the square-freeness-preserving ternary substitution."""
    out: list[int] = []
    for s in word:
        if not 0 <= s < 3:
            raise ValueError(f"substitution is defined on three symbols, got {s}")
        out.extend(_THUE_IMAGES[s])
    return tuple(out)


def thue_word(target_len: int) -> Word:
    """A square-free ternary word of exactly ``target_len`` symbols, obtained
    by iterating the substitution from a single symbol and truncating (prefixes
    of square-free words are square-free)."""
    if target_len < 1:
        raise ValueError("target_len must be >= 1")
    w: Word = (0,)
    while len(w) < target_len:
        w = thue_substitute(w)
    return w[:target_len]
