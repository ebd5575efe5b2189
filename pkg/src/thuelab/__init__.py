"""Square-free words, repetition games, lossless game-log codecs, and exact
walk counting, with a CLI and a small local game server."""

from thuelab.words import (
    Alphabet,
    Repetition,
    first_square,
    first_square_fast,
    is_nonrepetitive,
    is_nonrepetitive_fast,
    suffix_square,
    thue_substitute,
    thue_word,
)

__all__ = [
    "Alphabet",
    "Repetition",
    "first_square",
    "first_square_fast",
    "is_nonrepetitive",
    "is_nonrepetitive_fast",
    "suffix_square",
    "thue_substitute",
    "thue_word",
]

__version__ = "0.1.0"
