"""Two-player repetition games.

The first player (Ann) plays a randomized strategy; the second player (Ben)
is any deterministic map from the visible word to a symbol.  Three arenas:

* the erase-repetition game, where every square's second block is erased the
  moment it appears;
* the nonrepetitive game, where nothing is erased and any square of half >= 2
  is an immediate win for Ben (half-1 squares are ignored);
* the backtracking search simulation of the nonrepetitive game, where a
  square of half >= 2 is erased and play resumes with whichever player the
  length parity owes the move to.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from thuelab.words import (
    Repetition,
    Word,
    _suffix_square_half_bytes,
    format_symbols,
    parse_symbols,
    suffix_square_halves,
)

AnnSource = Union[random.Random, Iterable[int]]

BUILTIN_BEN_NAMES = ("mimic", "constant", "cycle", "greedy-threat", "scripted-table")


@dataclass(frozen=True)
class BenStrategy:
    """A named pure function from the visible word to a symbol < c."""

    name: str
    c: int
    _fn: Callable[[Word], int] = field(repr=False, compare=False)

    def move(self, word: Sequence[int]) -> int:
        sym = self._fn(tuple(word))
        if not 0 <= sym < self.c:
            raise ValueError(f"strategy {self.name} produced symbol {sym} >= {self.c}")
        return sym


def _greedy_threat_symbol(word: Word, c: int) -> int:
    # Longest half h >= 2 such that appending one symbol completes a square,
    # i.e. the two blocks already agree everywhere but the final position.
    l = len(word)
    for h in range((l + 1) // 2, 1, -1):
        if word[l + 1 - 2 * h : l - h] == word[l + 1 - h : l]:
            return word[l - h]
    return len(word) % c


def make_ben(
    name: str,
    c: int,
    symbol: Optional[int] = None,
    offset: int = 0,
    table: Optional[dict] = None,
    default: Optional[int] = None,
) -> BenStrategy:
    """Built-in deterministic opponents."""
    if c < 1:
        raise ValueError("alphabet size must be >= 1")
    if name == "mimic":
        fn = lambda w: w[-1] if w else 0
    elif name == "constant":
        if symbol is None or not 0 <= symbol < c:
            raise ValueError("constant strategy needs a symbol < c")
        k = symbol
        fn = lambda w: k
    elif name == "cycle":
        off = offset
        fn = lambda w: (len(w) + off) % c
    elif name == "greedy-threat":
        fn = lambda w: _greedy_threat_symbol(w, c)
    elif name == "scripted-table":
        if table is None or default is None or not 0 <= default < c:
            raise ValueError("scripted-table strategy needs a table and a default < c")
        for key, v in table.items():
            if not 0 <= v < c:
                raise ValueError(f"table entry {key!r} -> {v} outside alphabet")
        tbl = dict(table)
        dflt = default
        fn = lambda w: tbl.get(format_symbols(w, c), dflt)
    else:
        raise ValueError(f"unknown strategy {name!r}")
    return BenStrategy(name, c, fn)


def builtin_bens(c: int) -> tuple[BenStrategy, ...]:
    """The four parameter-free opponents used by fuzz suites."""
    return (
        make_ben("mimic", c),
        make_ben("constant", c, symbol=0),
        make_ben("cycle", c),
        make_ben("greedy-threat", c),
    )


def ann_erase_allowed(word: Sequence[int], c: int) -> tuple[int, ...]:
    """Symbols distinct from everything in the last three positions."""
    banned = set(word[-3:])
    return tuple(s for s in range(c) if s not in banned)


def ann_erase_move(word: Sequence[int], c: int, rng: random.Random) -> int:
    allowed = ann_erase_allowed(word, c)
    if not allowed:
        raise ValueError(f"no allowed symbol: alphabet of size {c} is too small")
    return rng.choice(allowed)


def ann_nonrep_allowed(word: Sequence[int], c: int) -> tuple[int, ...]:
    """Exclusion rules of the nonrepetitive-game strategy.

    With the next position m = len + 1: exclude the symbol two back; if the
    last symbol equals the one four back, also exclude the symbol three back;
    if at most one symbol got excluded and a symbol four back exists, exclude
    that one.  At most two exclusions ever apply.
    """
    l = len(word)
    banned = set()
    if l >= 2:
        banned.add(word[l - 2])
    if l >= 4 and word[l - 1] == word[l - 4]:
        banned.add(word[l - 3])
    if len(banned) <= 1 and l >= 4:
        banned.add(word[l - 4])
    return tuple(s for s in range(c) if s not in banned)


def ann_nonrep_move(word: Sequence[int], c: int, rng: random.Random) -> int:
    allowed = ann_nonrep_allowed(word, c)
    if not allowed:
        raise ValueError(f"no allowed symbol: alphabet of size {c} is too small")
    return rng.choice(allowed)


def _ann_draw(
    source: AnnSource, it: Optional[Iterator[int]], allowed: tuple[int, ...]
) -> Optional[int]:
    """Next Ann symbol, or None when a scripted source has run dry."""
    if it is not None:
        try:
            sym = next(it)
        except StopIteration:
            return None
        if sym not in allowed:
            raise ValueError(f"scripted symbol {sym} not in allowed set {allowed}")
        return sym
    return source.choice(allowed)  # type: ignore[union-attr]


@dataclass(frozen=True)
class GameMove:
    mover: str  # "ann" | "ben"
    symbol: int
    half: int  # erased half (erase game) or the ending square (nonrep), 0 if none
    length_after: int


@dataclass(frozen=True)
class EraseGameResult:
    reached: bool
    word: Word
    moves: tuple[GameMove, ...]
    ann_symbols: Word
    multi_square_steps: Optional[int] = None

    @property
    def ann_moves(self) -> int:
        return len(self.ann_symbols)


def play_erase_game(
    c: int,
    ann: AnnSource,
    ben: BenStrategy,
    target_n: int,
    move_budget: Optional[int] = None,
    count_multiplicity: bool = False,
) -> EraseGameResult:
    """Alternating play, first player on odd moves; after every append the
    shortest square ending at the last position is erased."""
    if target_n < 1:
        raise ValueError("target_n must be >= 1")
    budget = 100 * target_n if move_budget is None else move_budget
    it = iter(ann) if not isinstance(ann, random.Random) else None
    buf = bytearray()
    moves: list[GameMove] = []
    ann_syms: list[int] = []
    multi = 0
    move_no = 0
    while len(buf) < target_n and move_no < budget:
        if move_no % 2 == 0:
            sym = _ann_draw(ann, it, ann_erase_allowed(buf, c))
            if sym is None:
                break
            mover = "ann"
            ann_syms.append(sym)
        else:
            sym = ben.move(buf)
            mover = "ben"
        move_no += 1
        buf.append(sym)
        h = _suffix_square_half_bytes(buf, 1)
        if count_multiplicity and h and len(suffix_square_halves(buf, 1)) > 1:
            multi += 1
        if h:
            del buf[len(buf) - h :]
        moves.append(GameMove(mover, sym, h, len(buf)))
    return EraseGameResult(
        reached=len(buf) >= target_n,
        word=tuple(buf),
        moves=tuple(moves),
        ann_symbols=tuple(ann_syms),
        multi_square_steps=multi if count_multiplicity else None,
    )


@dataclass(frozen=True)
class NonrepGameResult:
    winner: str  # "ann" | "ben"
    word: Word
    repetition: Optional[Repetition]
    moves: tuple[GameMove, ...]


def play_nonrep_game(
    c: int, ann: AnnSource, ben: BenStrategy, target_n: int
) -> NonrepGameResult:
    """No erasures; the first square of half >= 2 ends the game for Ben,
    reaching the target length with none is the first player's win."""
    if target_n < 1:
        raise ValueError("target_n must be >= 1")
    it = iter(ann) if not isinstance(ann, random.Random) else None
    buf = bytearray()
    moves: list[GameMove] = []
    while len(buf) < target_n:
        if len(buf) % 2 == 0:
            sym = _ann_draw(ann, it, ann_nonrep_allowed(buf, c))
            if sym is None:
                break
            mover = "ann"
        else:
            sym = ben.move(buf)
            mover = "ben"
        buf.append(sym)
        h = _suffix_square_half_bytes(buf, 2)
        moves.append(GameMove(mover, sym, h, len(buf)))
        if h:
            return NonrepGameResult(
                winner="ben",
                word=tuple(buf),
                repetition=Repetition(len(buf), h),
                moves=tuple(moves),
            )
    return NonrepGameResult(
        winner="ann", word=tuple(buf), repetition=None, moves=tuple(moves)
    )


@dataclass(frozen=True)
class SearchStep:
    mover: str
    symbol: int
    half: int  # backtracked half, 0 if none
    height: int  # word length before the step


@dataclass(frozen=True)
class SearchResult:
    reached: bool
    word: Word  # after the final step
    steps: tuple[SearchStep, ...]
    ann_symbols: Word
    word_after_last_ann: Word
    multi_square_steps: Optional[int] = None

    @property
    def weight(self) -> int:
        return len(self.ann_symbols)


def run_search_simulation(
    c: int,
    ann: AnnSource,
    ben: BenStrategy,
    target_n: int,
    ann_move_budget: int,
    count_multiplicity: bool = False,
) -> SearchResult:
    """Simulate the nonrepetitive game with backtracking: a square of half
    h >= 2 ending at the last position is erased and play continues with the
    player the (even = first player) length parity points at."""
    if target_n < 1 or ann_move_budget < 1:
        raise ValueError("target_n and ann_move_budget must be >= 1")
    it = iter(ann) if not isinstance(ann, random.Random) else None
    buf = bytearray()
    steps: list[SearchStep] = []
    ann_syms: list[int] = []
    snapshot: Word = ()
    multi = 0
    while len(buf) < target_n and len(ann_syms) < ann_move_budget:
        height = len(buf)
        if height % 2 == 0:
            sym = _ann_draw(ann, it, ann_nonrep_allowed(buf, c))
            if sym is None:
                break
            mover = "ann"
        else:
            sym = ben.move(buf)
            mover = "ben"
        buf.append(sym)
        h = _suffix_square_half_bytes(buf, 2)
        if count_multiplicity and h and len(suffix_square_halves(buf, 2)) > 1:
            multi += 1
        if h:
            del buf[len(buf) - h :]
        steps.append(SearchStep(mover, sym, h, height))
        if mover == "ann":
            ann_syms.append(sym)
            snapshot = tuple(buf)
    return SearchResult(
        reached=len(buf) >= target_n,
        word=tuple(buf),
        steps=tuple(steps),
        ann_symbols=tuple(ann_syms),
        word_after_last_ann=snapshot,
        multi_square_steps=multi if count_multiplicity else None,
    )


def trace_to_json(result) -> dict:
    """Per-move JSON records for trace files and session exports."""
    if isinstance(result, EraseGameResult):
        return {
            "game": "erase",
            "moves": [
                {"mover": m.mover, "symbol": m.symbol, "h": m.half, "height": m.length_after}
                for m in result.moves
            ],
            "final": format_symbols(result.word),
            "ann_moves": result.ann_moves,
            "reached": result.reached,
        }
    if isinstance(result, NonrepGameResult):
        return {
            "game": "nonrep",
            "moves": [
                {"mover": m.mover, "symbol": m.symbol, "h": m.half, "height": m.length_after}
                for m in result.moves
            ],
            "final": format_symbols(result.word),
            "winner": result.winner,
        }
    if isinstance(result, SearchResult):
        return {
            "game": "search",
            "moves": [
                {"mover": s.mover, "symbol": s.symbol, "h": s.half, "height": s.height}
                for s in result.steps
            ],
            "final": format_symbols(result.word),
            "final_after_ann": format_symbols(result.word_after_last_ann),
            "reached": result.reached,
        }
    raise TypeError(f"cannot serialize {type(result).__name__}")


def trace_from_json(obj: dict):
    """Inverse of :func:`trace_to_json` (enough state for the codecs)."""
    kind = obj["game"]
    if kind == "erase":
        moves = tuple(
            GameMove(m["mover"], m["symbol"], m["h"], m["height"]) for m in obj["moves"]
        )
        return EraseGameResult(
            reached=obj.get("reached", False),
            word=parse_symbols(obj["final"]),
            moves=moves,
            ann_symbols=tuple(m.symbol for m in moves if m.mover == "ann"),
        )
    if kind == "nonrep":
        moves = tuple(
            GameMove(m["mover"], m["symbol"], m["h"], m["height"]) for m in obj["moves"]
        )
        word = parse_symbols(obj["final"])
        rep = None
        if moves and moves[-1].half:
            rep = Repetition(len(word), moves[-1].half)
        return NonrepGameResult(
            winner=obj["winner"], word=word, repetition=rep, moves=moves
        )
    if kind == "search":
        steps = tuple(
            SearchStep(m["mover"], m["symbol"], m["h"], m["height"]) for m in obj["moves"]
        )
        return SearchResult(
            reached=obj.get("reached", False),
            word=parse_symbols(obj["final"]),
            steps=steps,
            ann_symbols=tuple(s.symbol for s in steps if s.mover == "ann"),
            word_after_last_ann=parse_symbols(obj["final_after_ann"]),
        )
    raise ValueError(f"unknown trace kind {kind!r}")
