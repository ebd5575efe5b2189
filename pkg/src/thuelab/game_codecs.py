"""Lossless codecs for game records.

A reduced game log keeps, for every move of the erase-repetition game that
did not bounce off a half-1 square, the length difference it caused, plus the
final word; a typed search log keeps the per-first-player-move height
differences of the backtracking simulation, a type tag for each large drop,
and the word after the first player's last move.  Both decode back to the
first player's exact choices, given the second player's (pure) strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from thuelab.errors import BenMismatchError, MalformedLogError
from thuelab.games import BenStrategy, EraseGameResult, SearchResult
from thuelab.words import (
    Word,
    _suffix_square_half_seq,
    format_symbols,
    parse_symbols,
)


@dataclass(frozen=True)
class ReducedGameLog:
    diffs: tuple[int, ...]
    final: Word
    ann_moves: int

    def to_json_obj(self) -> dict:
        return {
            "d": list(self.diffs),
            "s": format_symbols(self.final),
            "m": self.ann_moves,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ReducedGameLog":
        return cls(tuple(obj["d"]), parse_symbols(obj["s"]), int(obj["m"]))


@dataclass(frozen=True)
class TypedSearchLog:
    diffs: tuple[int, ...]
    types: Mapping[int, int]  # 1-based difference index -> type 1..4
    final: Word

    def to_json_obj(self) -> dict:
        return {
            "d": list(self.diffs),
            "types": {str(j): t for j, t in sorted(self.types.items())},
            "s": format_symbols(self.final),
            "m": len(self.diffs),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TypedSearchLog":
        diffs = tuple(obj["d"])
        if obj.get("m", len(diffs)) != len(diffs):
            raise MalformedLogError("step count does not match difference count")
        types = {int(j): int(t) for j, t in obj.get("types", {}).items()}
        return cls(diffs, types, parse_symbols(obj["s"]))


def _validate_reduced_diffs(diffs: Sequence[int]) -> None:
    total = 0
    for j, d in enumerate(diffs):
        if d != 1 and d > -3:
            raise MalformedLogError(
                f"difference {d} at entry {j + 1} not in {{1, -3, -4, ...}}"
            )
        total += d
        if total < 1:
            raise MalformedLogError(f"prefix sum {total} < 1 at entry {j + 1}")


def encode_erase_log(trace: EraseGameResult) -> ReducedGameLog:
    """Per-move differences 1 - h with the half-1 bounces dropped."""
    diffs = tuple(1 - m.half for m in trace.moves if m.half != 1)
    return ReducedGameLog(diffs, trace.word, trace.ann_moves)


def _restore_backward(word: list, d: int) -> int:
    """Undo one recorded step on ``word`` in place; return the step's symbol.

    A step of +1 pops.  Otherwise the erased half (of size 1 - d) is restored
    by copying the surviving block, minus the step's own symbol which is read
    off and dropped.
    """
    if d == 1:
        if not word:
            raise MalformedLogError("ran out of symbols while decoding")
        return word.pop()
    h = 1 - d
    l = len(word)
    if l - h < 0:
        raise MalformedLogError(f"erasure of half {h} exceeds word length {l}")
    sym = word[l - 1]
    word.extend(word[l - h : l - 1])
    return sym


def _replay_append(word: list, sym: int, h_min: int) -> int:
    word.append(sym)
    h = _suffix_square_half_seq(word, h_min)
    if h:
        del word[len(word) - h :]
    return h


def decode_erase_log(log: ReducedGameLog, ben: BenStrategy, c: int) -> Word:
    """First player's symbols, recovered from a reduced game log.

    Backward pass rebuilds every retained move's symbol; the forward replay
    inserts the second player's half-1 bounces (his strategy output equal to
    the last symbol) and checks every other output against the log.
    """
    _validate_reduced_diffs(log.diffs)
    if sum(log.diffs) != len(log.final):
        raise MalformedLogError("final word length does not match difference sum")
    if any(not 0 <= s < c for s in log.final):
        raise MalformedLogError(f"final word leaves the alphabet of size {c}")
    word = list(log.final)
    goods: list[int] = []
    for d in reversed(log.diffs):
        goods.append(_restore_backward(word, d))
    if word:
        raise MalformedLogError("leftover symbols after decoding all steps")
    goods.reverse()

    replay: list[int] = []
    out: list[int] = []
    gi = 0
    move_no = 0
    while gi < len(goods):
        move_no += 1
        if move_no % 2 == 1:
            sym = goods[gi]
            gi += 1
            out.append(sym)
            _replay_append(replay, sym, 1)
        else:
            b = ben.move(replay)
            if replay and b == replay[-1]:
                continue  # half-1 bounce, not recorded
            if b != goods[gi]:
                raise BenMismatchError(
                    f"move {move_no}: strategy {ben.name} plays {b}, log has {goods[gi]}"
                )
            gi += 1
            _replay_append(replay, b, 1)
    if len(out) != log.ann_moves:
        raise MalformedLogError(
            f"log claims {log.ann_moves} first-player moves, replay used {len(out)}"
        )
    if tuple(replay) != log.final:
        raise MalformedLogError("replay does not reproduce the final word")
    return tuple(out)


def encode_search_log(trace: SearchResult) -> TypedSearchLog:
    """Halved height differences between consecutive first-player moves, plus
    a type tag for each drop of 2 or more, plus the word after her last move.

    The tag records which of the four large-drop patterns produced the drop:
    1 = her own odd square, 2 = her own even square, 3 = his even square,
    4 = his odd square followed by his forced clean move.
    """
    ann_idx = [i for i, st in enumerate(trace.steps) if st.mover == "ann"]
    if not ann_idx:
        raise ValueError("trace has no first-player moves to encode")
    steps = trace.steps
    heights = [steps[i].height for i in ann_idx]
    diffs = [1]
    types: dict[int, int] = {}
    for k in range(1, len(ann_idx)):
        a, b = heights[k - 1], heights[k]
        i0, i1 = ann_idx[k - 1], ann_idx[k]
        gap = i1 - i0
        st_a = steps[i0]
        # classify against the only five step patterns the simulation allows
        if gap == 1:
            h = st_a.half
            if h % 2 == 0 or h < 5 or b != a + 1 - h:
                raise ValueError(f"impossible single-step pattern at move {k}")
            t = 1
        elif gap == 2:
            nxt = steps[i0 + 1]
            if st_a.half:
                h = st_a.half
                if h % 2 or h < 6 or nxt.half or b != a + 2 - h:
                    raise ValueError(f"impossible own-even-square pattern at move {k}")
                t = 2
            elif nxt.half:
                h = nxt.half
                if h % 2 or h < 6 or b != a + 2 - h:
                    raise ValueError(f"impossible reply-even-square pattern at move {k}")
                t = 3
            else:
                if b != a + 2:
                    raise ValueError(f"impossible clean pattern at move {k}")
                t = 0
        elif gap == 3:
            n1, n2 = steps[i0 + 1], steps[i0 + 2]
            h = n1.half
            if st_a.half or h % 2 == 0 or h < 5 or n2.half or b != a + 3 - h:
                raise ValueError(f"impossible reply-odd-square pattern at move {k}")
            t = 4
        else:
            raise ValueError("more than two second-player moves in a row")
        d = (b - a) // 2
        diffs.append(d)
        if d <= -2:
            types[k + 1] = t
    return TypedSearchLog(tuple(diffs), types, trace.word_after_last_ann)


def reconstruct_heights(log: TypedSearchLog) -> tuple[tuple[int, ...], tuple[str, ...]]:
    """Expand the per-first-player-move heights into the full height sequence
    (height before every step of the simulation) with movers by parity."""
    diffs = log.diffs
    if not diffs:
        if log.types:
            raise MalformedLogError("types present without differences")
        return (), ()
    if diffs[0] != 1:
        raise MalformedLogError("first difference must be 1")
    total = 0
    for j, d in enumerate(diffs):
        if d > 1 or d == 0:
            raise MalformedLogError(f"difference {d} at entry {j + 1} invalid")
        total += d
        if total < 1:
            raise MalformedLogError(f"prefix sum {total} < 1 at entry {j + 1}")
        if d <= -2 and (j + 1) not in log.types:
            raise MalformedLogError(f"missing type for difference at entry {j + 1}")
        if d > -2 and (j + 1) in log.types:
            raise MalformedLogError(f"unexpected type at entry {j + 1}")
    for j, t in log.types.items():
        if not 1 <= j <= len(diffs):
            raise MalformedLogError(f"type entry {j} outside the difference range")
        if t not in (1, 2, 3, 4):
            raise MalformedLogError(f"type {t} at entry {j} outside 1..4")

    hp = [0]
    for d in diffs[1:]:
        hp.append(hp[-1] + 2 * d)
    heights: list[int] = []
    for k in range(1, len(hp)):
        a, b = hp[k - 1], hp[k]
        d = diffs[k]
        if d == 1:
            heights += [a, a + 1]
        elif d == -1:
            heights += [a, a + 1, b - 1]  # his square of size 5, then clean
        else:
            t = log.types[k + 1]
            if t == 1:
                size = a + 1 - b
                _check_square_size(size, odd=True, entry=k + 1)
                heights += [a]
            elif t == 2:
                size = a + 2 - b
                _check_square_size(size, odd=False, entry=k + 1)
                heights += [a, b - 1]
            elif t == 3:
                size = a + 2 - b
                _check_square_size(size, odd=False, entry=k + 1)
                heights += [a, a + 1]
            else:
                size = a + 3 - b
                _check_square_size(size, odd=True, entry=k + 1)
                heights += [a, a + 1, b - 1]
    heights.append(hp[-1])
    movers = tuple("ann" if h % 2 == 0 else "ben" for h in heights)
    return tuple(heights), movers


def _check_square_size(size: int, odd: bool, entry: int) -> None:
    if odd and (size % 2 == 0 or size < 5):
        raise MalformedLogError(f"entry {entry}: inferred square size {size} not odd >= 5")
    if not odd and (size % 2 or size < 6):
        raise MalformedLogError(f"entry {entry}: inferred square size {size} not even >= 6")


def decode_search_log(log: TypedSearchLog, ben: BenStrategy, c: int) -> Word:
    """First player's symbols, recovered from a typed search log."""
    heights, _ = reconstruct_heights(log)
    if any(not 0 <= s < c for s in log.final):
        raise MalformedLogError(f"final word leaves the alphabet of size {c}")
    m = len(heights)
    word = list(log.final)
    hs = list(heights) + [len(word)]
    xs: list[Optional[int]] = [None] * m
    for i in reversed(range(m)):
        if len(word) != hs[i + 1]:
            raise MalformedLogError("height sequence inconsistent with final word")
        delta = hs[i + 1] - hs[i]
        if delta == 1:
            xs[i] = _restore_backward(word, 1)
        else:
            h = hs[i] + 1 - hs[i + 1]
            if h < 2:
                raise MalformedLogError(f"step {i + 1}: backtrack of half {h} < 2")
            xs[i] = _restore_backward(word, 1 - h)
    if word:
        raise MalformedLogError("leftover symbols after decoding all steps")

    replay: list[int] = []
    out: list[int] = []
    for i in range(m):
        sym = xs[i]
        if len(replay) % 2 == 0:
            out.append(sym)
        else:
            b = ben.move(replay)
            if b != sym:
                raise BenMismatchError(
                    f"step {i + 1}: strategy {ben.name} plays {b}, log has {sym}"
                )
        _replay_append(replay, sym, 2)
        if len(replay) != hs[i + 1]:
            raise MalformedLogError(f"step {i + 1}: replay length diverges from heights")
    if tuple(replay) != log.final:
        raise MalformedLogError("replay does not reproduce the final word")
    if len(out) != len(log.diffs):
        raise MalformedLogError(
            f"log claims {len(log.diffs)} first-player moves, replay made {len(out)}"
        )
    return tuple(out)
