"""Choosing a square-free word from per-position lists by random picks with
erase-on-repetition, the lossless run log, and runtime statistics."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from thuelab.errors import MalformedLogError
from thuelab.words import (
    Word,
    _suffix_square_half_bytes,
    format_symbols,
    is_nonrepetitive,
    is_nonrepetitive_fast,
    parse_symbols,
    suffix_square_halves,
)

ChoiceSource = Union[random.Random, Iterable[int]]


@dataclass(frozen=True)
class ListSystem:
    """An ordered sequence of candidate lists, one per target position.

    The order of each list is significant: it defines what the 1-based
    position values recorded in a run's choice trace mean.
    """

    lists: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for k, lst in enumerate(self.lists):
            if len(lst) == 0:
                raise ValueError(f"list {k + 1} is empty")
            if len(set(lst)) != len(lst):
                raise ValueError(f"list {k + 1} has repeated symbols")
            for s in lst:
                if not 0 <= s < 256:
                    raise ValueError(f"list {k + 1}: symbol {s} out of byte range")

    @property
    def n(self) -> int:
        return len(self.lists)

    @classmethod
    def parse(cls, text: str) -> "ListSystem":
        """One list per line, symbols comma-separated.  Numeric tokens are
        1-based display symbols; single letters map a=0, b=1, ..."""
        lists = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            syms = []
            for tok in line.split(","):
                tok = tok.strip()
                if tok.isdigit():
                    v = int(tok) - 1
                    if v < 0:
                        raise ValueError(f"symbol token {tok!r} out of range")
                    syms.append(v)
                elif len(tok) == 1 and "a" <= tok <= "z":
                    syms.append(ord(tok) - ord("a"))
                else:
                    raise ValueError(f"invalid symbol token {tok!r}")
            lists.append(tuple(syms))
        return cls(tuple(lists))

    def render(self) -> str:
        return "\n".join(
            ",".join(str(s + 1) for s in lst) for lst in self.lists
        ) + "\n"


@dataclass(frozen=True)
class Alg1Log:
    """Lossless record of a run: per-step differences plus the word held
    after the last recorded step."""

    diffs: tuple[int, ...]
    final: Word

    @property
    def steps(self) -> int:
        return len(self.diffs)

    def to_json_obj(self) -> dict:
        return {
            "d": list(self.diffs),
            "s": format_symbols(self.final),
            "m": self.steps,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Alg1Log":
        diffs = tuple(obj["d"])
        final = parse_symbols(obj["s"])
        if obj.get("m", len(diffs)) != len(diffs):
            raise MalformedLogError("step count does not match difference count")
        return cls(diffs, final)


@dataclass(frozen=True)
class Alg1Run:
    """Instrumented outcome of a run."""

    completed: bool
    word: Word
    steps: int
    diffs: tuple[int, ...]
    choices: tuple[int, ...]
    multi_square_steps: Optional[int] = None

    @property
    def log(self) -> Alg1Log:
        return Alg1Log(self.diffs, self.word)


def validate_differences(diffs: Sequence[int]) -> None:
    """Raise unless diffs satisfies: first entry 1, every entry <= 1, every
    prefix sum >= 1."""
    if len(diffs) == 0:
        return
    if diffs[0] != 1:
        raise MalformedLogError("first difference must be 1")
    total = 0
    for j, d in enumerate(diffs):
        if d > 1:
            raise MalformedLogError(f"difference {d} at step {j + 1} exceeds 1")
        total += d
        if total < 1:
            raise MalformedLogError(f"prefix sum {total} < 1 at step {j + 1}")


def _draw(source: ChoiceSource, it: Optional[Iterator[int]], size: int) -> int:
    if it is not None:
        r = next(it)
        if not 1 <= r <= size:
            raise ValueError(f"scripted choice {r} invalid for a list of size {size}")
        return r
    return source.randrange(size) + 1  # type: ignore[union-attr]


def run_alg1(
    lists: ListSystem,
    choices: ChoiceSource,
    step_budget: Optional[int] = None,
    count_multiplicity: bool = False,
    verify: bool = True,
    debug: bool = False,
) -> Alg1Run:
    """Build a word position by position, picking each symbol from its list.

    When a square ends at the position just filled, the shortest such square's
    second block is erased and the scan index moves back accordingly.  Stops
    when all positions are filled or the step budget is spent.

    ``verify`` runs the fast square-freeness check on the final word;
    ``debug`` additionally runs the direct-scan oracle after every step.
    """
    n = lists.n
    budget = 100 * n if step_budget is None else step_budget
    if budget < 1:
        raise ValueError("step budget must be >= 1")
    it = iter(choices) if not isinstance(choices, random.Random) else None
    buf = bytearray()
    diffs: list[int] = []
    rs: list[int] = []
    multi = 0
    i = 1
    steps = 0
    while i <= n and steps < budget:
        steps += 1
        lst = lists.lists[i - 1]
        r = _draw(choices, it, len(lst))
        rs.append(r)
        buf.append(lst[r - 1])
        h = _suffix_square_half_bytes(buf, 1)
        if count_multiplicity and h and len(suffix_square_halves(buf, 1)) > 1:
            multi += 1
        if h:
            del buf[len(buf) - h :]
            i = i - h + 1
            diffs.append(1 - h)
        else:
            i += 1
            diffs.append(1)
        if debug and not is_nonrepetitive(buf):
            raise AssertionError(f"held word repetitive after step {steps}")
    word = tuple(buf)
    if verify and not is_nonrepetitive_fast(word):
        raise AssertionError("held word is repetitive; detector bug")
    return Alg1Run(
        completed=i > n,
        word=word,
        steps=steps,
        diffs=tuple(diffs),
        choices=tuple(rs),
        multi_square_steps=multi if count_multiplicity else None,
    )


def encode_alg1_log(run: Alg1Run) -> Alg1Log:
    return Alg1Log(run.diffs, run.word)


def decode_alg1_log(log: Alg1Log, lists: ListSystem) -> tuple[int, ...]:
    """Recover the 1-based choice positions from a log, last step first.

    A difference of 1 pops the last symbol; a difference d <= 0 re-appends the
    erased block (of size 1 - d) by copying it from the surviving half, reads
    the choice off the restored final symbol, then drops that symbol.
    """
    validate_differences(log.diffs)
    if sum(log.diffs) != len(log.final):
        raise MalformedLogError("final word length does not match difference sum")
    word = list(log.final)
    out: list[int] = []
    for d in reversed(log.diffs):
        if d == 1:
            if not word:
                raise MalformedLogError("ran out of symbols while decoding")
            pos = len(word)
            sym = word.pop()
        else:
            h = 1 - d
            l = len(word)
            if l - h < 0:
                raise MalformedLogError(f"erasure of half {h} exceeds word length {l}")
            sym = word[l - 1]
            word.extend(word[l - h : l - 1])
            pos = l + h  # the restored final symbol sat at position l + h
        if pos < 1 or pos > lists.n:
            raise MalformedLogError(f"position {pos} outside the list system")
        lst = lists.lists[pos - 1]
        try:
            out.append(lst.index(sym) + 1)
        except ValueError:
            raise MalformedLogError(
                f"symbol {sym} not in list {pos}"
            ) from None
    if word:
        raise MalformedLogError("leftover symbols after decoding all steps")
    return tuple(reversed(out))


def identical_lists(list_size: int, n: int) -> ListSystem:
    """Every position offers the same first ``list_size`` symbols."""
    base = tuple(range(list_size))
    return ListSystem((base,) * n)


def random_pool_lists(list_size: int, n: int, rng: random.Random) -> ListSystem:
    """Each position gets a uniform ``list_size``-subset of a pool of
    ``3 * list_size`` symbols, in drawn order."""
    pool = range(3 * list_size)
    return ListSystem(tuple(tuple(rng.sample(pool, list_size)) for _ in range(n)))


GENERATORS = {
    "identical": identical_lists,
    "random-disjoint-pool": random_pool_lists,
}


@dataclass(frozen=True)
class StatsRow:
    n: int
    trials: int
    mean_steps: float
    max_steps: int
    completed: float


@dataclass(frozen=True)
class StatsTable:
    list_size: int
    generator: str
    seed: int
    budget_factor: int
    rows: tuple[StatsRow, ...]

    def to_csv(self) -> str:
        lines = ["n,trials,mean_steps,max_steps,completed"]
        for r in self.rows:
            lines.append(
                f"{r.n},{r.trials},{r.mean_steps},{r.max_steps},{r.completed}"
            )
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "list_size": self.list_size,
            "generator": self.generator,
            "seed": self.seed,
            "budget_factor": self.budget_factor,
            "rows": [vars(r) for r in self.rows],
        }


def alg1_stats(
    list_size: int,
    n_values: Sequence[int],
    trials: int,
    seed: int,
    generator: str = "identical",
    budget_factor: int = 100,
) -> StatsTable:
    """Seeded runtime measurements of the list-choosing loop."""
    if list_size < 3:
        raise ValueError("list_size must be >= 3")
    if generator not in GENERATORS:
        raise ValueError(f"unknown generator {generator!r}")
    rows = []
    for n in n_values:
        steps_seen = []
        done = 0
        for t in range(trials):
            if generator == "identical":
                system = identical_lists(list_size, n)
            else:
                system = random_pool_lists(
                    list_size, n, random.Random(f"{seed}:lists:{n}:{t}")
                )
            run = run_alg1(
                system,
                random.Random(f"{seed}:run:{n}:{t}"),
                step_budget=budget_factor * n,
            )
            steps_seen.append(run.steps)
            done += run.completed
        rows.append(
            StatsRow(
                n=n,
                trials=trials,
                mean_steps=sum(steps_seen) / trials,
                max_steps=max(steps_seen),
                completed=done / trials,
            )
        )
    return StatsTable(list_size, generator, seed, budget_factor, tuple(rows))
