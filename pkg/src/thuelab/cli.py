"""Command-line surface: word checks, the list-choosing loop, game runs,
codec fuzzing, walk analytics, and the local game server."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Optional, Sequence

from thuelab import games, list_chooser, walks
from thuelab.game_codecs import (
    decode_erase_log,
    decode_search_log,
    encode_erase_log,
    encode_search_log,
)
from thuelab.words import (
    first_square_fast,
    format_symbols,
    parse_symbols,
    thue_word,
)


def _default_seed() -> int:
    return int(os.environ.get("THUELAB_SEED", "0"))


def parse_ben(spec: str, c: int) -> games.BenStrategy:
    """Strategy specs: mimic | constant:K | cycle:K | greedy-threat |
    scripted-table:FILE (JSON {"table": {...}, "default": K})."""
    name, _, arg = spec.partition(":")
    if name == "constant":
        return games.make_ben("constant", c, symbol=int(arg or 0))
    if name == "cycle":
        return games.make_ben("cycle", c, offset=int(arg or 0))
    if name == "scripted-table":
        with open(arg) as fh:
            obj = json.load(fh)
        return games.make_ben(
            "scripted-table", c, table=obj["table"], default=obj["default"]
        )
    return games.make_ben(name, c)


def _cmd_check(args) -> int:
    if not args.word and not args.file:
        print("error: give a word or --file", file=sys.stderr)
        return 2
    words = []
    if args.file:
        with open(args.file) as fh:
            words = [line.strip() for line in fh if line.strip()]
    if args.word:
        words.insert(0, args.word)
    worst = 0
    for text in words:
        w = parse_symbols(text)
        rep = first_square_fast(w)
        if rep is None:
            print(f"nonrepetitive: {text}")
        else:
            square = format_symbols(rep.block(w) * 2)
            print(f'repetition "{square}" at end={rep.end} half={rep.half}: {text}')
            worst = 1
    return worst


def _cmd_thue(args) -> int:
    print(format_symbols(thue_word(args.length)))
    return 0


def _cmd_choose(args) -> int:
    with open(args.lists) as fh:
        system = list_chooser.ListSystem.parse(fh.read())
    run = list_chooser.run_alg1(
        system,
        random.Random(args.seed),
        step_budget=args.budget_factor * system.n,
        count_multiplicity=True,
    )
    word = format_symbols(run.word) if run.word else ""
    if args.format == "json":
        obj = {
            "completed": run.completed,
            "word": word,
            "steps": run.steps,
            "multi_square_steps": run.multi_square_steps,
        }
        if args.stats:
            obj["log"] = run.log.to_json_obj()
        print(json.dumps(obj))
    else:
        print(word)
        if args.stats:
            print(f"completed={run.completed} steps={run.steps} n={system.n}")
            print(f"multi_square_steps={run.multi_square_steps}")
    return 0 if run.completed else 1


def _cmd_choose_stats(args) -> int:
    table = list_chooser.alg1_stats(
        args.list_size,
        [int(x) for x in args.n.split(",")],
        args.trials,
        args.seed,
        generator=args.generator,
        budget_factor=args.budget_factor,
    )
    if args.format == "json":
        print(json.dumps(table.to_json_obj()))
    else:
        print(
            f"# list_size={table.list_size} generator={table.generator}"
            f" seed={table.seed} budget_factor={table.budget_factor}",
            file=sys.stderr,
        )
        sys.stdout.write(table.to_csv())
    return 0


def _game_output(args, result, extra: dict) -> None:
    if args.format == "json":
        obj = games.trace_to_json(result)
        obj.update(extra)
        print(json.dumps(obj))
    else:
        for k, v in extra.items():
            print(f"{k}={v}")
    if args.trace_out:
        with open(args.trace_out, "w") as fh:
            json.dump(games.trace_to_json(result), fh)


def _cmd_erase_game(args) -> int:
    ben = parse_ben(args.ben, args.c)
    res = games.play_erase_game(
        args.c, random.Random(args.seed), ben, args.n, move_budget=args.budget
    )
    _game_output(
        args,
        res,
        {
            "reached": res.reached,
            "length": len(res.word),
            "moves": len(res.moves),
            "word": format_symbols(res.word) if res.word else "",
        },
    )
    return 0


def _cmd_nonrep_game(args) -> int:
    ben = parse_ben(args.ben, args.c)
    res = games.play_nonrep_game(args.c, random.Random(args.seed), ben, args.n)
    extra = {
        "winner": res.winner,
        "length": len(res.word),
        "word": format_symbols(res.word) if res.word else "",
    }
    if res.repetition:
        extra["repetition_half"] = res.repetition.half
        extra["repetition_end"] = res.repetition.end
    _game_output(args, res, extra)
    return 0


def _cmd_search_sim(args) -> int:
    ben = parse_ben(args.ben, args.c)
    budget = args.budget if args.budget is not None else 100 * args.n
    res = games.run_search_simulation(
        args.c, random.Random(args.seed), ben, args.n, ann_move_budget=budget
    )
    _game_output(
        args,
        res,
        {
            "reached": res.reached,
            "length": len(res.word),
            "steps": len(res.steps),
            "weight": res.weight,
            "word": format_symbols(res.word) if res.word else "",
        },
    )
    return 0


def _fuzz_alg1(trials: int, seed: int) -> tuple[int, int]:
    ok = 0
    multi = 0
    for t in range(trials):
        rng = random.Random(f"{seed}:alg1:{t}")
        n = rng.randrange(1, 60)
        system = list_chooser.random_pool_lists(4, n, rng)
        run = list_chooser.run_alg1(
            system, rng, step_budget=100 * n, count_multiplicity=True
        )
        multi += run.multi_square_steps or 0
        if list_chooser.decode_alg1_log(run.log, system) == run.choices:
            ok += 1
    return ok, multi


def _fuzz_erase(trials: int, seed: int) -> tuple[int, int]:
    bens = games.builtin_bens(8)
    ok = 0
    multi = 0
    for t in range(trials):
        ben = bens[t % len(bens)]
        res = games.play_erase_game(
            8,
            random.Random(f"{seed}:erase:{t}"),
            ben,
            24,
            move_budget=120,
            count_multiplicity=True,
        )
        multi += res.multi_square_steps or 0
        if decode_erase_log(encode_erase_log(res), ben, 8) == res.ann_symbols:
            ok += 1
    return ok, multi


def _fuzz_search(trials: int, seed: int) -> tuple[int, int]:
    bens = games.builtin_bens(6)
    ok = 0
    multi = 0
    for t in range(trials):
        ben = bens[t % len(bens)]
        res = games.run_search_simulation(
            6,
            random.Random(f"{seed}:search:{t}"),
            ben,
            30,
            ann_move_budget=40,
            count_multiplicity=True,
        )
        multi += res.multi_square_steps or 0
        if decode_search_log(encode_search_log(res), ben, 6) == res.ann_symbols:
            ok += 1
    return ok, multi


_FUZZERS = {"alg1": _fuzz_alg1, "erase": _fuzz_erase, "search": _fuzz_search}


def _cmd_codec(args) -> int:
    ok, multi = _FUZZERS[args.which](args.trials, args.seed)
    print(f"{ok}/{args.trials} roundtrips ok")
    print(f"multi-suffix-square events observed: {multi}")
    return 0 if ok == args.trials else 1


def _cmd_walks(args) -> int:
    system = walks.SYSTEMS[args.sys]
    if args.action == "count":
        counts = walks.count_walks(system, args.m)
        if args.format == "json":
            print(json.dumps({"m_max": args.m, "counts": [str(c) for c in counts]}))
        else:
            print("m,T_m")
            for m, c in enumerate(counts, start=1):
                print(f"{m},{c}")
        return 0
    if args.action == "series":
        print(json.dumps(walks.series_from_equation(system, args.order)))
        return 0
    if args.action == "disc":
        d = walks.system_discriminant(system)
        print(json.dumps({"raw": list(d.raw), "normalized": list(d.normalized)}))
        return 0
    if args.action == "roots":
        iso = walks.isolate_unit_roots(list(walks.system_discriminant(system).normalized))
        for r in iso.roots:
            print(f"root={r.value:.12f} bracket=[{r.low:.12f},{r.high:.12f}]")
        for s in iso.suspects:
            print(f"multiplicity-suspect={s:.6f}")
        return 0 if len(iso.roots) == 1 else 1
    if args.action == "growth":
        rep = walks.growth_report(system, args.m)
        print(f"rho={rep.rho:.12f} reciprocal={rep.reciprocal_rho:.6f}")
        for m, ratio in rep.ratios:
            print(f"ratio@{m}={ratio:.6f}")
        if rep.threshold is not None:
            print(f"threshold={rep.threshold:.6f} holds={rep.threshold_holds}")
            return 0 if rep.threshold_holds else 1
        return 0
    if args.action == "bound":
        rep = walks.counting_bound_report(args.sys, args.c, args.n, m_max=args.m_max)
        print(
            f"crossover={rep.crossover} lhs_log2={rep.lhs_log2:.3f}"
            f" rhs_log2={rep.rhs_log2:.3f}"
        )
        return 0 if rep.crossover is not None else 1
    raise AssertionError(args.action)


def _cmd_serve(args) -> int:
    from thuelab import server

    server.serve(args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thuelab")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="test words for repetitions")
    sp.add_argument("word", nargs="?", help="word to check, e.g. 1232312")
    sp.add_argument("--file", help="file with one word per line")
    sp.set_defaults(fn=_cmd_check)

    sp = sub.add_parser("thue", help="emit a square-free ternary word")
    sp.add_argument("length", type=int)
    sp.set_defaults(fn=_cmd_thue)

    sp = sub.add_parser("choose", help="choose a square-free word from lists")
    sp.add_argument("--lists", required=True, help="file, one comma-separated list per line")
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--stats", action="store_true")
    sp.add_argument("--budget-factor", type=int, default=100)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(fn=_cmd_choose)

    sp = sub.add_parser("choose-stats", help="runtime statistics of the choosing loop")
    sp.add_argument("--list-size", type=int, required=True)
    sp.add_argument("--n", required=True, help="comma-separated target lengths")
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.add_argument("--generator", choices=sorted(list_chooser.GENERATORS), default="identical")
    sp.add_argument("--budget-factor", type=int, default=100)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(fn=_cmd_choose_stats)

    for name, fn, budget_help in (
        ("erase-game", _cmd_erase_game, "move budget (default 100*n)"),
        ("nonrep-game", _cmd_nonrep_game, None),
        ("search-sim", _cmd_search_sim, "first-player move budget (default 100*n)"),
    ):
        sp = sub.add_parser(name, help=f"play the {name.replace('-', ' ')}")
        sp.add_argument("--c", type=int, required=True, help="alphabet size")
        sp.add_argument("--ben", default="cycle", help="opponent spec, e.g. mimic or constant:3")
        sp.add_argument("--n", type=int, required=True, help="target length")
        sp.add_argument("--seed", type=int, default=_default_seed())
        if budget_help:
            sp.add_argument("--budget", type=int, default=None, help=budget_help)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--trace-out", help="write the full trace JSON to a file")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("codec", help="log codec tooling")
    sp.add_argument("action", choices=("fuzz",))
    sp.add_argument("--which", choices=sorted(_FUZZERS), required=True)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=_default_seed())
    sp.set_defaults(fn=_cmd_codec)

    sp = sub.add_parser("walks", help="walk counting and analytics")
    sp.add_argument("action", choices=("count", "series", "disc", "roots", "growth", "bound"))
    sp.add_argument("--sys", choices=sorted(walks.SYSTEMS), required=True)
    sp.add_argument("--m", type=int, default=200, help="count/growth horizon")
    sp.add_argument("--order", type=int, default=60, help="series truncation order")
    sp.add_argument("--c", type=int, default=4, help="alphabet/list size for bound")
    sp.add_argument("--n", type=int, default=5, help="target length for bound")
    sp.add_argument("--m-max", type=int, default=2000, help="bound sweep limit")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(fn=_cmd_walks)

    sp = sub.add_parser("serve", help="serve the HTTP game bridge")
    sp.add_argument("--port", type=int, default=8023)
    sp.set_defaults(fn=_cmd_serve)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
