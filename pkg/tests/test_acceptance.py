"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run `pytest -s tests/test_acceptance.py` to see the lines as they pass.
"""

import itertools
import math
import random
import time

from thuelab.cli import main as cli_main
from thuelab.game_codecs import (
    decode_erase_log,
    decode_search_log,
    encode_erase_log,
    encode_search_log,
)
from thuelab.games import (
    ann_erase_allowed,
    ann_nonrep_allowed,
    builtin_bens,
    make_ben,
    play_erase_game,
    run_search_simulation,
)
from thuelab.list_chooser import (
    alg1_stats,
    decode_alg1_log,
    identical_lists,
    random_pool_lists,
    run_alg1,
)
from thuelab.walks import (
    ALG1,
    ERASE,
    SEARCH,
    check_defining_polynomial,
    count_walks,
    count_walks_log,
    counting_bound_report,
    defining_polynomial,
    growth_rho,
    isolate_unit_roots,
    series_from_equation,
    system_discriminant,
)
from thuelab.words import (
    first_square,
    first_square_fast,
    format_symbols,
    is_nonrepetitive,
    parse_symbols,
    suffix_square,
    thue_word,
)

from test_walks import ERASE_DISC, SEARCH_DISC, brute_force_count, scalar_multiple


def report(name: str, ok: bool, detail: str = "") -> None:
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] {name}" + (f" — {detail}" if detail else ""))
    assert ok, f"{name}: {detail}"


def test_paper_examples(capsys):
    w_bad = parse_symbols("1232312")
    w_good = parse_symbols("123132123")
    t0 = time.perf_counter()
    rep = first_square_fast(w_bad)
    ok_good = first_square_fast(w_good) is None
    elapsed = time.perf_counter() - t0
    square = format_symbols(rep.block(w_bad) * 2)
    code_bad = cli_main(["check", "1232312"])
    code_good = cli_main(["check", "123132123"])
    out = capsys.readouterr().out
    with capsys.disabled():
        report(
            "paper examples",
            square == "2323"
            and ok_good
            and code_bad == 1
            and code_good == 0
            and '"2323"' in out
            and elapsed < 1e-3,
            f"square={square}, exits=({code_bad},{code_good}), {elapsed * 1e6:.0f}us",
        )


def test_thue_generator(capsys):
    t0 = time.perf_counter()
    w = thue_word(10_000)
    ok = first_square_fast(w) is None
    elapsed = time.perf_counter() - t0
    with capsys.disabled():
        report("thue generator 1e4", ok and elapsed < 10, f"{elapsed:.2f}s")


def test_exhaustive_small_words(capsys):
    binary_wall = all(
        not is_nonrepetitive(w) for w in itertools.product(range(2), repeat=4)
    )
    expected = [3, 6, 12, 18, 30, 42, 60, 78, 108, 144, 204, 264]
    counts = [0] * 13
    agree = True
    stack = [()]
    while stack:
        w = stack.pop()
        if len(w) == 12:
            continue
        for s in range(3):
            w2 = w + (s,)
            keep = suffix_square(w2) is None
            oracle = is_nonrepetitive(w2)
            fast = first_square_fast(w2) is None
            agree &= oracle == fast == keep
            if keep:
                counts[len(w2)] += 1
                stack.append(w2)
    with capsys.disabled():
        report(
            "exhaustive small words",
            binary_wall and agree and counts[1:] == expected,
            f"counts 1..12 = {counts[1:]}",
        )


def test_list_choosing_pipeline(capsys):
    t0 = time.perf_counter()
    table = alg1_stats(4, [100, 1000, 10_000], trials=100, seed=20240)
    elapsed = time.perf_counter() - t0
    all_complete = all(row.completed == 1.0 for row in table.rows)
    per_n = [row.mean_steps / row.n for row in table.rows]
    stable = max(per_n) / min(per_n) < 2.0
    with capsys.disabled():
        report(
            "list-choosing pipeline",
            all_complete and stable and elapsed < 60,
            f"mean steps/n = {[round(r, 3) for r in per_n]}, {elapsed:.1f}s",
        )


def test_codec_bijections(capsys):
    ok_alg1 = 0
    for t in range(1000):
        rng = random.Random(f"acc:alg1:{t}")
        n = rng.randrange(1, 60)
        system = random_pool_lists(4, n, rng)
        run = run_alg1(system, rng, step_budget=100 * n)
        ok_alg1 += decode_alg1_log(run.log, system) == run.choices

    ok_erase = 0
    bens8 = builtin_bens(8)
    for t in range(1000):
        ben = bens8[t % 4]
        res = play_erase_game(
            8, random.Random(f"acc:erase:{t}"), ben, 24, move_budget=120
        )
        ok_erase += decode_erase_log(encode_erase_log(res), ben, 8) == res.ann_symbols

    ok_search = 0
    bens6 = builtin_bens(6)
    for t in range(1000):
        ben = bens6[t % 4]
        res = run_search_simulation(
            6, random.Random(f"acc:search:{t}"), ben, 30, ann_move_budget=40
        )
        ok_search += (
            decode_search_log(encode_search_log(res), ben, 6) == res.ann_symbols
        )

    # exhaustive injectivity over all length-4 choice streams
    inj_alg1 = True
    system = identical_lists(4, 5)
    seen = set()
    streams = list(itertools.product((1, 2, 3, 4), repeat=4))
    for stream in streams:
        run = run_alg1(system, stream, step_budget=4, verify=False)
        seen.add((run.diffs, run.word))
    inj_alg1 = len(seen) == len(streams)

    def enumerate_streams(step_fn, allowed_fn, m):
        streams = [()]
        for _ in range(m):
            nxt = []
            for prefix in streams:
                word = step_fn(prefix)
                for s in allowed_fn(word):
                    nxt.append(prefix + (s,))
            streams = nxt
        return streams

    ben_cycle8 = make_ben("cycle", 8)
    erase_word = lambda p: play_erase_game(
        8, iter(p), ben_cycle8, 10 ** 6, move_budget=8
    ).word
    logs = set()
    streams = enumerate_streams(erase_word, lambda w: ann_erase_allowed(w, 8), 4)
    for stream in streams:
        log = encode_erase_log(
            play_erase_game(8, iter(stream), ben_cycle8, 10 ** 6, move_budget=8)
        )
        logs.add((log.diffs, log.final, log.ann_moves))
    inj_erase = len(logs) == len(streams)

    ben_cycle6 = make_ben("cycle", 6)
    search_word = lambda p: run_search_simulation(
        6, iter(p), ben_cycle6, 10 ** 6, ann_move_budget=5
    ).word
    logs = set()
    streams = enumerate_streams(search_word, lambda w: ann_nonrep_allowed(w, 6), 4)
    for stream in streams:
        log = encode_search_log(
            run_search_simulation(6, iter(stream), ben_cycle6, 10 ** 6, 4)
        )
        logs.add((log.diffs, tuple(sorted(log.types.items())), log.final))
    inj_search = len(logs) == len(streams)

    with capsys.disabled():
        report(
            "codec bijections",
            ok_alg1 == ok_erase == ok_search == 1000
            and inj_alg1
            and inj_erase
            and inj_search,
            f"roundtrips {ok_alg1}/{ok_erase}/{ok_search} of 1000 each;"
            f" injectivity m<=4 exhaustive",
        )


def test_game_invariants(capsys):
    halves = set()
    bens8 = builtin_bens(8)
    for t in range(1000):
        ben = bens8[t % 4]
        res = play_erase_game(
            8, random.Random(f"acc:ginv:{t}"), ben, 24, move_budget=120
        )
        halves |= {m.half for m in res.moves}
    erase_ok = all(h in (0, 1) or h >= 4 for h in halves)

    back_ok = True
    run_ok = True
    bens6 = builtin_bens(6)
    for t in range(1000):
        ben = bens6[t % 4]
        res = run_search_simulation(
            6, random.Random(f"acc:sinv:{t}"), ben, 30, ann_move_budget=40
        )
        back_ok &= all(s.half == 0 or s.half >= 5 for s in res.steps)
        run_len = 0
        for s in res.steps:
            run_len = run_len + 1 if s.mover == "ben" else 0
            run_ok &= run_len <= 2

    # every deterministic adversary, all games of <= 8 moves: no small square
    tables_ok = True
    stack = [()]
    while stack:
        w = stack.pop()
        if len(w) == 8:
            continue
        options = ann_nonrep_allowed(w, 6) if len(w) % 2 == 0 else range(6)
        for s in options:
            w2 = w + (s,)
            rep = suffix_square(w2, 2)
            if rep is not None:
                tables_ok &= rep.half >= 5
            else:
                stack.append(w2)
    with capsys.disabled():
        report(
            "game invariants",
            erase_ok and back_ok and run_ok and tables_ok,
            f"erase halves seen {sorted(halves)}; search backtracks >= 5;"
            f" adversary tables exhausted",
        )


def test_counting(capsys):
    counts = count_walks(ALG1, 15)
    catalan_ok = all(
        counts[m] == math.comb(2 * m, m) // (m + 1) for m in range(15)
    )
    brute_ok = True
    for system in (ERASE, SEARCH):
        dp = count_walks(system, 12)
        brute_ok &= all(
            dp[m - 1] == brute_force_count(system, m) for m in range(1, 13)
        )
    series_ok = True
    for system in (ALG1, ERASE, SEARCH):
        ser = series_from_equation(system, 200)
        series_ok &= ser[1:] == count_walks(system, 200)
        series_ok &= check_defining_polynomial(
            defining_polynomial(system), ser, 200
        )
    with capsys.disabled():
        report(
            "counting",
            catalan_ok and brute_ok and series_ok,
            "Catalan m<=14 exact; brute force m<=12; series to order 200",
        )


def test_analytic_constants(capsys):
    t0 = time.perf_counter()
    d_erase = system_discriminant(ERASE)
    d_search = system_discriminant(SEARCH)
    match = scalar_multiple(d_erase.normalized, ERASE_DISC) and scalar_multiple(
        d_search.normalized, SEARCH_DISC
    )
    iso_e = isolate_unit_roots(list(d_erase.normalized))
    iso_s = isolate_unit_roots(list(d_search.normalized))
    unique = len(iso_e.roots) == 1 and len(iso_s.roots) == 1
    r_e, r_s = iso_e.roots[0], iso_s.roots[0]
    digits = abs(r_e.value - 0.457) < 1e-3 and abs(r_s.value - 0.2537) < 1e-3
    brackets = (r_e.high - r_e.low) <= 1e-10 and (r_s.high - r_s.low) <= 1e-10
    comparisons = r_e.value > 5 ** -0.5 and r_s.value > 0.25
    elapsed = time.perf_counter() - t0
    with capsys.disabled():
        report(
            "analytic constants",
            match and unique and digits and brackets and comparisons and elapsed < 10,
            f"rho_erase={r_e.value:.6f}, rho_search={r_s.value:.6f}, {elapsed:.2f}s",
        )


def test_growth(capsys):
    t0 = time.perf_counter()
    ok = True
    details = []
    for system in (ERASE, SEARCH):
        logT = count_walks_log(system, 2000)
        ratio = math.exp(logT[2000] - logT[1999])
        target = 1.0 / growth_rho(system).value
        ok &= abs(ratio - target) / target < 0.05
        details.append(f"{system.name}: {ratio:.4f} vs {target:.4f}")
    elapsed = time.perf_counter() - t0
    with capsys.disabled():
        report(
            "growth ratios at m=2000",
            ok and elapsed < 30,
            "; ".join(details) + f"; {elapsed:.2f}s",
        )


def test_contradiction_demos(capsys):
    reports = {
        scenario: counting_bound_report(scenario, c, 5, m_max=1500)
        for scenario, c in (("alg1", 4), ("erase", 8), ("search", 6))
    }
    ok = all(r.crossover is not None for r in reports.values())
    with capsys.disabled():
        report(
            "contradiction demos",
            ok,
            ", ".join(f"{k}: M*={r.crossover}" for k, r in reports.items()),
        )
