"""Weighted lattice-walk counting for the three difference-sequence families,
their generating functions, and the growth/bound reports.

A walk of length m is a step sequence d_1..d_m from the system's step set
whose prefix sums all stay >= 1 and whose total is 1; its weight is the
product of the step weights.  Count tables are exact big integers; a parallel
log-space DP covers long horizons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from thuelab.polys import (
    Discriminant,
    IsolatedRoot,
    TPoly,
    discriminant_wrt_t,
    isolate_unit_roots,
    padd,
    pmul,
    psub,
    trim,
)


@dataclass(frozen=True)
class StepSystem:
    """Finite steps with weights plus an unbounded tail of negative steps:
    every d <= tail_max is allowed with weight tail_weight."""

    name: str
    finite_steps: tuple[tuple[int, int], ...]
    tail_max: int
    tail_weight: int

    def __post_init__(self) -> None:
        steps = dict(self.finite_steps)
        if steps.get(1) != 1:
            raise ValueError("the +1 step must be present with weight 1")
        if self.tail_max > 0:
            raise ValueError("the unbounded tail must consist of non-positive steps")
        for d, w in steps.items():
            if w < 1:
                raise ValueError(f"step {d} has non-positive weight")
            if d <= self.tail_max:
                raise ValueError(f"finite step {d} overlaps the tail")


ALG1 = StepSystem("alg1", ((1, 1),), 0, 1)
ERASE = StepSystem("erase", ((1, 1),), -3, 1)
SEARCH = StepSystem("search", ((1, 1), (-1, 1)), -2, 4)

SYSTEMS = {s.name: s for s in (ALG1, ERASE, SEARCH)}


def defining_polynomial(system: StepSystem) -> TPoly:
    """P(z, t) with P(z, t(z)) = 0 for the system's count series.

    From the last-step decomposition t = z * (1 + sum over the allowed
    non-positive steps d of weight(d) * t^(1-d)), with the unbounded tail
    summed in closed form and the 1/(1-t) denominator cleared:
    P = t^2 - t + z * E(t)."""
    inner = [1]
    for d, w in system.finite_steps:
        if d <= 0:
            inner = padd(inner, [0] * (1 - d) + [w])
    e = psub(inner, pmul(inner, [0, 1]))  # (1 - t) * inner
    e = padd(e, [0] * (1 - system.tail_max) + [system.tail_weight])
    tp: TPoly = [[] for _ in range(max(3, len(e)))]
    tp[1] = [-1]
    tp[2] = [1]
    for j, coeff in enumerate(e):
        if coeff:
            cz = list(tp[j]) + [0] * (2 - len(tp[j]))
            cz[1] += coeff
            tp[j] = trim(cz)
    return tp


def iter_walk_counts(system: StepSystem) -> Iterator[int]:
    """Yield the exact weighted counts T_1, T_2, ... lazily."""
    f = [0, 1]  # f[h] = weighted walks of the current length ending at height h
    yield f[1]
    while True:
        size = len(f) + 1
        suffix = [0] * (size + 1)
        for h in range(size - 1, 0, -1):
            suffix[h] = suffix[h + 1] + (f[h] if h < len(f) else 0)
        g = [0] * size
        for h2 in range(1, size):
            v = 0
            for d, w in system.finite_steps:
                src = h2 - d
                if 1 <= src < len(f):
                    v += w * f[src]
            lo = h2 - system.tail_max
            if lo <= size:
                v += system.tail_weight * suffix[lo]
            g[h2] = v
        f = g
        yield f[1]


def count_walks(system: StepSystem, m_max: int) -> list[int]:
    """Exact weighted counts T_1..T_m_max."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    it = iter_walk_counts(system)
    return [next(it) for _ in range(m_max)]


def count_walks_log(system: StepSystem, m_max: int) -> np.ndarray:
    """Natural-log counts, 1-based array: out[m] = ln T_m (-inf where T = 0)."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    size = m_max + 3
    neg_inf = -np.inf
    f = np.full(size, neg_inf)
    f[1] = 0.0
    out = np.full(m_max + 1, neg_inf)
    out[1] = 0.0
    log_tail_w = math.log(system.tail_weight)
    with np.errstate(invalid="ignore"):
        for m in range(2, m_max + 1):
            suffix = np.full(size + 1, neg_inf)
            suffix[:size] = np.logaddexp.accumulate(f[::-1])[::-1]
            g = np.full(size, neg_inf)
            for d, w in system.finite_steps:
                dst = np.arange(1, size)
                src = dst - d
                valid = (src >= 1) & (src < size)
                dst, src = dst[valid], src[valid]
                g[dst] = np.logaddexp(g[dst], f[src] + math.log(w))
            dst = np.arange(1, size)
            lo = np.minimum(dst - system.tail_max, size)
            g[dst] = np.logaddexp(g[dst], suffix[lo] + log_tail_w)
            f = g
            out[m] = f[1]
    return out


def _mul_series(a: Sequence[int], b: Sequence[int], order: int) -> list[int]:
    """Truncated product of two nonnegative-coefficient series, via packing
    each series into a single big integer with fixed-width limbs."""
    ma = max(a, default=0)
    mb = max(b, default=0)
    if ma == 0 or mb == 0:
        return [0] * (order + 1)
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 1
    width = (bits + 7) // 8
    pa = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in b), "little")
    raw = (pa * pb).to_bytes((len(a) + len(b)) * width, "little")
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little")
        for i in range(order + 1)
    ]


def series_from_equation(system: StepSystem, order: int) -> list[int]:
    """Coefficients 0..order of the walk generating function, computed as the
    coefficient-wise fixed point of the last-step decomposition (each pass
    settles at least one further coefficient).

    The unbounded tail's geometric sum is carried as a companion fixed point
    g = 1 + t * g, so every operation is a truncated product of
    nonnegative-coefficient series.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    t = [0] * (order + 1)
    g = [0] * (order + 1)
    g[0] = 1
    tail_pow = 1 - system.tail_max
    finite_negs = [(1 - d, w) for d, w in system.finite_steps if d <= 0]
    max_pow = max([tail_pow] + [k for k, _ in finite_negs])
    for p in range(order + 2):
        # pass p settles coefficients up to degree p + 1
        eff = min(p + 1, order)
        powers: dict[int, list[int]] = {1: t[: eff + 1]}
        for k in range(2, max_pow + 1):
            powers[k] = _mul_series(powers[k - 1], powers[1], eff)
        acc = [0] * (eff + 1)
        acc[0] = 1
        for k, w in finite_negs:
            pw = powers[k]
            for i in range(eff + 1):
                acc[i] += w * pw[i]
        tail = _mul_series(powers[tail_pow], g[: eff + 1], eff)
        for i in range(eff + 1):
            acc[i] += system.tail_weight * tail[i]
        t_new = [0] + acc[:eff] + [0] * (order - eff)
        tg = _mul_series(powers[1], g[: eff + 1], eff)
        g_new = [1] + tg[1 : eff + 1] + [0] * (order - eff)
        if t_new == t and g_new == g and eff == order:
            break
        t, g = t_new, g_new
    return t


def check_defining_polynomial(tp: TPoly, series: Sequence[int], order: int) -> bool:
    """True iff P(z, s(z)) vanishes coefficient-wise up to the order."""
    if order >= len(series):
        raise ValueError("order exceeds the series truncation")
    acc = [0] * (order + 1)
    power = [0] * (order + 1)
    power[0] = 1
    for j, cz in enumerate(tp):
        if j > 0:
            power = _mul_series(power, series, order)
        for zi, coeff in enumerate(cz):
            if coeff:
                for k in range(order + 1 - zi):
                    acc[zi + k] += coeff * power[k]
    return all(c == 0 for c in acc)


GROWTH_THRESHOLDS = {"erase": 5 ** -0.5, "search": 0.25}


def system_discriminant(system: StepSystem) -> Discriminant:
    return discriminant_wrt_t(defining_polynomial(system))


def growth_rho(system: StepSystem) -> IsolatedRoot:
    """The unique positive root in (0, 1] of the system's discriminant."""
    iso = isolate_unit_roots(list(system_discriminant(system).normalized))
    if len(iso.roots) != 1:
        raise ValueError(f"expected a single root in (0, 1], found {len(iso.roots)}")
    return iso.roots[0]


@dataclass(frozen=True)
class GrowthReport:
    system: str
    rho: float
    bracket: tuple[float, float]
    ratios: tuple[tuple[int, float], ...]
    reciprocal_rho: float
    threshold: Optional[float]
    threshold_holds: Optional[bool]


def growth_report(system: StepSystem, m_max: int) -> GrowthReport:
    """Count-ratio samples against the reciprocal of the convergence radius."""
    if m_max < 100:
        raise ValueError("m_max must be >= 100")
    logT = count_walks_log(system, m_max)
    samples = sorted({m_max // 4, m_max // 2, (3 * m_max) // 4, m_max})
    ratios = tuple(
        (m, float(math.exp(logT[m] - logT[m - 1])))
        for m in samples
        if m >= 2 and np.isfinite(logT[m]) and np.isfinite(logT[m - 1])
    )
    root = growth_rho(system)
    threshold = GROWTH_THRESHOLDS.get(system.name)
    return GrowthReport(
        system=system.name,
        rho=root.value,
        bracket=(root.low, root.high),
        ratios=ratios,
        reciprocal_rho=1.0 / root.value,
        threshold=threshold,
        threshold_holds=None if threshold is None else root.value > threshold,
    )


@dataclass(frozen=True)
class BoundReport:
    scenario: str
    c: int
    n: int
    m_max: int
    crossover: Optional[int]
    lhs_log2: float
    rhs_log2: float


def counting_bound_report(
    scenario: str, c: int, n: int, m_max: int = 2000
) -> BoundReport:
    """First move count M at which the choice-count lower bound exceeds the
    log-count upper bound, demonstrating the counting contradiction.

    In bits: alg1 pits C^M against n * T_M * C^n; erase pits (C-3)^M against
    2M * n * T_{2M+3} * C^n; search pits (C-2)^M against n * T_{M+1} * C^n.
    """
    if scenario not in SYSTEMS:
        raise ValueError(f"unknown scenario {scenario!r}")
    if n < 1 or m_max < 1:
        raise ValueError("n and m_max must be >= 1")
    ln2 = math.log(2)
    crossover = None
    lhs_val = rhs_val = float("nan")
    if scenario == "alg1":
        if c < 2:
            raise ValueError("alg1 scenario needs list size >= 2")
        lhs_rate = math.log2(c)
        counts = iter_walk_counts(ALG1)
        for m in range(1, m_max + 1):
            t_m = next(counts)
            lhs_val = m * lhs_rate
            rhs_val = math.log2(n) + math.log2(t_m) + n * math.log2(c)
            if lhs_val > rhs_val:
                crossover = m
                break
    else:
        if scenario == "erase":
            if c < 4:
                raise ValueError("erase scenario needs alphabet size >= 4")
            lhs_rate = math.log2(c - 3)
            logT = count_walks_log(ERASE, 2 * m_max + 3)
            idx = lambda m: 2 * m + 3
            extra = lambda m: math.log2(2 * m)
        else:
            if c < 3:
                raise ValueError("search scenario needs alphabet size >= 3")
            lhs_rate = math.log2(c - 2)
            logT = count_walks_log(SEARCH, m_max + 1)
            idx = lambda m: m + 1
            extra = lambda m: 0.0
        for m in range(1, m_max + 1):
            lhs_val = m * lhs_rate
            rhs_val = extra(m) + math.log2(n) + logT[idx(m)] / ln2 + n * math.log2(c)
            if math.isfinite(rhs_val) and lhs_val > rhs_val:
                crossover = m
                break
    return BoundReport(scenario, c, n, m_max, crossover, lhs_val, rhs_val)
