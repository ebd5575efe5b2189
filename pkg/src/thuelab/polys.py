"""Exact integer-polynomial helpers.

Univariate polynomials are lists of integer coefficients, degree-ascending,
with trailing zeros trimmed.  Bivariate polynomials P(z, t) are lists indexed
by t-degree whose entries are univariate polynomials in z.  Everything here
runs in exact arithmetic; root brackets are certified by exact sign
evaluations at rational points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Poly = list[int]
TPoly = list[Poly]


def trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pneg(a: Sequence[int]) -> Poly:
    return [-c for c in a]


def psub(a: Sequence[int], b: Sequence[int]) -> Poly:
    return padd(a, pneg(b))


def pmul(a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return trim(out)


def pscale(a: Sequence[int], k: int) -> Poly:
    return trim([c * k for c in a])


def pdivexact(a: Sequence[int], b: Sequence[int]) -> Poly:
    """Exact division in Z[z]; raises if b does not divide a."""
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return []
    q = [0] * (len(a) - len(b) + 1)
    rem = list(a)
    for k in range(len(q) - 1, -1, -1):
        lead = rem[k + len(b) - 1]
        if lead % b[-1]:
            raise ValueError("inexact polynomial division")
        q[k] = lead // b[-1]
        if q[k]:
            for j, bj in enumerate(b):
                rem[k + j] -= q[k] * bj
    if any(rem):
        raise ValueError("inexact polynomial division")
    return trim(q)


def content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, c)
    return g


def primitive_normal(p: Sequence[int]) -> Poly:
    """Strip z^k factors and integer content; make the leading coefficient
    positive.  The roots in (0, 1] are untouched."""
    p = trim(p)
    if not p:
        return []
    k = 0
    while p[k] == 0:
        k += 1
    p = p[k:]
    g = content(p)
    p = [c // g for c in p]
    if p[-1] < 0:
        p = pneg(p)
    return p


def derivative(p: Sequence[int]) -> Poly:
    return trim([i * c for i, c in enumerate(p)][1:])


def peval_float(p: Sequence[int], x: float) -> float:
    acc = 0.0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign_at(p: Sequence[int], num: int, den: int) -> int:
    """Exact sign of p(num/den): sign of sum c_i num^i den^(deg-i)."""
    deg = len(p) - 1
    acc = 0
    pows = [1]
    for _ in range(deg):
        pows.append(pows[-1] * num)
    for i, c in enumerate(p):
        acc += c * pows[i] * den ** (deg - i)
    return (acc > 0) - (acc < 0)


def t_degree(tp: TPoly) -> int:
    d = -1
    for j, cz in enumerate(tp):
        if trim(cz):
            d = j
    return d


def t_derivative(tp: TPoly) -> TPoly:
    return [pscale(cz, j) for j, cz in enumerate(tp)][1:]


def sylvester_matrix(p: TPoly, q: TPoly) -> list[list[Poly]]:
    """Sylvester matrix of two polynomials in t with Z[z] coefficients."""
    m = t_degree(p)
    n = t_degree(q)
    if m < 0 or n < 0:
        raise ValueError("resultant of a zero polynomial")
    size = m + n
    pc = [trim(p[j]) if j < len(p) else [] for j in range(m + 1)]
    qc = [trim(q[j]) if j < len(q) else [] for j in range(n + 1)]
    mat: list[list[Poly]] = [[[] for _ in range(size)] for _ in range(size)]
    for r in range(n):
        for j in range(m + 1):
            mat[r][r + j] = list(pc[m - j])
    for r in range(m):
        for j in range(n + 1):
            mat[n + r][r + j] = list(qc[n - j])
    return mat


def _det_bareiss(mat: list[list[Poly]]) -> Poly:
    """Fraction-free determinant over Z[z]."""
    n = len(mat)
    if n == 0:
        return [1]
    sign = 1
    prev: Poly = [1]
    for k in range(n - 1):
        if not trim(mat[k][k]):
            for r in range(k + 1, n):
                if trim(mat[r][k]):
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = psub(pmul(mat[i][j], mat[k][k]), pmul(mat[i][k], mat[k][j]))
                mat[i][j] = pdivexact(num, prev)
            mat[i][k] = []
        prev = mat[k][k]
    return pscale(mat[n - 1][n - 1], sign)


def resultant_wrt_t(p: TPoly, q: TPoly) -> Poly:
    return _det_bareiss(sylvester_matrix(p, q))


@dataclass(frozen=True)
class Discriminant:
    raw: tuple[int, ...]
    normalized: tuple[int, ...]


def discriminant_wrt_t(p: TPoly) -> Discriminant:
    """Resultant of P and its t-derivative, raw plus normalized (z^k factor
    and integer content stripped, positive leading coefficient)."""
    if t_degree(p) < 1:
        raise ValueError("polynomial is constant in t")
    raw = resultant_wrt_t(p, t_derivative(p))
    return Discriminant(tuple(raw), tuple(primitive_normal(raw)))


@dataclass(frozen=True)
class IsolatedRoot:
    value: float
    low: float
    high: float


@dataclass(frozen=True)
class RootIsolation:
    roots: tuple[IsolatedRoot, ...]
    suspects: tuple[float, ...]


def isolate_unit_roots(p: Sequence[int], width: float = 1e-10) -> RootIsolation:
    """Certified real roots of p in (0, 1].

    Sign changes are located on a refining dyadic grid (exact sign at every
    grid point), then each bracket is bisected, still with exact signs, down
    to the requested width.  Grid cells where |p| dips toward zero without a
    sign change are reported as multiplicity suspects.
    """
    p = trim(p)
    if not p:
        raise ValueError("zero polynomial has no isolated roots")
    # A root at 0 is outside (0, 1]; strip z^k so the left endpoint has a sign.
    while p[0] == 0:
        p = p[1:]
    if len(p) == 1:
        return RootIsolation((), ())

    grid_n = 256
    brackets: list[tuple[Fraction, Fraction]] = []
    exact: list[Fraction] = []
    prev_count = -1
    while grid_n <= 4096:
        brackets = []
        exact = []
        signs = [_sign_at(p, k, grid_n) for k in range(grid_n + 1)]
        for k in range(grid_n + 1):
            if signs[k] == 0 and k > 0:
                exact.append(Fraction(k, grid_n))
        for k in range(grid_n):
            if signs[k] * signs[k + 1] < 0:
                brackets.append((Fraction(k, grid_n), Fraction(k + 1, grid_n)))
        count = len(brackets) + len(exact)
        if count == prev_count:
            break
        prev_count = count
        grid_n *= 2

    roots = []
    for x in exact:
        roots.append(IsolatedRoot(float(x), float(x), float(x)))
    for lo, hi in brackets:
        s_lo = _sign_at(p, lo.numerator, lo.denominator)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s_mid = _sign_at(p, mid.numerator, mid.denominator)
            if s_mid == 0:
                lo = hi = mid
                break
            if s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        roots.append(IsolatedRoot(float((lo + hi) / 2), float(lo), float(hi)))
    roots.sort(key=lambda r: r.value)

    suspects = []
    vals = [peval_float(p, k / grid_n) for k in range(grid_n + 1)]
    scale = max(abs(c) for c in p)
    # an even-order root's grid minimum sits O(scale / grid_n^2) above zero
    tol = scale * (4.0 / grid_n) ** 2
    for k in range(1, grid_n):
        v = vals[k]
        if abs(v) < tol and abs(v) <= abs(vals[k - 1]) and abs(v) <= abs(vals[k + 1]):
            x = k / grid_n
            if all(abs(x - r.value) > 1.0 / grid_n for r in roots):
                suspects.append(x)
    return RootIsolation(tuple(roots), tuple(suspects))
