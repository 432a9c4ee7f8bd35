"""Slow, independent reference computations used to cross-check the generators.

Nothing here shares code with :mod:`seqcert.sequences`: power series are
divided by hand, lattice paths are counted by dynamic programming, and
binomial coefficients come from Pascal's triangle.
"""
from __future__ import annotations

from fractions import Fraction


def bernoulli_signed(upto: int) -> list[Fraction]:
    """B_0..B_upto from sum_{k<=m} C(m+1, k) B_k = 0."""
    binom = pascal_rows(upto + 2)
    b = [Fraction(1)]
    for m in range(1, upto + 1):
        s = sum(binom[m + 1][k] * b[k] for k in range(m))
        b.append(-s / (m + 1))
    return b


def _series_divide(num: list[Fraction], den: list[Fraction], order: int) -> list[Fraction]:
    out: list[Fraction] = []
    for i in range(order + 1):
        acc = num[i] if i < len(num) else Fraction(0)
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out.append(acc / den[0])
    return out


def _sin_cos(order: int) -> tuple[list[Fraction], list[Fraction]]:
    sin = [Fraction(0)] * (order + 1)
    cos = [Fraction(0)] * (order + 1)
    fact = Fraction(1)
    for i in range(order + 1):
        if i:
            fact /= i
        if i % 2:
            sin[i] = fact * (-1) ** (i // 2)
        else:
            cos[i] = fact * (-1) ** (i // 2)
    return sin, cos


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def tangent_from_series(n: int) -> int:
    """|T_{2n-1}| read off the Taylor series of tan z = sin z / cos z."""
    order = 2 * n - 1
    sin, cos = _sin_cos(order)
    coeff = _series_divide(sin, cos, order)[order]
    value = abs(coeff) * _factorial(order)
    assert value.denominator == 1
    return value.numerator


def secant_from_series(n: int) -> int:
    """|E_{2n}| from the Taylor series of 1 / cos z."""
    order = 2 * n
    _, cos = _sin_cos(order)
    coeff = _series_divide([Fraction(1)], cos, order)[order]
    value = abs(coeff) * _factorial(order)
    assert value.denominator == 1
    return value.numerator


def secant_signed(upto: int) -> list[int]:
    """E_0, E_2, ..., E_{2 upto} from sum_k C(2m, 2k) E_{2k} = 0."""
    binom = pascal_rows(2 * upto + 1)
    e = [1]
    for m in range(1, upto + 1):
        e.append(-sum(binom[2 * m][2 * k] * e[k] for k in range(m)))
    return e


def pascal_rows(n: int) -> list[list[int]]:
    rows = [[1]]
    for i in range(1, n + 1):
        prev = rows[-1]
        rows.append([1] + [prev[k - 1] + prev[k] for k in range(1, i)] + [1])
    return rows


def s_family_pascal(r: tuple[int, ...], n: int, rows: list[list[int]] | None = None) -> int:
    m = len(r) - 1
    if rows is None:
        rows = pascal_rows(n + n * m)
    total = 0
    for k in range(n + 1):
        term = 1
        for j, e in enumerate(r):
            term *= rows[n + k * j][k] ** e
        total += term
    return total


def franel_recurrence(upto: int) -> list[int]:
    """(n+1)^2 f_{n+1} = (7n^2 + 7n + 2) f_n + 8 n^2 f_{n-1}."""
    f = [1, 2]
    for n in range(1, upto):
        nxt = (7 * n * n + 7 * n + 2) * f[n] + 8 * n * n * f[n - 1]
        q, rem = divmod(nxt, (n + 1) ** 2)
        assert rem == 0
        f.append(q)
    return f[: upto + 1]


def delannoy_recurrence(upto: int) -> list[int]:
    """n D_n = 3 (2n - 1) D_{n-1} - (n - 1) D_{n-2}."""
    d = [1, 3]
    for n in range(2, upto + 1):
        q, rem = divmod(3 * (2 * n - 1) * d[n - 1] - (n - 1) * d[n - 2], n)
        assert rem == 0
        d.append(q)
    return d[: upto + 1]


def apery_recurrence(upto: int) -> list[int]:
    """n^3 A_n = (34n^3 - 51n^2 + 27n - 5) A_{n-1} - (n-1)^3 A_{n-2}."""
    a = [1, 5]
    for n in range(2, upto + 1):
        q, rem = divmod(
            (34 * n**3 - 51 * n**2 + 27 * n - 5) * a[n - 1] - (n - 1) ** 3 * a[n - 2], n**3
        )
        assert rem == 0
        a.append(q)
    return a[: upto + 1]


def motzkin_paths(n: int) -> int:
    """Paths (0,0) -> (n,0), steps (1,0), (1,1), (1,-1), never below the axis."""
    heights = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for h, c in heights.items():
            for dh in (-1, 0, 1):
                if h + dh >= 0:
                    nxt[h + dh] = nxt.get(h + dh, 0) + c
        heights = nxt
    return heights.get(0, 0)


def schroder_paths(n: int) -> int:
    """Paths (0,0) -> (n,n), steps (1,0), (0,1), (1,1), never above y = x."""
    grid = [[0] * (n + 1) for _ in range(n + 1)]
    grid[0][0] = 1
    for x in range(n + 1):
        for y in range(min(x, n) + 1):
            if x == 0 and y == 0:
                continue
            c = 0
            if x > 0 and y <= x - 1:
                c += grid[x - 1][y]
            if y > 0:
                c += grid[x][y - 1]
            if x > 0 and y > 0:
                c += grid[x - 1][y - 1]
            grid[x][y] = c
    return grid[n][n]


def trinomial_expansion(n: int) -> int:
    """Coefficient of x^n in (x^2 + x + 1)^n by repeated polynomial multiplication."""
    poly = [1]
    for _ in range(n):
        nxt = [0] * (len(poly) + 2)
        for i, c in enumerate(poly):
            nxt[i] += c
            nxt[i + 1] += c
            nxt[i + 2] += c
        poly = nxt
    return poly[n]
