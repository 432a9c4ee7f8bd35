"""Exact generators for the Bernoulli/tangent/Euler, binomial-power, Motzkin,
Schroeder and central trinomial sequences.

All values are absolute values.  Integer families return ``ExactValue`` with
denominator 1; ``|B_2n|`` is the only rational family.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd


class Family(Enum):
    BERNOULLI_ABS_2N = "bernoulli-abs"
    TANGENT_ABS_ODD = "tangent-abs"
    EULER_ABS_EVEN = "euler-abs"
    S_FAMILY = "sfam"
    MOTZKIN = "motzkin"
    SCHROEDER = "schroder"
    TRINOMIAL = "trinomial"

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def from_token(cls, token: str) -> "Family":
        for fam in cls:
            if fam.value == token:
                return fam
        raise ValueError(f"unknown family {token!r}; expected one of {[f.value for f in cls]}")


# smallest index each family is defined at
FIRST_INDEX = {
    Family.BERNOULLI_ABS_2N: 1,
    Family.TANGENT_ABS_ODD: 1,
    Family.EULER_ABS_EVEN: 0,
    Family.S_FAMILY: 0,
    Family.MOTZKIN: 0,
    Family.SCHROEDER: 0,
    Family.TRINOMIAL: 0,
}


@dataclass(frozen=True)
class SequenceId:
    family: Family
    r: tuple[int, ...] = ()

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        object.__setattr__(self, "r", r)
        if self.family is Family.S_FAMILY:
            validate_exponents(r)
        elif r:
            raise ValueError(f"{self.family.token} takes no exponent vector")

    @classmethod
    def sfam(cls, *r: int) -> "SequenceId":
        return cls(Family.S_FAMILY, tuple(r))

    @property
    def params(self) -> str:
        """Canonical parameter string, e.g. ``"r=2,2"``; empty for fixed families."""
        if self.family is Family.S_FAMILY:
            return "r=" + ",".join(str(x) for x in self.r)
        return ""

    @classmethod
    def parse(cls, family: str, params: str = "") -> "SequenceId":
        fam = Family.from_token(family)
        params = params.strip()
        if fam is Family.S_FAMILY:
            if not params.startswith("r="):
                raise ValueError(f"sfam needs params of the form r=a,b,... (got {params!r})")
            return cls(fam, parse_exponents(params[2:]))
        if params:
            raise ValueError(f"{family} takes no params (got {params!r})")
        return cls(fam)

    @property
    def first_index(self) -> int:
        return FIRST_INDEX[self.family]

    def __str__(self) -> str:
        return f"{self.family.token}({self.params})" if self.params else self.family.token


def validate_exponents(r: tuple[int, ...]) -> None:
    if not r:
        raise ValueError("exponent vector must be non-empty")
    if any(x < 0 for x in r):
        raise ValueError(f"exponents must be nonnegative: {r}")
    if r[0] <= 0:
        raise ValueError(f"leading exponent r_0 must be positive: {r}")


def parse_exponents(text: str) -> tuple[int, ...]:
    try:
        r = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"exponent vector must be comma-separated integers: {text!r}") from None
    validate_exponents(r)
    return r


@dataclass(frozen=True)
class ExactValue:
    """Exact integer or rational, kept in lowest terms with a positive denominator."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise ZeroDivisionError("zero denominator")
        p, q = self.numerator, self.denominator
        if q < 0:
            p, q = -p, -q
        g = gcd(p, q)
        if g > 1:
            p, q = p // g, q // g
        object.__setattr__(self, "numerator", p)
        object.__setattr__(self, "denominator", q)

    @classmethod
    def of(cls, x) -> "ExactValue":
        if isinstance(x, ExactValue):
            return x
        if isinstance(x, int):
            return cls(x)
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @property
    def kind(self) -> str:
        return "integer" if self.denominator == 1 else "rational"

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __int__(self) -> int:
        if self.denominator != 1:
            raise ValueError(f"{self} is not an integer")
        return self.numerator

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class SequenceWindow:
    id: SequenceId
    start: int
    values: tuple[ExactValue, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(ExactValue.of(v) for v in self.values))

    @property
    def stop(self) -> int:
        """One past the last index held."""
        return self.start + len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> ExactValue:
        if not self.start <= n < self.stop:
            raise IndexError(f"index {n} outside window [{self.start}, {self.stop})")
        return self.values[n - self.start]

    def indices(self) -> range:
        return range(self.start, self.stop)


# --- zigzag (tangent / secant) numbers via the Seidel boustrophedon --------

_zigzag = [1]
_zigzag_row = [1]
_zigzag_lock = threading.Lock()


def zigzag(k: int) -> int:
    """Euler zigzag number: secant numbers at even k, tangent numbers at odd k."""
    if k < 0:
        raise ValueError("zigzag index must be nonnegative")
    global _zigzag_row
    with _zigzag_lock:
        row = _zigzag_row
        while len(_zigzag) <= k:
            new = [0]
            for x in reversed(row):
                new.append(new[-1] + x)
            row = new
            _zigzag.append(row[-1])
        _zigzag_row = row
        return _zigzag[k]


def tangent_abs(n: int) -> ExactValue:
    """``|T_{2n-1}|`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("tangent_abs needs n >= 1")
    return ExactValue(zigzag(2 * n - 1))


def euler_abs(n: int) -> ExactValue:
    """``|E_{2n}|`` for ``n >= 0``."""
    if n < 0:
        raise ValueError("euler_abs needs n >= 0")
    return ExactValue(zigzag(2 * n))


def bernoulli_abs(n: int) -> ExactValue:
    """``|B_{2n}| = 2n |T_{2n-1}| / (4^n (4^n - 1))`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("bernoulli_abs needs n >= 1")
    four_n = 1 << (2 * n)
    return ExactValue(2 * n * zigzag(2 * n - 1), four_n * (four_n - 1))


# --- binomial sums ----------------------------------------------------------

@lru_cache(maxsize=4096)
def _s_family(r: tuple[int, ...], n: int) -> int:
    total = 0
    for k in range(n + 1):
        term = 1
        for j, e in enumerate(r):
            if e:
                term *= comb(n + k * j, k) ** e
        total += term
    return total


def s_family(r, n: int) -> ExactValue:
    """``sum_k prod_j C(n + k j, k)^{r_j}``."""
    r = tuple(int(x) for x in r)
    validate_exponents(r)
    if n < 0:
        raise ValueError("s_family needs n >= 0")
    return ExactValue(_s_family(r, n))


@lru_cache(maxsize=4096)
def _motzkin(n: int) -> int:
    # C(2k, k) // (k + 1) is the Catalan number, so every summand is integral
    return sum(comb(n, 2 * k) * (comb(2 * k, k) // (k + 1)) for k in range(n // 2 + 1))


def motzkin(n: int) -> ExactValue:
    if n < 0:
        raise ValueError("motzkin needs n >= 0")
    return ExactValue(_motzkin(n))


@lru_cache(maxsize=4096)
def _schroder(n: int) -> int:
    total = sum(Fraction(comb(n, k) * comb(n + k, k), k + 1) for k in range(n + 1))
    if total.denominator != 1:
        raise ArithmeticError(f"Schroeder sum at n={n} is not integral: {total}")
    return total.numerator


def schroder(n: int) -> ExactValue:
    """Large Schroeder number (1, 2, 6, 22, 90, ...)."""
    if n < 0:
        raise ValueError("schroder needs n >= 0")
    return ExactValue(_schroder(n))


@lru_cache(maxsize=4096)
def _trinomial(n: int) -> int:
    return sum(comb(n, k) * comb(n - k, k) for k in range(n // 2 + 1))


def trinomial(n: int) -> ExactValue:
    """Central trinomial coefficient, the coefficient of x^n in (x^2 + x + 1)^n."""
    if n < 0:
        raise ValueError("trinomial needs n >= 0")
    return ExactValue(_trinomial(n))


def value(seq: SequenceId, n: int) -> ExactValue:
    fam = seq.family
    if fam is Family.BERNOULLI_ABS_2N:
        return bernoulli_abs(n)
    if fam is Family.TANGENT_ABS_ODD:
        return tangent_abs(n)
    if fam is Family.EULER_ABS_EVEN:
        return euler_abs(n)
    if fam is Family.S_FAMILY:
        return s_family(seq.r, n)
    if fam is Family.MOTZKIN:
        return motzkin(n)
    if fam is Family.SCHROEDER:
        return schroder(n)
    if fam is Family.TRINOMIAL:
        return trinomial(n)
    raise ValueError(f"unhandled family {fam}")


def window(seq: SequenceId, start: int, count: int) -> SequenceWindow:
    if count < 1:
        raise ValueError("window count must be positive")
    if start < seq.first_index:
        raise ValueError(f"{seq} starts at index {seq.first_index}, not {start}")
    return SequenceWindow(seq, start, tuple(value(seq, n) for n in range(start, start + count)))
