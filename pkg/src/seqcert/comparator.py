"""Certified decisions for root- and ratio-monotonicity of positive sequences.

For a sequence ``a_n`` the root claim compares ``a_{n+1}^{1/(n+1)}`` with
``a_n^{1/n}``; after clearing the fractional exponents this is the sign of

    n * log a_{n+1} - (n + 1) * log a_n.

The ratio claim compares consecutive ratios ``a_{n+1}^{1/(n+1)} / a_n^{1/n}``
and reduces to the sign of

    2n(n+2) log a_{n+1} - (n+1)(n+2) log a_n - n(n+1) log a_{n+2}.

Each sign is first attempted with outward-rounded intervals at increasing
precision.  If zero is never excluded the exact big-integer comparison of the
two powered sides settles it, so no verdict is ever left undecided.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Sequence

import gmpy2

from .interval import IntervalValue
from .sequences import ExactValue, SequenceId, value

DEFAULT_SCHEDULE = (128, 256, 512)


class Claim(Enum):
    ROOT_INCREASING = "root-increasing"
    ROOT_DECREASING = "root-decreasing"
    RATIO_INCREASING = "ratio-increasing"
    RATIO_DECREASING = "ratio-decreasing"

    @classmethod
    def from_token(cls, token: str) -> "Claim":
        for c in cls:
            if c.value == token:
                return c
        raise ValueError(f"unknown claim {token!r}; expected one of {[c.value for c in cls]}")

    @classmethod
    def make(cls, kind: str, direction: str) -> "Claim":
        return cls.from_token(f"{kind}-{direction}")

    @property
    def is_root(self) -> bool:
        return self in (Claim.ROOT_INCREASING, Claim.ROOT_DECREASING)

    @property
    def wants_positive(self) -> bool:
        # sign of the log-quantity that makes the claim hold
        return self in (Claim.ROOT_INCREASING, Claim.RATIO_DECREASING)


class Method(Enum):
    INTERVAL_CERTIFIED = "interval-certified"
    EXACT_BIGINT = "exact-bigint"


@dataclass(frozen=True)
class Verdict:
    index: int
    claim: Claim
    holds: bool
    method: Method
    precision_bits: int | None = None


@dataclass
class Certificate:
    id: SequenceId
    claim: Claim
    n_lo: int
    n_hi: int
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(v.holds for v in self.verdicts)

    @property
    def first_failure(self) -> int | None:
        for v in self.verdicts:
            if not v.holds:
                return v.index
        return None

    @property
    def failures(self) -> list[int]:
        return [v.index for v in self.verdicts if not v.holds]

    @property
    def observed_start(self) -> int | None:
        """Smallest n0 in range such that the claim holds for every n0 <= n <= n_hi."""
        if not self.verdicts:
            return None
        start = self.n_lo
        for v in self.verdicts:
            if not v.holds:
                start = v.index + 1
        return start if start <= self.n_hi else None

    def method_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.verdicts:
            out[v.method.value] = out.get(v.method.value, 0) + 1
        return out


class NonPositiveTermError(ValueError):
    def __init__(self, seq: SequenceId, index: int):
        super().__init__(f"{seq}: term at index {index} is not strictly positive")
        self.index = index


# --- certified logarithms ----------------------------------------------------

def log_interval(x, precision_bits: int = 128) -> IntervalValue:
    """Enclosure of ``ln x`` for an exact positive integer or rational."""
    x = ExactValue.of(x)
    if x.numerator <= 0:
        raise ValueError(f"log of nonpositive value {x}")
    num = IntervalValue.exact(x.numerator, precision_bits).log()
    if x.denominator == 1:
        return num
    return num - IntervalValue.exact(x.denominator, precision_bits).log()


# --- the two sign quantities ----------------------------------------------------

def _weights(claim: Claim, n: int) -> tuple[tuple[int, int], ...]:
    """(offset, weight) pairs so that the decisive quantity is sum weight * log a_{n+offset}."""
    if claim.is_root:
        return ((1, n), (0, -(n + 1)))
    return ((1, 2 * n * (n + 2)), (0, -(n + 1) * (n + 2)), (2, -n * (n + 1)))


def _exact_sign(terms: Sequence[tuple[ExactValue, int]]) -> int:
    """Sign of sum w * log a, computed by comparing the two powered products exactly."""
    left = gmpy2.mpz(1)
    right = gmpy2.mpz(1)
    for a, w in terms:
        p, q = gmpy2.mpz(a.numerator), gmpy2.mpz(a.denominator)
        if w > 0:
            left *= p**w
            if q != 1:
                right *= q**w
        elif w < 0:
            right *= p ** (-w)
            if q != 1:
                left *= q ** (-w)
    if left > right:
        return 1
    if left < right:
        return -1
    return 0


def exact_verdict(seq: SequenceId, claim: Claim, n: int, values: dict[int, ExactValue] | None = None) -> Verdict:
    """Decide a single index by exact big-integer comparison only."""
    get = (lambda m: values[m]) if values is not None else (lambda m: value(seq, m))
    terms = [(get(n + off), w) for off, w in _weights(claim, n)]
    s = _exact_sign(terms)
    holds = s > 0 if claim.wants_positive else s < 0
    return Verdict(n, claim, holds, Method.EXACT_BIGINT)


def _check(seq: SequenceId, claim: Claim, n_lo: int, n_hi: int, schedule: Sequence[int]) -> Certificate:
    if n_lo < 1:
        raise ValueError("monotonicity checks start at n >= 1")
    if n_lo < seq.first_index:
        raise ValueError(f"{seq} is defined from index {seq.first_index}")
    cert = Certificate(seq, claim, n_lo, n_hi)
    if n_hi < n_lo:
        return cert

    span = 1 if claim.is_root else 2
    values: dict[int, ExactValue] = {}
    for m in range(n_lo, n_hi + span + 1):
        v = value(seq, m)
        if v.numerator <= 0:
            raise NonPositiveTermError(seq, m)
        values[m] = v

    logs: dict[tuple[int, int], IntervalValue] = {}

    def log_at(m: int, prec: int) -> IntervalValue:
        key = (m, prec)
        if key not in logs:
            logs[key] = log_interval(values[m], prec)
        return logs[key]

    for n in range(n_lo, n_hi + 1):
        weights = _weights(claim, n)
        verdict = None
        for prec in schedule:
            q = IntervalValue.exact(0, prec)
            for off, w in weights:
                q = q + log_at(n + off, prec) * w
            s = q.sign()
            if s in (1, -1):
                holds = s > 0 if claim.wants_positive else s < 0
                verdict = Verdict(n, claim, holds, Method.INTERVAL_CERTIFIED, prec)
                break
        if verdict is None:
            verdict = exact_verdict(seq, claim, n, values)
        cert.verdicts.append(verdict)
    return cert


def _claim(kind: str, direction) -> Claim:
    if isinstance(direction, Claim):
        return direction
    if direction not in ("increasing", "decreasing"):
        raise ValueError(f"direction must be 'increasing' or 'decreasing', not {direction!r}")
    return Claim.make(kind, direction)


def check_root_monotone(seq: SequenceId, direction, n_range: tuple[int, int], *,
                        schedule: Sequence[int] = DEFAULT_SCHEDULE) -> Certificate:
    """Certify strict monotonicity of ``a_n^{1/n}`` for every n in ``n_range`` (inclusive).

    The verdict at n compares ``a_{n+1}^{1/(n+1)}`` against ``a_n^{1/n}``; equality
    counts as a failure.
    """
    return _check(seq, _claim("root", direction), n_range[0], n_range[1], schedule)


def check_ratio_monotone(seq: SequenceId, direction, n_range: tuple[int, int], *,
                         schedule: Sequence[int] = DEFAULT_SCHEDULE) -> Certificate:
    """Certify strict monotonicity of ``r_n = a_{n+1}^{1/(n+1)} / a_n^{1/n}``.

    The verdict at n compares ``r_n`` with ``r_{n+1}`` and therefore reads
    ``a_n, a_{n+1}, a_{n+2}``.
    """
    return _check(seq, _claim("ratio", direction), n_range[0], n_range[1], schedule)


def check(seq: SequenceId, claim: Claim, n_range: tuple[int, int], *,
          schedule: Sequence[int] = DEFAULT_SCHEDULE) -> Certificate:
    return _check(seq, claim, n_range[0], n_range[1], schedule)


def iterated_difference(u: Sequence, k: int) -> list:
    """k-th forward difference: ``out[i] = sum_j (-1)^j C(k, j) u[i + k - j]``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if len(u) <= k:
        raise ValueError(f"need more than {k} values, got {len(u)}")
    coeffs = [(-1) ** j * comb(k, j) for j in range(k + 1)]
    out = []
    for i in range(len(u) - k):
        acc = u[i + k] * coeffs[0]
        for j in range(1, k + 1):
            acc = acc + u[i + k - j] * coeffs[j]
        out.append(acc)
    return out
