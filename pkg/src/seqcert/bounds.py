"""Certified re-checks of the explicit inequalities behind the monotonicity
proofs for |B_2n|, |T_2n-1| and |E_2n|.

Every check evaluates a quantity as an interval and only reports ``holds`` when
the whole interval satisfies the claim.  Undecided intervals are re-evaluated
at 128, 256 and then 512 bits; a claim still undecided after that raises
:class:`UndecidedError`.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .comparator import log_interval
from .interval import IntervalValue, interval_min
from .sequences import bernoulli_abs, euler_abs, tangent_abs

SCHEDULE = (128, 256, 512)
KINDS = ("bernoulli", "tangent", "euler")
_SERIES_CAP = 4000


class UndecidedError(ArithmeticError):
    def __init__(self, name: str, index, bits: int):
        super().__init__(f"{name} at n={index} undecided at {bits} bits")
        self.name = name
        self.index = index


class BoundClaim(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NONNEGATIVE = "nonnegative"
    IN_BRACKET = "in-bracket"


@dataclass(frozen=True)
class BoundCheckResult:
    name: str
    index: object
    value: IntervalValue
    claim: BoundClaim
    holds: bool
    bracket: tuple[Fraction, Fraction] | None = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def precision_bits(self) -> int:
        return self.value.precision_bits


def _decide(value: IntervalValue, claim: BoundClaim, bracket=None, nonzero=False) -> bool | None:
    if claim is BoundClaim.POSITIVE:
        if value.is_positive():
            return True
        return False if value.is_nonpositive() else None
    if claim is BoundClaim.NEGATIVE:
        if value.is_negative():
            return True
        return False if value.is_nonnegative() else None
    if claim is BoundClaim.NONNEGATIVE:
        if value.is_nonnegative():
            return True
        return False if value.is_negative() else None
    lo, hi = (IntervalValue.exact(b, value.precision_bits) for b in bracket)
    below = (value - lo).sign()
    above = (hi - value).sign()
    if below == 1 and above == 1:
        if not nonzero:
            return True
        s = value.sign()
        if s in (1, -1):
            return True
        return False if s == 0 else None
    if below in (-1, 0) or above in (-1, 0):
        return False
    return None


def _run(name: str, index, evaluate: Callable[[int], IntervalValue], claim: BoundClaim,
         bracket=None, *, nonzero=False, precision_bits: int | None = None,
         schedule: Sequence[int] = SCHEDULE, details=None) -> BoundCheckResult:
    steps = [b for b in schedule if precision_bits is None or b >= precision_bits] or [precision_bits]
    if precision_bits is not None and steps[0] != precision_bits:
        steps.insert(0, precision_bits)
    for bits in steps:
        value = evaluate(bits)
        holds = _decide(value, claim, bracket, nonzero)
        if holds is not None:
            extra = details(bits) if details else {}
            return BoundCheckResult(name, index, value, claim, holds, bracket, extra)
    raise UndecidedError(name, index, steps[-1])


def _x(v, bits) -> IntervalValue:
    return IntervalValue.exact(v, bits)


def _ln(v, bits) -> IntervalValue:
    return _x(v, bits).log()


def _pi(bits) -> IntervalValue:
    return IntervalValue.pi(bits + 32).with_precision(bits)


# --- Stirling -------------------------------------------------------------------

_lnfact_cache: dict[int, list[IntervalValue]] = {}
_lnfact_lock = threading.Lock()


def log_factorial(n: int, bits: int) -> IntervalValue:
    """ln n! as a running sum of certified ln k enclosures."""
    with _lnfact_lock:
        table = _lnfact_cache.setdefault(bits, [_x(0, bits)])
        while len(table) <= n:
            k = len(table)
            table.append(table[-1] + _ln(k, bits))
        return table[n]


def stirling_theta(n: int, precision_bits: int = 128) -> BoundCheckResult:
    """theta_n = ln n! - n ln(n/e) - ln sqrt(2 pi n), checked inside (1/(12n+1), 1/(12n))."""
    if n < 1:
        raise ValueError("stirling_theta needs n >= 1")

    def theta(bits):
        return log_factorial(n, bits) - (_ln(n, bits) - 1) * n - (_pi(bits) * (2 * n)).log() / 2

    return _run("stirling", n, theta, BoundClaim.IN_BRACKET,
                (Fraction(1, 12 * n + 1), Fraction(1, 12 * n)), precision_bits=precision_bits)


# --- eta tails ------------------------------------------------------------------

def _zeta_minus_one(s: int, bits: int) -> IntervalValue:
    """sum_{k>=2} k^{-s}: partial sum plus integral bounds on the tail."""
    k_max = 2
    limit = Fraction(1, 2 ** (bits + 8))
    while k_max < _SERIES_CAP and Fraction(1, k_max ** (s - 1) * (s - 1)) > limit:
        k_max *= 2
    k_max = min(k_max, _SERIES_CAP)
    total = _x(0, bits)
    for k in range(2, k_max + 1):
        total = total + _x(Fraction(1, k**s), bits)
    tail_lo = Fraction(1, (k_max + 1) ** (s - 1) * (s - 1))
    tail_hi = Fraction(1, k_max ** (s - 1) * (s - 1))
    return total + _x(tail_lo, bits).hull(_x(tail_hi, bits))


def _beta_minus_one(s: int, bits: int) -> IntervalValue:
    """sum_{k>=1} (-1)^k (2k+1)^{-s}, alternating with decreasing terms."""
    total = _x(0, bits)
    limit = Fraction(1, 2 ** (bits + 8))
    k = 1
    while True:
        term = Fraction((-1) ** k, (2 * k + 1) ** s)
        total = total + _x(term, bits)
        nxt = Fraction((-1) ** (k + 1), (2 * k + 3) ** s)
        k += 1
        if abs(nxt) < limit or k > _SERIES_CAP:
            break
    return total + _x(min(nxt, 0), bits).hull(_x(max(nxt, 0), bits))


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def eta_identity(kind: str, n: int, bits: int) -> IntervalValue:
    """eta_n from the exact sequence value."""
    two_pi = _pi(bits) * 2
    f2n = _factorial(2 * n)
    if kind == "bernoulli":
        b = bernoulli_abs(n).as_fraction()
        return _x(b, bits) * two_pi ** (2 * n) / (2 * f2n) - 1
    if kind == "tangent":
        t = int(tangent_abs(n))
        return _x(t * 2 * n, bits) * two_pi ** (2 * n) / (16**n * 2 * f2n) - 1
    if kind == "euler":
        e = int(euler_abs(n))
        # |E_2n| = 4^{n+1} (2n)! / pi^{2n+1} * (1 + eta_n)
        return _x(e, bits) * _pi(bits) ** (2 * n + 1) / (4 ** (n + 1) * f2n) - 1
    raise ValueError(f"kind must be one of {KINDS}")


def eta_series(kind: str, n: int, bits: int) -> IntervalValue:
    """eta_n from the Dirichlet series with a certified tail."""
    if kind == "bernoulli":
        return _zeta_minus_one(2 * n, bits)
    if kind == "tangent":
        z = _zeta_minus_one(2 * n, bits)
        return z - (z + 1) / 4**n
    if kind == "euler":
        return _beta_minus_one(2 * n + 1, bits)
    raise ValueError(f"kind must be one of {KINDS}")


def eta_bound(kind: str, n: int, precision_bits: int = 128) -> BoundCheckResult:
    """bernoulli/tangent: 0 < eta_n < 3/4^n.  euler: 0 < |eta_n| < 3^{-(2n+1)}."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if n < 1:
        raise ValueError("eta_bound needs n >= 1")

    def eta(bits):
        a = eta_identity(kind, n, bits)
        b = eta_series(kind, n, bits)
        if not a.overlaps(b):
            raise ArithmeticError(f"eta_{n} ({kind}): identity {a} and series {b} disagree")
        return a.intersect(b)

    if kind == "euler":
        b = Fraction(1, 3 ** (2 * n + 1))
        return _run(f"eta-{kind}", n, eta, BoundClaim.IN_BRACKET, (-b, b), nonzero=True,
                    precision_bits=precision_bits)
    return _run(f"eta-{kind}", n, eta, BoundClaim.IN_BRACKET, (Fraction(0), Fraction(3, 4**n)),
                precision_bits=precision_bits)


# --- the two explicit difference bounds ---------------------------------------------

def _bound_constants(kind: str, bits: int) -> tuple[IntervalValue, int, int]:
    """(constant inside the 1/(2n) term, tail numerator for Delta1, for Delta2)."""
    pi = _pi(bits)
    if kind == "bernoulli":
        return (pi * 16).log(), 6, 12
    if kind == "tangent":
        return (pi * 4).log(), 6, 12
    if kind == "euler":
        return (64 / pi).log(), 12, 24
    raise ValueError(f"kind must be one of {KINDS}")


def delta1_expression(n: int, bits: int, kind: str = "bernoulli") -> IntervalValue:
    c, t1, _ = _bound_constants(kind, bits)
    x = lambda v: _x(v, bits)
    return (x(Fraction(1, n)) - _ln(n + 1, bits) / (2 * n * n) - c / (2 * n * (n + 1))
            - x(Fraction(1, 12 * n * n)) - x(Fraction(t1, 4**n * n)))


def delta2_expression(n: int, bits: int, kind: str = "bernoulli") -> IntervalValue:
    c, _, t2 = _bound_constants(kind, bits)
    x = lambda v: _x(v, bits)
    return (x(Fraction(-2, (n + 1) ** 2)) + (_ln(n, bits) + 2 + c * 2) / (2 * n * (n + 1) * (n + 2))
            + x(Fraction(1, 6 * n * n)) + x(Fraction(t2, n * 4**n)))


def delta1_lower_bound(n: int, kind: str = "bernoulli", precision_bits: int = 128) -> BoundCheckResult:
    """Lower bound for the first difference of v_n/n; claimed positive from n = 3."""
    if n < 1:
        raise ValueError("delta1_lower_bound needs n >= 1")
    return _run(f"delta1-{kind}", n, lambda b: delta1_expression(n, b, kind), BoundClaim.POSITIVE,
                precision_bits=precision_bits)


def delta2_upper_bound(n: int, kind: str = "bernoulli", precision_bits: int = 128) -> BoundCheckResult:
    """Upper bound for the second difference of v_n/n; claimed negative from n = 4."""
    if n < 1:
        raise ValueError("delta2_upper_bound needs n >= 1")
    return _run(f"delta2-{kind}", n, lambda b: delta2_expression(n, b, kind), BoundClaim.NEGATIVE,
                precision_bits=precision_bits)


_GENERATORS = {"bernoulli": bernoulli_abs, "tangent": tangent_abs, "euler": euler_abs}


def scaled_logs(kind: str, indices: Iterable[int], bits: int) -> list[IntervalValue]:
    """v_m / m with v_m = log a_m, for the requested indices."""
    gen = _GENERATORS[kind]
    return [log_interval(gen(m), bits) / m for m in indices]


def delta_consistency(kind: str, n: int, precision_bits: int = 128) -> BoundCheckResult:
    """True first/second differences of v_n/n against the two explicit bounds.

    The reported value is an enclosure of min(Delta1 - bound1, bound2 - Delta2);
    for n = 3 only the first-difference inequality is checked.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if n < 3:
        raise ValueError("delta_consistency needs n >= 3")
    with_second = n >= 4

    def slack(bits):
        w = scaled_logs(kind, range(n, n + 3), bits)
        d1 = w[1] - w[0]
        out = d1 - delta1_expression(n, bits, kind)
        if with_second:
            d2 = w[2] - w[1] * 2 + w[0]
            out = interval_min(out, delta2_expression(n, bits, kind) - d2)
        return out

    def details(bits):
        w = scaled_logs(kind, range(n, n + 3), bits)
        out = {"delta1": w[1] - w[0]}
        if with_second:
            out["delta2"] = w[2] - w[1] * 2 + w[0]
        return out

    return _run(f"consistency-{kind}", n, slack, BoundClaim.POSITIVE,
                precision_bits=precision_bits, details=details)


# --- elementary inequalities ---------------------------------------------------

HALF = Fraction(1, 2)


def elementary_inequalities(xs: Iterable = (), ns: Iterable[int] = (),
                            precision_bits: int = 128) -> list[BoundCheckResult]:
    """Check the log inequalities used along the way at the given sample points.

    * ``log(1+x) <= x`` and ``|log(1-x)| <= 2x`` for x in [0, 1/2]
    * ``x - x^2 < log(1+x) < x`` for x in (0, 1/2)
    * ``log(1 + 1/n) >= 1/(2n)`` for integers n >= 1
    """
    out: list[BoundCheckResult] = []
    for x in xs:
        x = Fraction(x)
        if not 0 <= x <= HALF:
            raise ValueError(f"sample point {x} lies outside [0, 1/2]")
        out.append(_run("log1p-le-x", x, lambda b: _x(x, b) - _x(1 + x, b).log(),
                        BoundClaim.NONNEGATIVE, precision_bits=precision_bits))
        out.append(_run("abs-log1m-le-2x", x, lambda b: _x(2 * x, b) - abs(_x(1 - x, b).log()),
                        BoundClaim.NONNEGATIVE, precision_bits=precision_bits))
        if 0 < x < HALF:
            out.append(_run("log1p-gt-x-minus-x2", x, lambda b: _x(1 + x, b).log() - _x(x - x * x, b),
                            BoundClaim.POSITIVE, precision_bits=precision_bits))
            out.append(_run("log1p-lt-x", x, lambda b: _x(x, b) - _x(1 + x, b).log(),
                            BoundClaim.POSITIVE, precision_bits=precision_bits))
    for n in ns:
        if n < 1:
            raise ValueError(f"n = {n} is outside n >= 1")
        out.append(_run("log1p-inv-n-ge-half-inv-n", n,
                        lambda b: _x(Fraction(n + 1, n), b).log() - _x(Fraction(1, 2 * n), b),
                        BoundClaim.NONNEGATIVE, precision_bits=precision_bits))
    return out


def grid(check: Callable[..., BoundCheckResult], indices: Iterable[int], **kwargs) -> list[BoundCheckResult]:
    return [check(n, **kwargs) for n in indices]
