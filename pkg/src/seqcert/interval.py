"""Outward-rounded interval arithmetic on top of :mod:`mpmath.libmp`.

Every endpoint is a raw libmp ``mpf`` tuple.  Arithmetic operations round the
lower endpoint toward -inf and the upper endpoint toward +inf, so an interval
always encloses the real quantity it stands for.  Precision is carried by the
value itself rather than by a global context, which keeps evaluations pure and
safe to run from several threads.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from mpmath import libmp as L
from mpmath import mp, mpf

FLOOR = L.round_floor
CEIL = L.round_ceiling

DEFAULT_PRECISION = 128

# libm-style transcendental routines in mpmath are accurate to well under an
# ulp; we still widen their output by a few ulps at the working precision.
_GUARD_BITS = 12
_PAD_SHIFT = 4


def _pad_down(v, wp):
    if v == L.fzero:
        return v
    return L.mpf_sub(v, L.mpf_shift(L.mpf_abs(v), -(wp - _PAD_SHIFT)), wp, FLOOR)


def _pad_up(v, wp):
    if v == L.fzero:
        return v
    return L.mpf_add(v, L.mpf_shift(L.mpf_abs(v), -(wp - _PAD_SHIFT)), wp, CEIL)


def _min(*vals):
    best = vals[0]
    for v in vals[1:]:
        if L.mpf_lt(v, best):
            best = v
    return best


def _max(*vals):
    best = vals[0]
    for v in vals[1:]:
        if L.mpf_gt(v, best):
            best = v
    return best


class IntervalValue:
    """Closed interval ``[lo, hi]`` with endpoints at ``precision_bits`` bits."""

    __slots__ = ("_lo", "_hi", "precision_bits")

    def __init__(self, lo, hi, precision_bits: int = DEFAULT_PRECISION):
        if L.mpf_gt(lo, hi):
            raise ValueError("interval lower endpoint exceeds upper endpoint")
        self._lo = lo
        self._hi = hi
        self.precision_bits = int(precision_bits)

    # -- construction -----------------------------------------------------
    @classmethod
    def exact(cls, x, precision_bits: int = DEFAULT_PRECISION) -> "IntervalValue":
        """Tightest enclosure of an exact integer or rational."""
        if isinstance(x, IntervalValue):
            return x
        p = precision_bits
        if isinstance(x, int):
            return cls(L.from_int(x, p, FLOOR), L.from_int(x, p, CEIL), p)
        if isinstance(x, Rational):
            x = Fraction(x)
            return cls(
                L.from_rational(x.numerator, x.denominator, p, FLOOR),
                L.from_rational(x.numerator, x.denominator, p, CEIL),
                p,
            )
        if hasattr(x, "_mpf_"):
            return cls(L.mpf_pos(x._mpf_, p, FLOOR), L.mpf_pos(x._mpf_, p, CEIL), p)
        if hasattr(x, "numerator") and hasattr(x, "denominator"):
            return cls.exact(Fraction(x.numerator, x.denominator), p)
        raise TypeError(f"cannot build an exact interval from {type(x).__name__}")

    @classmethod
    def pi(cls, precision_bits: int = DEFAULT_PRECISION) -> "IntervalValue":
        wp = precision_bits + _GUARD_BITS
        return cls(
            _pad_down(L.mpf_pi(wp, FLOOR), wp), _pad_up(L.mpf_pi(wp, CEIL), wp), precision_bits
        )

    # -- accessors ----------------------------------------------------------
    # make_mpf wraps the raw tuple as is; mpf(...) would round to the global context
    @property
    def lo(self) -> mpf:
        return mp.make_mpf(self._lo)

    @property
    def hi(self) -> mpf:
        return mp.make_mpf(self._hi)

    @property
    def width(self) -> mpf:
        return mp.make_mpf(L.mpf_sub(self._hi, self._lo, self.precision_bits + 8, CEIL))

    @property
    def mid(self) -> mpf:
        s = L.mpf_add(self._lo, self._hi, self.precision_bits + 8)
        return mp.make_mpf(L.mpf_shift(s, -1))

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        lo = L.to_str(self._lo, 20, strip_zeros=False, min_fixed=0, max_fixed=0)
        hi = L.to_str(self._hi, 20, strip_zeros=False, min_fixed=0, max_fixed=0)
        return f"IntervalValue([{lo}, {hi}], {self.precision_bits} bits)"

    # -- sign / order predicates ---------------------------------------------
    def is_positive(self) -> bool:
        return L.mpf_gt(self._lo, L.fzero)

    def is_negative(self) -> bool:
        return L.mpf_lt(self._hi, L.fzero)

    def is_nonnegative(self) -> bool:
        return L.mpf_ge(self._lo, L.fzero)

    def is_nonpositive(self) -> bool:
        return L.mpf_le(self._hi, L.fzero)

    def sign(self) -> int | None:
        """+1 or -1 when zero is excluded, 0 for the point interval at zero, else None."""
        if self.is_positive():
            return 1
        if self.is_negative():
            return -1
        if self._lo == L.fzero and self._hi == L.fzero:
            return 0
        return None

    def contains(self, x) -> bool:
        other = IntervalValue.exact(x, self.precision_bits + 64) if not isinstance(x, IntervalValue) else x
        return L.mpf_le(self._lo, other._lo) and L.mpf_ge(self._hi, other._hi)

    def overlaps(self, other: "IntervalValue") -> bool:
        return not (L.mpf_lt(self._hi, other._lo) or L.mpf_lt(other._hi, self._lo))

    def intersect(self, other: "IntervalValue") -> "IntervalValue":
        if not self.overlaps(other):
            raise ValueError("intervals are disjoint")
        return IntervalValue(
            _max(self._lo, other._lo),
            _min(self._hi, other._hi),
            max(self.precision_bits, other.precision_bits),
        )

    def hull(self, other: "IntervalValue") -> "IntervalValue":
        return IntervalValue(
            _min(self._lo, other._lo),
            _max(self._hi, other._hi),
            max(self.precision_bits, other.precision_bits),
        )

    def lt(self, other) -> bool | None:
        """Certified ``self < other``; None when undecided."""
        d = (self - other).sign()
        if d is None:
            return None
        return d < 0

    # -- arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "IntervalValue":
        if isinstance(other, IntervalValue):
            return other
        return IntervalValue.exact(other, self.precision_bits)

    def _prec(self, other: "IntervalValue") -> int:
        return max(self.precision_bits, other.precision_bits)

    def __neg__(self):
        return IntervalValue(L.mpf_neg(self._hi), L.mpf_neg(self._lo), self.precision_bits)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._coerce(other)
        p = self._prec(o)
        return IntervalValue(
            L.mpf_add(self._lo, o._lo, p, FLOOR), L.mpf_add(self._hi, o._hi, p, CEIL), p
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        p = self._prec(o)
        return IntervalValue(
            L.mpf_sub(self._lo, o._hi, p, FLOOR), L.mpf_sub(self._hi, o._lo, p, CEIL), p
        )

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = self._prec(o)
        pairs = ((self._lo, o._lo), (self._lo, o._hi), (self._hi, o._lo), (self._hi, o._hi))
        lo = _min(*(L.mpf_mul(a, b, p, FLOOR) for a, b in pairs))
        hi = _max(*(L.mpf_mul(a, b, p, CEIL) for a, b in pairs))
        return IntervalValue(lo, hi, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not (o.is_positive() or o.is_negative()):
            raise ZeroDivisionError("divisor interval contains zero")
        p = self._prec(o)
        pairs = ((self._lo, o._lo), (self._lo, o._hi), (self._hi, o._lo), (self._hi, o._hi))
        lo = _min(*(L.mpf_div(a, b, p, FLOOR) for a, b in pairs))
        hi = _max(*(L.mpf_div(a, b, p, CEIL) for a, b in pairs))
        return IntervalValue(lo, hi, p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported; use exp/log")
        result = IntervalValue.exact(1, self.precision_bits)
        base = self
        if k % 2 == 0 and not (self.is_nonnegative() or self.is_nonpositive()):
            base = abs(self)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __abs__(self):
        if self.is_nonnegative():
            return self
        if self.is_nonpositive():
            return -self
        return IntervalValue(L.fzero, _max(L.mpf_neg(self._lo), self._hi), self.precision_bits)

    # -- elementary functions ------------------------------------------------
    def log(self) -> "IntervalValue":
        if not self.is_positive():
            raise ValueError("log of an interval that is not strictly positive")
        wp = self.precision_bits + _GUARD_BITS
        lo = _pad_down(L.mpf_log(self._lo, wp, FLOOR), wp)
        hi = _pad_up(L.mpf_log(self._hi, wp, CEIL), wp)
        p = self.precision_bits
        return IntervalValue(L.mpf_pos(lo, p, FLOOR), L.mpf_pos(hi, p, CEIL), p)

    def exp(self) -> "IntervalValue":
        wp = self.precision_bits + _GUARD_BITS
        lo = _pad_down(L.mpf_exp(self._lo, wp, FLOOR), wp)
        hi = _pad_up(L.mpf_exp(self._hi, wp, CEIL), wp)
        if L.mpf_lt(lo, L.fzero):
            lo = L.fzero
        p = self.precision_bits
        return IntervalValue(L.mpf_pos(lo, p, FLOOR), L.mpf_pos(hi, p, CEIL), p)

    def sqrt(self) -> "IntervalValue":
        if not self.is_nonnegative():
            raise ValueError("sqrt of an interval with negative part")
        p = self.precision_bits
        return IntervalValue(L.mpf_sqrt(self._lo, p, FLOOR), L.mpf_sqrt(self._hi, p, CEIL), p)

    def with_precision(self, precision_bits: int) -> "IntervalValue":
        p = precision_bits
        return IntervalValue(L.mpf_pos(self._lo, p, FLOOR), L.mpf_pos(self._hi, p, CEIL), p)


def interval_min(a: IntervalValue, b: IntervalValue) -> IntervalValue:
    """Enclosure of ``min(x, y)`` for ``x`` in ``a`` and ``y`` in ``b``."""
    return IntervalValue(_min(a._lo, b._lo), _min(a._hi, b._hi), max(a.precision_bits, b.precision_bits))


def format_endpoint(x, digits: int = 20) -> str:
    """Deterministic scientific rendering used by reports."""
    raw = x._mpf_ if isinstance(x, mpf) else x
    return L.to_str(raw, digits, strip_zeros=False, min_fixed=0, max_fixed=0)


def log(x) -> IntervalValue:
    return x.log()


def exp(x) -> IntervalValue:
    return x.exp()


def sqrt(x) -> IntervalValue:
    return x.sqrt()
