"""Leading-order asymptotics for the binomial-power sums and the tabulated
expansions of the Motzkin, Schroeder and central trinomial numbers.

For an exponent vector r = (r_0, ..., r_m) the growth constants come from a
single parameter 0 < lam < 1 solving

    sum_j r_j [ j log(1 + j lam) - log lam - (j - 1) log(1 + (j - 1) lam) ] = 0,

after which

    mu = prod_j ((1 + j lam) / (1 + (j - 1) lam))^{r_j}
    nu = sum_j r_j / ((1 + (j - 1) lam)(1 + j lam))

and S(n) ~ mu^{n + 1/2} / sqrt(nu (2 pi lam n)^{r - 1}).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from mpmath import mpf

from .interval import IntervalValue
from .sequences import ExactValue, Family, SequenceId, validate_exponents, value

MESH = 64
DEFAULT_TOLERANCE = 1e-12
PRECISION_SCHEDULE = (128, 256, 512)
CONSTANT_GUARD_BITS = 32


class SolverError(ArithmeticError):
    """The implicit equation for lambda could not be solved as requested."""


# --- the defining equation --------------------------------------------------

def log_product(r: tuple[int, ...], lam: IntervalValue) -> IntervalValue:
    """log of the product whose unit level defines lambda."""
    total = IntervalValue.exact(0, lam.precision_bits)
    for j, e in enumerate(r):
        if not e:
            continue
        term = -lam.log()
        if j:
            term = term + (1 + lam * j).log() * j
        if j != 1:
            term = term - (1 + lam * (j - 1)).log() * (j - 1)
        total = total + term * e
    return total


def _mu(r, lam: IntervalValue) -> IntervalValue:
    out = IntervalValue.exact(1, lam.precision_bits)
    for j, e in enumerate(r):
        if e:
            out = out * ((1 + lam * j) / (1 + lam * (j - 1))) ** e
    return out


def _nu(r, lam: IntervalValue) -> IntervalValue:
    out = IntervalValue.exact(0, lam.precision_bits)
    for j, e in enumerate(r):
        if e:
            out = out + e / ((1 + lam * (j - 1)) * (1 + lam * j))
    return out


@dataclass(frozen=True)
class AsymptoticModel:
    r: tuple[int, ...]
    lam: IntervalValue
    mu: IntervalValue
    nu: IntervalValue
    residual: mpf
    precision_bits: int

    @property
    def weight(self) -> int:
        """r = r_0 + ... + r_m."""
        return sum(self.r)


def _point(x: Fraction, prec: int) -> IntervalValue:
    return IntervalValue.exact(x, prec)


def _sign_at(r, x: Fraction, prec: int) -> int | None:
    s = log_product(r, _point(x, prec)).sign()
    return None if s in (None, 0) else s


def _locate(r, prec: int) -> tuple[Fraction, Fraction]:
    # lam -> 0+ drives the product to +inf, lam -> 1- to -inf (r_0 > 0)
    mesh = [Fraction(i, MESH) for i in range(MESH + 1)]
    signs: list[int | None] = [1] + [_sign_at(r, x, prec) for x in mesh[1:-1]] + [-1]
    brackets = []
    last = 0
    for i in range(1, len(mesh)):
        s = signs[i]
        if s is None:
            continue
        if s != signs[last]:
            brackets.append((mesh[last], mesh[i]))
        last = i
    if not brackets:
        raise SolverError(f"no sign change on the {MESH}-point mesh of (0, 1) for r={r}")
    if len(brackets) > 1:
        shown = ", ".join(f"[{a}, {b}]" for a, b in brackets)
        raise SolverError(f"multiple roots bracketed for r={r}: {shown}")
    return brackets[0]


def _bisect(r, a: Fraction, b: Fraction, prec: int, width: Fraction) -> tuple[Fraction, Fraction]:
    while b - a > width:
        m = (a + b) / 2
        s = _sign_at(r, m, prec)
        if s == 1:
            a = m
        elif s == -1:
            b = m
        else:
            # undecided at the midpoint: try to pinch a narrow bracket around it
            d = width / 4
            if _sign_at(r, m - d, prec) == 1 and _sign_at(r, m + d, prec) == -1:
                return m - d, m + d
            raise SolverError(f"cannot resolve the sign near lambda={float(m)} at {prec} bits")
    return a, b


def solve_lambda(r, tolerance: float = DEFAULT_TOLERANCE, *,
                 schedule=PRECISION_SCHEDULE) -> AsymptoticModel:
    """Bracket lambda by mesh search plus bisection and derive mu and nu.

    The returned residual bounds ``|F(lambda) - 1|`` over the whole lambda
    interval, where F is the defining product.
    """
    r = tuple(int(x) for x in r)
    validate_exponents(r)
    a, b = _locate(r, schedule[0])
    last_residual = None
    for prec in schedule:
        width = Fraction(1, 2 ** (prec - 16))
        lo, hi = _bisect(r, a, b, prec, width)
        lam = _point(lo, prec).hull(_point(hi, prec))
        product = log_product(r, lam).exp()
        if not product.contains(1):
            raise SolverError(f"product enclosure misses 1 for r={r}; bracket is invalid")
        residual = abs(product - 1).hi
        last_residual = residual
        if residual <= tolerance:
            return AsymptoticModel(r, lam, _mu(r, lam), _nu(r, lam), residual, prec)
    raise SolverError(
        f"residual {last_residual} exceeds tolerance {tolerance} at {schedule[-1]} bits for r={r}"
    )


def leading_term(model: AsymptoticModel, n: int) -> IntervalValue:
    """``mu^{n + 1/2} / sqrt(nu (2 pi lam n)^{r - 1})``."""
    if n < 1:
        raise ValueError("leading_term needs n >= 1")
    p = model.precision_bits
    log_val = model.mu.log() * Fraction(2 * n + 1, 2) - model.nu.log() / 2
    k = model.weight - 1
    if k:
        two_pi = IntervalValue.pi(p + CONSTANT_GUARD_BITS).with_precision(p) * 2
        log_val = log_val - (two_pi * model.lam * n).log() * Fraction(k, 2)
    return log_val.exp()


def correction_factor(seq: SequenceId, model: AsymptoticModel, n: int) -> IntervalValue:
    """f(n) = exact value / leading term; ``n (f(n) - 1)`` estimates the 1/n coefficient."""
    if seq.family is not Family.S_FAMILY or seq.r != model.r:
        raise ValueError(f"model for r={model.r} does not describe {seq}")
    exact = value(seq, n)
    return IntervalValue.exact(exact.numerator, model.precision_bits) / leading_term(model, n)


# --- tabulated expansions ----------------------------------------------------

@dataclass(frozen=True)
class QuadSurd:
    """Exact a + b*sqrt(2) with rational a, b."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, other: "QuadSurd") -> "QuadSurd":
        return QuadSurd(self.a + other.a, self.b + other.b)

    def __mul__(self, other: "QuadSurd") -> "QuadSurd":
        return QuadSurd(self.a * other.a + 2 * self.b * other.b, self.a * other.b + self.b * other.a)

    def to_interval(self, precision_bits: int) -> IntervalValue:
        wp = precision_bits + CONSTANT_GUARD_BITS
        out = IntervalValue.exact(self.a, wp)
        if self.b:
            out = out + IntervalValue.exact(2, wp).sqrt() * self.b
        return out.with_precision(precision_bits)

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt(2)"


class ExpansionFamily(Enum):
    MOTZKIN = "motzkin"
    SCHROEDER = "schroder"
    TRINOMIAL = "trinomial"


@dataclass(frozen=True)
class ExpansionSpec:
    """a(n) ~ sqrt(P / (4 pi N^e)) * base^N * (1 + c_1/N + c_2/N^2 + ...), N = n + shift."""

    family: ExpansionFamily
    growth_base: QuadSurd
    prefactor: QuadSurd
    n_power: int
    correction_coeffs: tuple[QuadSurd, ...] = field(default_factory=tuple)
    index_shift: int = 0

    def exact(self, n: int) -> ExactValue:
        return value(SequenceId(Family(self.family.value)), n)


def _q(a, b=0) -> QuadSurd:
    return QuadSurd(Fraction(a), Fraction(b))


# The Motzkin expansion is tabulated for unary-binary trees with N nodes, which
# number M_{N-1}; evaluating it at N = n + 1 approximates M_n.
MOTZKIN = ExpansionSpec(
    ExpansionFamily.MOTZKIN,
    growth_base=_q(3),
    prefactor=_q(3),
    n_power=3,
    correction_coeffs=(
        _q(Fraction(-15, 16)),
        _q(Fraction(505, 512)),
        _q(Fraction(-8085, 8192)),
        _q(Fraction(505659, 524288)),
    ),
    index_shift=1,
)

SCHROEDER = ExpansionSpec(
    ExpansionFamily.SCHROEDER,
    growth_base=_q(3, 2),
    prefactor=_q(4, 3),
    n_power=3,
    correction_coeffs=(
        _q(Fraction(-24, 32), Fraction(-9, 32)),
        _q(Fraction(665, 1024), Fraction(360, 1024)),
    ),
)

# Central trinomial coefficients grow like 3^n; the 1/n coefficient is -3/16.
TRINOMIAL = ExpansionSpec(
    ExpansionFamily.TRINOMIAL,
    growth_base=_q(3),
    prefactor=_q(3),
    n_power=1,
    correction_coeffs=(_q(Fraction(-3, 16)),),
)

# Same coefficient with base and prefactor 1 + sqrt(2); kept to document that
# this form does not describe the central trinomial coefficients.
TRINOMIAL_SQRT2_FORM = ExpansionSpec(
    ExpansionFamily.TRINOMIAL,
    growth_base=_q(1, 1),
    prefactor=_q(1, 1),
    n_power=1,
    correction_coeffs=(_q(Fraction(-3, 16)),),
)

EXPANSIONS = {
    ExpansionFamily.MOTZKIN: MOTZKIN,
    ExpansionFamily.SCHROEDER: SCHROEDER,
    ExpansionFamily.TRINOMIAL: TRINOMIAL,
}


def expansion_for(name: str) -> ExpansionSpec:
    return EXPANSIONS[ExpansionFamily(name)]


def evaluate_expansion(spec: ExpansionSpec, n: int, terms: int,
                       precision_bits: int = 128) -> IntervalValue:
    """Truncated expansion with ``terms`` correction coefficients, approximating a(n)."""
    if n < 1:
        raise ValueError("evaluate_expansion needs n >= 1")
    if not 0 <= terms <= len(spec.correction_coeffs):
        raise ValueError(
            f"{spec.family.value} has {len(spec.correction_coeffs)} correction terms; {terms} requested"
        )
    p = precision_bits
    big_n = n + spec.index_shift
    pi = IntervalValue.pi(p + CONSTANT_GUARD_BITS).with_precision(p)
    pref = (spec.prefactor.to_interval(p) / (pi * 4 * big_n**spec.n_power)).sqrt()
    series = IntervalValue.exact(1, p)
    for i, c in enumerate(spec.correction_coeffs[:terms], start=1):
        series = series + c.to_interval(p) / big_n**i
    return pref * spec.growth_base.to_interval(p) ** big_n * series


def relative_error(exact: ExactValue, approx: IntervalValue) -> IntervalValue:
    """Enclosure of exact / approx - 1."""
    return IntervalValue.exact(exact.as_fraction(), approx.precision_bits) / approx - 1
