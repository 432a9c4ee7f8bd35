"""The acceptance criteria as plain functions, shared by ``seqcert reproduce``
and the test suite.

Each criterion returns a :class:`CriterionResult` whose ``detail`` string is
deterministic (no timings), so a consolidated report is byte-stable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import _oracles as oracle
from . import asymptotics as asy
from . import bounds
from .comparator import Claim, check
from .interval import IntervalValue
from .sequences import Family, SequenceId, value

ORACLE_MAX = 60
ROOT_MAX = 150
RATIO_MAX = 100
FAMILY_MAX = 300
START_LIMIT = 10
BOUND_GRID_MAX = 10_000
STIRLING_MAX = 1000
ETA_MAX = 50
CONSISTENCY_MAX = 60
RESIDUAL_TOL = 1e-12
CLOSED_FORM_TOL = 1e-10
MOTZKIN_TOL = 1e-8
SCALING_POINTS = (100, 200)

BERNOULLI = SequenceId(Family.BERNOULLI_ABS_2N)
TANGENT = SequenceId(Family.TANGENT_ABS_ODD)
EULER = SequenceId(Family.EULER_ABS_EVEN)
MOTZKIN = SequenceId(Family.MOTZKIN)
SCHROEDER = SequenceId(Family.SCHROEDER)
TRINOMIAL = SequenceId(Family.TRINOMIAL)
S_VECTORS = ((2,), (3,), (1, 1), (2, 2))


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    checks: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title} -- {self.detail}"


def _cap(n: int, max_n: int | None) -> int:
    return n if max_n is None else min(n, max_n)


# 1 ---------------------------------------------------------------------------

def _oracle_table(upto: int) -> dict[SequenceId, list[int | Fraction]]:
    b = oracle.bernoulli_signed(2 * upto)
    e = oracle.secant_signed(upto)
    rows = oracle.pascal_rows(3 * upto)
    table = {
        BERNOULLI: [abs(b[2 * n]) for n in range(1, upto + 1)],
        TANGENT: [oracle.tangent_from_series(n) for n in range(1, upto + 1)],
        EULER: [abs(x) for x in e],
        MOTZKIN: [oracle.motzkin_paths(n) for n in range(upto + 1)],
        SCHROEDER: [oracle.schroder_paths(n) for n in range(upto + 1)],
        TRINOMIAL: [oracle.trinomial_expansion(n) for n in range(upto + 1)],
        SequenceId.sfam(1): [2**n for n in range(upto + 1)],
        SequenceId.sfam(2): [rows[2 * n][n] for n in range(upto + 1)],
        SequenceId.sfam(3): oracle.franel_recurrence(upto),
        SequenceId.sfam(1, 1): oracle.delannoy_recurrence(upto),
        SequenceId.sfam(2, 2): oracle.apery_recurrence(upto),
        SequenceId.sfam(2, 1, 1): [oracle.s_family_pascal((2, 1, 1), n, rows) for n in range(upto + 1)],
    }
    return table


def criterion_oracles(max_n: int | None = None) -> CriterionResult:
    upto = _cap(ORACLE_MAX, max_n)
    table = _oracle_table(upto)
    # the secant-series route doubles as a second oracle for |E_2n|
    table_sec = [oracle.secant_from_series(n) for n in range(upto + 1)]
    mismatches = []
    for seq, expected in table.items():
        for offset, want in enumerate(expected):
            n = seq.first_index + offset
            if value(seq, n).as_fraction() != want:
                mismatches.append(f"{seq}@{n}")
    for n, want in enumerate(table_sec):
        if int(value(EULER, n)) != want:
            mismatches.append(f"euler-series@{n}")
    detail = f"{len(table)} sequences, indices <= {upto}"
    if mismatches:
        detail += "; mismatches: " + ", ".join(mismatches[:10])
    return CriterionResult(1, "oracle equivalence", not mismatches, detail)


# 2-5 ---------------------------------------------------------------------------

def _cert_line(seq, claim: Claim, lo: int, hi: int):
    cert = check(seq, claim, (lo, hi))
    status = "ok" if cert.all_hold else f"first failure at n={cert.first_failure}, holds from n={cert.observed_start}"
    return cert, f"{seq} {claim.value} [{lo},{hi}]: {status}"


def criterion_root_claims(max_n: int | None = None) -> CriterionResult:
    hi = _cap(ROOT_MAX, max_n)
    lines, ok = [], True
    for seq in (BERNOULLI, TANGENT, EULER):
        cert, line = _cert_line(seq, Claim.ROOT_INCREASING, 1, hi)
        ok &= cert.all_hold
        lines.append(line)
    return CriterionResult(2, "root sequences of |B_2n|, |T_2n-1|, |E_2n| strictly increasing",
                           ok, "; ".join(lines), lines)


def criterion_ratio_claims(max_n: int | None = None) -> CriterionResult:
    hi = _cap(RATIO_MAX, max_n)
    lines, ok = [], True
    for seq, lo in ((BERNOULLI, 2), (TANGENT, 1), (EULER, 1)):
        cert, line = _cert_line(seq, Claim.RATIO_DECREASING, lo, hi)
        ok &= cert.all_hold
        lines.append(line)
    return CriterionResult(3, "ratio sequences of |B_2n|, |T_2n-1|, |E_2n| strictly decreasing",
                           ok, "; ".join(lines), lines)


def _from_start(seq, claim: Claim, hi: int) -> tuple[bool, str]:
    cert = check(seq, claim, (1, hi))
    start = cert.observed_start
    ok = start is not None and start <= START_LIMIT
    return ok, f"{seq} {claim.value}: observed start {start} through {hi}"


def criterion_binomial_sums(max_n: int | None = None) -> CriterionResult:
    hi = _cap(FAMILY_MAX, max_n)
    lines, ok = [], True
    for r in S_VECTORS:
        good, line = _from_start(SequenceId.sfam(*r), Claim.RATIO_DECREASING, hi)
        ok &= good
        lines.append(line)
    return CriterionResult(4, f"binomial-power sums: ratio strictly decreasing from n_r <= {START_LIMIT}",
                           ok, "; ".join(lines), lines)


def criterion_path_counts(max_n: int | None = None) -> CriterionResult:
    hi = _cap(FAMILY_MAX, max_n)
    lines, ok = [], True
    for seq in (MOTZKIN, SCHROEDER, TRINOMIAL):
        for claim in (Claim.ROOT_INCREASING, Claim.RATIO_DECREASING):
            good, line = _from_start(seq, claim, hi)
            ok &= good
            lines.append(line)
    return CriterionResult(5, f"Motzkin/Schroeder/trinomial root increasing and ratio decreasing from n0 <= {START_LIMIT}",
                           ok, "; ".join(lines), lines)


# 6-7 ----------------------------------------------------------------------------

def _grid_summary(name: str, results) -> tuple[bool, str]:
    bad = [r.index for r in results if not r.holds]
    lo, hi = results[0].index, results[-1].index
    bits = sorted({r.precision_bits for r in results})
    status = "all hold" if not bad else f"fails at {bad[:5]}"
    return not bad, f"{name} n in [{lo},{hi}]: {status} (bits used {bits})"


def criterion_bound_grid(max_n: int | None = None) -> CriterionResult:
    hi = _cap(BOUND_GRID_MAX, max_n)
    ok1, l1 = _grid_summary("delta1 > 0", bounds.grid(bounds.delta1_lower_bound, range(3, hi + 1)))
    ok2, l2 = _grid_summary("delta2 < 0", bounds.grid(bounds.delta2_upper_bound, range(4, hi + 1)))
    return CriterionResult(6, "explicit difference bounds keep their sign", ok1 and ok2, f"{l1}; {l2}", [l1, l2])


def criterion_brackets(max_n: int | None = None) -> CriterionResult:
    lines, ok = [], True
    good, line = _grid_summary("stirling", bounds.grid(bounds.stirling_theta, range(1, _cap(STIRLING_MAX, max_n) + 1)))
    ok &= good
    lines.append(line)
    for kind in bounds.KINDS:
        res = [bounds.eta_bound(kind, n) for n in range(1, _cap(ETA_MAX, max_n) + 1)]
        good, line = _grid_summary(f"eta-{kind}", res)
        ok &= good
        lines.append(line)
    res = [bounds.delta_consistency("bernoulli", n) for n in range(4, _cap(CONSISTENCY_MAX, max_n) + 1)]
    good, line = _grid_summary("consistency-bernoulli", res)
    ok &= good
    lines.append(line)
    return CriterionResult(7, "Stirling bracket, eta tail bounds, difference-bound consistency", ok, "; ".join(lines), lines)


# 8-9 -----------------------------------------------------------------------------

def _close(iv: IntervalValue, exact: IntervalValue, tol: float) -> bool:
    return iv.overlaps(exact) and float(iv.hull(exact).width) <= tol


def criterion_solver(max_n: int | None = None) -> CriterionResult:
    sq2 = asy.QuadSurd
    expected = {
        (1,): (Fraction(1, 2), sq2(2)),
        (2,): (Fraction(1, 2), sq2(4)),
        (3,): (Fraction(1, 2), sq2(8)),
        (4,): (Fraction(1, 2), sq2(16)),
        (1, 1): (None, sq2(3, 2)),
        (2, 2): (None, sq2(17, 12)),
    }
    lines, ok = [], True
    for r, (lam, mu) in expected.items():
        model = asy.solve_lambda(r, RESIDUAL_TOL)
        p = model.precision_bits
        lam_iv = IntervalValue.exact(lam, p + 32) if lam is not None else 1 / IntervalValue.exact(2, p + 32).sqrt()
        good = (model.residual <= RESIDUAL_TOL
                and _close(model.lam, lam_iv, CLOSED_FORM_TOL)
                and _close(model.mu, mu.to_interval(p + 32), CLOSED_FORM_TOL))
        ok &= good
        lines.append(f"r={r}: {'ok' if good else 'MISMATCH'}")
    return CriterionResult(8, "lambda solver residual and closed forms", ok, "; ".join(lines), lines)


def _rel_err(spec: asy.ExpansionSpec, n: int, terms: int) -> IntervalValue:
    return asy.relative_error(spec.exact(n), asy.evaluate_expansion(spec, n, terms))


def criterion_expansions(max_n: int | None = None) -> CriterionResult:
    lines, ok = [], True
    err = abs(_rel_err(asy.MOTZKIN, 100, 4))
    good = err.hi < MOTZKIN_TOL
    ok &= good
    lines.append(f"motzkin n=100 terms=4: |rel err| < {float(err.hi):.3e}")
    for spec in (asy.MOTZKIN, asy.SCHROEDER, asy.TRINOMIAL):
        k = len(spec.correction_coeffs)
        target = Fraction(1, 2 ** (k + 1))
        for n in SCALING_POINTS:
            ratio = abs(_rel_err(spec, 2 * n, k)) / abs(_rel_err(spec, n, k))
            good = (ratio - target / 2).is_nonnegative() and (target * 2 - ratio).is_nonnegative()
            ok &= good
            lines.append(f"{spec.family.value} k={k} err(2n)/err(n) at n={n}: {float(ratio.mid):.4f} "
                         f"(window [{float(target / 2):.4f}, {float(target * 2):.4f}])")
    return CriterionResult(9, "expansion accuracy and remainder scaling", ok, "; ".join(lines), lines)


CRITERIA = (
    criterion_oracles,
    criterion_root_claims,
    criterion_ratio_claims,
    criterion_binomial_sums,
    criterion_path_counts,
    criterion_bound_grid,
    criterion_brackets,
    criterion_solver,
    criterion_expansions,
)


def run_all(max_n: int | None = None) -> list[CriterionResult]:
    return [crit(max_n) for crit in CRITERIA]
