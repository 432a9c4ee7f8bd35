from __future__ import annotations

from fractions import Fraction
from math import comb

import mpmath
import pytest

from seqcert import asymptotics as asy
from seqcert.interval import IntervalValue
from seqcert.sequences import SequenceId, value

TOL = 1e-10


def _near(iv: IntervalValue, target, tol=TOL) -> bool:
    with mpmath.workprec(300):
        t = mpmath.mpf(target) if not isinstance(target, mpmath.mpf) else target
        return abs(iv.lo - t) <= tol and abs(iv.hi - t) <= tol


SQRT2 = mpmath.sqrt(2)


@pytest.mark.parametrize("r", [(1,), (2,), (3,), (4,)])
def test_single_exponent_closed_form(r):
    m = asy.solve_lambda(r)
    assert m.residual <= asy.DEFAULT_TOLERANCE
    assert m.lam.contains(Fraction(1, 2))
    assert m.mu.contains(2 ** r[0])
    # with lam = 1/2 only the j = 0 term survives: nu = r_0 / (1 - lam) = 2 r_0
    assert _near(m.nu, 2 * r[0])


@pytest.mark.parametrize("r, mu, nu", [((1, 1), asy.QuadSurd(3, 2), 4), ((2, 2), asy.QuadSurd(17, 12), 8)])
def test_two_exponent_closed_forms(r, mu, nu):
    m = asy.solve_lambda(r)
    lam = 1 / IntervalValue.exact(2, 300).sqrt()
    assert m.lam.overlaps(lam)
    assert m.mu.overlaps(mu.to_interval(m.precision_bits))
    assert m.nu.contains(nu) or _near(m.nu, nu)


def test_leading_term_is_exact_for_powers_of_two():
    m = asy.solve_lambda((1,))
    for n in (1, 7, 30):
        assert asy.leading_term(m, n).contains(2**n)
    f = asy.correction_factor(SequenceId.sfam(1), m, 10)
    assert f.contains(1) and f.width < 1e-30


def test_leading_term_central_binomial():
    m = asy.solve_lambda((2,))
    with mpmath.workprec(300):
        for n in (5, 50, 500):
            assert _near(asy.leading_term(m, n) / (4**n), 1 / mpmath.sqrt(mpmath.pi * n), 1e-25)


def test_franel_leading_term_ratio():
    m = asy.solve_lambda((3,))
    ratio = IntervalValue.exact(int(value(SequenceId.sfam(3), 20)), 128) / asy.leading_term(m, 20)
    assert 0.9 <= float(ratio.lo) and float(ratio.hi) <= 1.0


@pytest.mark.parametrize("r, n", [((2,), 50), ((2, 2), 50), ((3,), 60)])
def test_correction_factor_is_stable(r, n):
    seq = SequenceId.sfam(*r)
    m = asy.solve_lambda(r)
    a = float(((asy.correction_factor(seq, m, n) - 1) * n).mid)
    b = float(((asy.correction_factor(seq, m, 2 * n) - 1) * (2 * n)).mid)
    assert abs(a - b) <= 0.25 * abs(b)


def test_central_binomial_correction_is_minus_one_eighth():
    m = asy.solve_lambda((2,))
    f = asy.correction_factor(SequenceId.sfam(2), m, 2000)
    assert abs(float(((f - 1) * 2000).mid) + 0.125) < 1e-3


def test_correction_factor_rejects_mismatched_model():
    with pytest.raises(ValueError):
        asy.correction_factor(SequenceId.sfam(2), asy.solve_lambda((3,)), 10)


@pytest.mark.parametrize("r", [(2,), (3,), (1, 1), (2, 2)])
def test_growth_rate_consistency(r):
    seq = SequenceId.sfam(*r)
    m = asy.solve_lambda(r)
    n = 200
    ratio = Fraction(int(value(seq, n + 1)), int(value(seq, n)))
    lo = m.mu * Fraction(n - 20, n)
    hi = m.mu * Fraction(n + 20, n)
    assert (IntervalValue.exact(ratio, 128) - lo).is_positive()
    assert (hi - IntervalValue.exact(ratio, 128)).is_positive()


def test_solver_reports_unreachable_tolerance():
    with pytest.raises(asy.SolverError):
        asy.solve_lambda((2,), tolerance=1e-300, schedule=(64,))


def test_solver_rejects_bad_vectors():
    with pytest.raises(ValueError):
        asy.solve_lambda((0, 1))


# --- tabulated expansions ----------------------------------------------------------

def _rel(spec, n, terms):
    return abs(asy.relative_error(spec.exact(n), asy.evaluate_expansion(spec, n, terms)))


def test_motzkin_expansion_accuracy():
    assert _rel(asy.MOTZKIN, 100, 4).hi < 1e-8


def test_schroder_expansion_accuracy():
    assert _rel(asy.SCHROEDER, 200, 2).hi < 1e-5


def test_trinomial_expansion_accuracy():
    assert _rel(asy.TRINOMIAL, 400, 1).hi < 1e-4


def test_sqrt2_trinomial_form_does_not_fit():
    # base 1 + sqrt 2 grows too slowly to describe the central trinomial numbers
    assert _rel(asy.TRINOMIAL_SQRT2_FORM, 50, 1).lo > 0.5


def test_trinomial_closed_form_against_binomial_sum():
    for n in (10, 37):
        assert int(asy.TRINOMIAL.exact(n)) == sum(comb(n, 2 * k) * comb(2 * k, k) for k in range(n // 2 + 1))


@pytest.mark.parametrize("spec", [asy.MOTZKIN, asy.SCHROEDER, asy.TRINOMIAL])
def test_more_terms_help(spec):
    errs = [float(_rel(spec, 150, k).hi) for k in range(len(spec.correction_coeffs) + 1)]
    assert errs == sorted(errs, reverse=True)


def test_expansion_rejects_too_many_terms():
    with pytest.raises(ValueError):
        asy.evaluate_expansion(asy.TRINOMIAL, 10, 2)


def test_quad_surd_arithmetic():
    a = asy.QuadSurd(3, 2)
    assert a * a == asy.QuadSurd(17, 12)
    assert str(a) == "3+2*sqrt(2)"
    assert asy.expansion_for("schroder") is asy.SCHROEDER
