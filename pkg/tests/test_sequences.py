from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest

from seqcert import _oracles as oracle
from seqcert.interval import IntervalValue
from seqcert.sequences import (ExactValue, Family, SequenceId, bernoulli_abs, euler_abs, motzkin,
                               parse_exponents, s_family, schroder, tangent_abs, trinomial, value,
                               window)

ORACLE_MAX = 60


@pytest.mark.parametrize("n, want", [(1, Fraction(1, 6)), (2, Fraction(1, 30)), (5, Fraction(5, 66))])
def test_bernoulli_examples(n, want):
    assert bernoulli_abs(n).as_fraction() == want


@pytest.mark.parametrize("n, want", [(1, 1), (2, 2), (3, 16)])
def test_tangent_examples(n, want):
    assert int(tangent_abs(n)) == want


@pytest.mark.parametrize("n, want", [(0, 1), (2, 5), (3, 61)])
def test_euler_examples(n, want):
    assert int(euler_abs(n)) == want


@pytest.mark.parametrize("r, n, want", [((2,), 3, 20), ((2, 2), 2, 73), ((1, 1), 3, 63)])
def test_s_family_examples(r, n, want):
    assert int(s_family(r, n)) == want


@pytest.mark.parametrize("n", range(0, 40))
def test_s_family_r1_is_power_of_two(n):
    assert int(s_family((1,), n)) == 2**n


@pytest.mark.parametrize("fn, cases", [
    (motzkin, [(0, 1), (4, 9), (10, 2188)]),
    (schroder, [(0, 1), (3, 22), (5, 394)]),
    (trinomial, [(0, 1), (3, 7), (6, 141)]),
])
def test_path_count_examples(fn, cases):
    for n, want in cases:
        assert int(fn(n)) == want


def test_window_examples():
    assert [int(v) for v in window(SequenceId(Family.MOTZKIN), 0, 3).values] == [1, 1, 2]
    assert [int(v) for v in window(SequenceId.sfam(3), 0, 3).values] == [1, 2, 10]
    w = window(SequenceId(Family.TANGENT_ABS_ODD), 1, 2)
    assert [int(v) for v in w.values] == [1, 2]
    assert w[2] == ExactValue(2) and list(w.indices()) == [1, 2]


# --- oracle equivalence --------------------------------------------------------

def test_bernoulli_matches_recurrence():
    b = oracle.bernoulli_signed(2 * ORACLE_MAX)
    for n in range(1, ORACLE_MAX + 1):
        assert bernoulli_abs(n).as_fraction() == abs(b[2 * n])
    assert all(b[k] == 0 for k in range(3, 2 * ORACLE_MAX, 2))


def test_tangent_matches_series():
    for n in range(1, ORACLE_MAX + 1):
        assert int(tangent_abs(n)) == oracle.tangent_from_series(n)


def test_euler_matches_recurrence_and_series():
    e = oracle.secant_signed(ORACLE_MAX)
    for n in range(ORACLE_MAX + 1):
        assert int(euler_abs(n)) == abs(e[n]) == oracle.secant_from_series(n)


def test_named_binomial_sums_match_recurrences():
    franel = oracle.franel_recurrence(ORACLE_MAX)
    delannoy = oracle.delannoy_recurrence(ORACLE_MAX)
    apery = oracle.apery_recurrence(ORACLE_MAX)
    for n in range(ORACLE_MAX + 1):
        assert int(s_family((2,), n)) == comb(2 * n, n)
        assert int(s_family((3,), n)) == franel[n]
        assert int(s_family((1, 1), n)) == delannoy[n]
        assert int(s_family((2, 2), n)) == apery[n]


def test_general_vector_matches_pascal_table():
    rows = oracle.pascal_rows(3 * 30)
    for r in [(2, 1, 1), (1, 0, 2), (3, 1)]:
        for n in range(31):
            assert int(s_family(r, n)) == oracle.s_family_pascal(r, n, rows)


def test_path_counts_match_dynamic_programs():
    for n in range(ORACLE_MAX + 1):
        assert int(motzkin(n)) == oracle.motzkin_paths(n)
        assert int(schroder(n)) == oracle.schroder_paths(n)
        assert int(trinomial(n)) == oracle.trinomial_expansion(n)


# --- invariants ------------------------------------------------------------------

def test_integrality_up_to_500():
    for n in range(0, 501, 7):
        for seq in (SequenceId(Family.SCHROEDER), SequenceId(Family.MOTZKIN), SequenceId(Family.EULER_ABS_EVEN)):
            assert value(seq, n).denominator == 1
    for n in range(1, 501, 7):
        assert tangent_abs(n).denominator == 1


def test_tangent_bernoulli_identity():
    # |T_{2n-1}| = 4^n (4^n - 1) |B_2n| / (2n)
    for n in range(1, 101):
        b = bernoulli_abs(n).as_fraction()
        assert Fraction(4**n * (4**n - 1), 2 * n) * b == int(tangent_abs(n))


def test_bernoulli_zeta_identity():
    # |B_2n| = 2 (2n)! zeta(2n) / (2 pi)^{2n}, checked against a 300-bit evaluation
    with mpmath.workprec(300):
        for n in range(1, 51):
            approx = 2 * factorial(2 * n) * mpmath.zeta(2 * n) / (2 * mpmath.pi) ** (2 * n)
            exact = bernoulli_abs(n).as_fraction()
            assert abs(approx / mpmath.mpf(exact.numerator) * exact.denominator - 1) < mpmath.mpf(2) ** -250


def test_euler_beta_identity():
    # |E_2n| = 4^{n+1} (2n)! beta(2n+1) / pi^{2n+1}, beta the Dirichlet beta function
    with mpmath.workprec(300):
        for n in range(0, 51):
            beta = mpmath.dirichlet(2 * n + 1, [0, 1, 0, -1])
            approx = mpmath.mpf(4) ** (n + 1) * factorial(2 * n) * beta / mpmath.pi ** (2 * n + 1)
            assert abs(approx / int(euler_abs(n)) - 1) < mpmath.mpf(2) ** -250


def test_values_are_deterministic():
    assert [value(SequenceId.sfam(2, 2), n) for n in range(20)] == [value(SequenceId.sfam(2, 2), n) for n in range(20)]


@pytest.mark.parametrize("bad", [(), (0,), (-1, 2), (0, 1)])
def test_invalid_exponents_rejected(bad):
    with pytest.raises(ValueError):
        SequenceId.sfam(*bad)


def test_parse_exponents():
    assert parse_exponents("2,2") == (2, 2)
    with pytest.raises(ValueError):
        parse_exponents("2,x")


def test_out_of_domain_index_rejected():
    with pytest.raises(ValueError):
        bernoulli_abs(0)
    with pytest.raises(ValueError):
        motzkin(-1)


def test_sequence_id_round_trips_through_tokens():
    seq = SequenceId.sfam(2, 2)
    assert str(seq) == "sfam(r=2,2)"
    assert SequenceId.parse("sfam", "r=2,2") == seq
    assert SequenceId.parse("motzkin", "") == SequenceId(Family.MOTZKIN)
