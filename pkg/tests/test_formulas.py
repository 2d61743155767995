"""Closed forms, embedded tables, recurrences, and the scaling chain."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hurwitz import formulas
from hurwitz.errors import BudgetExceeded
from hurwitz.formulas import (
    TABLE_M_MAX,
    a_sequence,
    appendix_table,
    f1_conjecture,
    f1_simple,
    f1_two,
    f_genus0,
    f_one_part,
    f_table,
    f_table_eval,
    hurwitz,
    mu0_simple,
    pg_mu1,
)
from hurwitz.oracle import c_count, mu_count
from hurwitz.partitions import Partition, partitions


def test_table_digest_is_current():
    assert formulas._compute_digest() == formulas._TABLE_DIGEST


def test_table_loads_for_all_genera():
    for g, mmax in TABLE_M_MAX.items():
        tab = appendix_table(g)
        assert len(tab.deltas) == mmax
        for m in range(1, mmax + 1):
            p = f_table(g, m)
            assert p.kind == "E" and p.arity == m
    with pytest.raises(BudgetExceeded):
        appendix_table(5)
    with pytest.raises(BudgetExceeded):
        f_table(1, 7)


def test_normalizing_denominators():
    assert appendix_table(1).d == 24
    assert appendix_table(2).d == 5760
    assert appendix_table(3).d == 2903040
    assert appendix_table(4).d == math.factorial(12) * 2 ** 5


def test_genus1_table_polynomials():
    e1 = {(1,): Fraction(1, 24), (0,): Fraction(-1, 24)}
    assert f_table(1, 1).terms == e1
    e2 = {
        (2, 0): Fraction(1, 24),
        (1, 0): Fraction(-1, 24),
        (0, 1): Fraction(-1, 24),
    }
    assert f_table(1, 2).terms == e2


def test_f_genus0():
    assert f_genus0(Partition.of([1])) == 1
    assert f_genus0(Partition.of([2, 1])) == Fraction(1, 3)
    assert f_genus0(Partition.of([1, 1, 1])) == 1
    assert f_genus0(Partition.of([2, 1, 1, 1])) == 5


def test_genus0_chain_vs_oracle():
    for parts in ([2, 1], [3, 1], [2, 2], [1, 1, 1], [2, 1, 1]):
        lam = Partition.of(parts)
        hc = hurwitz(lam, 0, f_genus0(lam))
        assert hc.c == c_count(lam, 0)


def test_one_part_values():
    assert f_one_part(2, 2) == Fraction(1, 480)
    assert f_one_part(1, 0) == 1
    # genus 0 single part reduces to n^(-2)
    for n in range(1, 8):
        assert f_one_part(n, 0) == Fraction(1, n * n)


def test_one_part_matches_tables():
    for g in range(1, 5):
        for n in range(1, 11):
            assert f_one_part(n, g) == f_table_eval(g, Partition.of([n]))


def test_genus1_family_consistency():
    # one formula per shape, all restrictions of the same polynomial
    for n in range(2, 9):
        assert f1_simple(n) == f1_conjecture(Partition.of([1] * n))
        for r in range(1, n):
            parts = sorted((n - r, r), reverse=True)
            assert f1_two(n, r) == f1_conjecture(Partition.of(parts))
    for m in range(1, 7):
        poly = f_table(1, m)
        for lam in partitions(m + 2):
            if lam.m == m:
                assert f1_conjecture(lam) == f_table_eval(1, lam)


def test_high_genus_two_part_vs_oracle():
    # pins the small genus-4 two-part table entries to raw counting
    hc = hurwitz(Partition.of([2, 1]), 4, f_table_eval(4, Partition.of([2, 1])))
    assert hc.c == 59048 == c_count(Partition.of([2, 1]), 4)
    hc = hurwitz(Partition.of([2, 2]), 4, f_table_eval(4, Partition.of([2, 2])))
    assert hc.c == 181395456 == c_count(Partition.of([2, 2]), 4)


def test_genus3_one_part_vs_oracle():
    lam = Partition.of([2])
    hc = hurwitz(lam, 3, f_one_part(2, 3))
    assert hc.c == c_count(lam, 3)


def test_hurwitz_chain_spot():
    hc = hurwitz(Partition.of([2, 1]), 1, Fraction(1, 6))
    assert hc.c == 80
    assert hc.mu == 40
    assert hc.f == Fraction(1, 6)


def test_hurwitz_rejects_non_count():
    with pytest.raises(ArithmeticError):
        hurwitz(Partition.of([2, 1]), 0, Fraction(1, 5))


def test_mu0_simple_values():
    assert mu0_simple(3) == 4
    assert mu0_simple(4) == 120
    assert mu0_simple(5) == 8400
    assert mu0_simple(6) == 1088640


def test_mu0_simple_vs_oracle():
    for n in range(1, 7):
        assert mu0_simple(n) == mu_count(Partition.of([1] * n), 0)


def test_pg_recurrence_matches_genus1_closed_form():
    pg = pg_mu1(9)
    for n in range(1, 10):
        if n == 1:
            assert pg[0] == 0
            continue
        hc = hurwitz(Partition.of([1] * n), 1, f1_simple(n))
        assert pg[n - 1] == hc.mu
    assert pg[1] == Fraction(1, 2)


def test_a_sequence_frozen_values():
    seq = a_sequence(12)
    assert seq[0] == 0
    assert seq[1:4] == [2, 24, 312]
    assert seq[4:7] == [4720, 82800, 1662024]
    assert seq[11] == 27069937855488


def test_a_sequence_routes_disagree_loudly(monkeypatch):
    monkeypatch.setattr(formulas, "f1_simple", lambda n: Fraction(1))
    with pytest.raises(ArithmeticError):
        a_sequence(4)


@given(st.integers(2, 30), st.integers(1, 29))
def test_f1_two_symmetric(n, r):
    if r >= n:
        r = n - 1
    assert f1_two(n, r) == f1_two(n, n - r)
