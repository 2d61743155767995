"""The PDE pipeline: seeds, assembly, solver, extraction, orchestration."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hurwitz.algebra.operators import apply_wdw
from hurwitz.algebra.poly import SparsePoly
from hurwitz.algebra.series import (
    compose_with_tree,
    expand_y_to_w,
    tree_coeffs,
)
from hurwitz.engine import (
    DEFAULT_BUDGETS,
    Engine,
    K11,
    PsiRep,
    RhsRep,
    assemble_K,
    compute_psi,
    per_var_bound,
    psi0_base,
    solve_pde,
    theta_symmetrize,
    total_bound,
    xdx_psi01,
    xdx_psi02,
)
from hurwitz.errors import BudgetExceeded, ResidualNonzero
from hurwitz.formulas import f_table
from hurwitz.oracle import c_count
from hurwitz.partitions import Partition

PSI11 = SparsePoly("Y", 1, {
    (3,): Fraction(1, 24),
    (2,): Fraction(-1, 24),
    (1,): Fraction(-1, 24),
    (0,): Fraction(1, 24),
})


def test_psi0_base_three_variables():
    v3 = psi0_base(3).poly
    expect = SparsePoly.const("Y", 3, 1)
    one = SparsePoly.const("Y", 3, 1)
    for i in range(3):
        expect = expect * (SparsePoly.variable("Y", 3, i) - one)
    assert v3 == expect
    with pytest.raises(ValueError):
        psi0_base(2)


def test_genus0_extraction_is_power_of_e1():
    eng = Engine()
    for m in (3, 4, 5):
        fr = eng.f_result(m, 0)
        assert fr.f_e == SparsePoly("E", m, {
            (m - 3,) + (0,) * (m - 1): Fraction(1)
        })
        assert fr.w_residual == ()


def test_one_variable_seed_is_the_tree_function():
    seed = xdx_psi01()
    y = SparsePoly.variable("Y", 1, 0)
    assert y * seed == y - SparsePoly.const("Y", 1, 1)
    # numeric: at y = 1/(1-w) the seed takes the value w
    for w in (Fraction(1, 3), Fraction(-2, 5), Fraction(7, 2)):
        yv = 1 / (1 - w)
        assert seed.evaluate([yv]) == w


def test_one_variable_counts_close_the_loop():
    # [x^n] of the seed must be n^(n-1)/n!, which pins c_0((n)) = n^(n-2)
    for n in range(1, 8):
        assert c_count(Partition.of([n]), 0) == n ** max(n - 2, 0)


def _xjet_of_y_poly(p: SparsePoly, order: int) -> dict:
    wjet = expand_y_to_w(p, order, 2 * order, allow_truncation=True)
    xjet = compose_with_tree(wjet, order)
    return dict(xjet.base.terms)


def _trunc_mul(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = (e1[0] + e2[0], e1[1] + e2[1])
            if e[0] + e[1] > order:
                continue
            v = out.get(e, Fraction(0)) + c1 * c2
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


def test_two_variable_seed_against_raw_counts():
    """The rational kernel num/(y1-y2) - x2/(x1-x2) holds at jet level.

    Multiply through by (x1 - x2): the left side becomes a genuine
    bivariate power series built from the divided difference
    (y1-y2)/(x1-x2), and the right side has coefficients read off raw
    transitive counts through the coefficient normalization.
    """
    order = 6
    pair = xdx_psi02()
    num_jet = _xjet_of_y_poly(pair.num, order)

    # (y1-y2)/(x1-x2) = sum_n (n^n/n!) sum_{i+j=n-1} x1^i x2^j
    w = tree_coeffs(order + 1)
    dd = {}
    for n in range(1, order + 2):
        yc = Fraction(n ** n, math.factorial(n))
        for i in range(n):
            if i <= order and n - 1 - i <= order and n - 1 <= order:
                dd[(i, n - 1 - i)] = yc
    assert dd[(0, 0)] == 1  # unit, so the jet inverse below is exact

    inv = {(0, 0): Fraction(1)}
    for s in range(1, order + 1):
        for a in range(s + 1):
            e = (a, s - a)
            acc = Fraction(0)
            for (i, j), c in dd.items():
                if (i, j) != (0, 0) and i <= a and j <= s - a:
                    acc -= c * inv.get((a - i, s - a - j), Fraction(0))
            if acc:
                inv[e] = acc

    lhs = _trunc_mul(num_jet, inv, order)
    # subtract the pure-x remainder x2/(x1-x2) * (x1-x2) = x2
    x2 = (pair.x_num[0], pair.x_num[1])
    lhs[(1, 0)] = lhs.get((1, 0), Fraction(0)) + x2[0]
    lhs[(0, 1)] = lhs.get((0, 1), Fraction(0)) + x2[1]

    # right side: (x1-x2) times the first-slot derivative series, whose
    # [x1^a x2^b] is a * c_0/(j! a b) = c_0/((a+b)! b)
    def gc(a: int, b: int) -> Fraction:
        if a < 1 or b < 1:
            return Fraction(0)
        lam = Partition.of(sorted((a, b), reverse=True))
        return Fraction(c_count(lam, 0), math.factorial(a + b) * b)

    for a in range(order + 1):
        for b in range(order + 1 - a):
            want = gc(a - 1, b) - gc(a, b - 1)
            assert lhs.get((a, b), Fraction(0)) == want

    # the product by (x1-x2) forces diagonal cancellation
    for s in range(order + 1):
        assert sum(lhs.get((a, s - a), Fraction(0)) for a in range(s + 1)) == 0


def test_theta_placements():
    # m=3, block size 1: all ordered pairs (r, s), r != s
    f = SparsePoly.monomial("Y", (1, 2, 0), 1)
    got = theta_symmetrize(f, 1, 3)
    expect: dict = {}
    for r in range(3):
        for s in range(3):
            if r == s:
                continue
            e = [0, 0, 0]
            e[r] += 1
            e[s] += 2
            expect[tuple(e)] = expect.get(tuple(e), 0) + Fraction(1)
    assert got == SparsePoly("Y", 3, expect)
    # placement count: m * C(m-1, i)
    ones = SparsePoly.const("Y", 4, 1)
    assert theta_symmetrize(ones, 2, 4) == SparsePoly.const("Y", 4, 4 * 3)


def test_psi11_value_and_equation():
    psi = compute_psi(1, 1)
    assert psi.poly == PSI11
    assert psi.degree_cert == 3
    # independent re-derivation of the hard-coded right side:
    # (w d/dw + 1) Psi must reproduce it exactly
    assert apply_wdw(psi.poly, 0) + psi.poly == K11


def test_cells_satisfy_their_equation():
    eng = Engine()
    for m, g in ((2, 1), (3, 1), (1, 2), (2, 2)):
        psi = eng.psi(m, g)
        K = assemble_K(m, g, {k: eng.psi(*k) for k in eng.computed_cells()})
        c = m + 2 * g - 2
        lhs = SparsePoly.zero("Y", m)
        for var in range(m):
            lhs = lhs + apply_wdw(psi.poly, var)
        lhs = lhs + psi.poly.scale(c)
        assert lhs == K.poly


def test_degree_certificates():
    eng = Engine()
    p21 = eng.psi(2, 1)
    assert p21.degree_cert == total_bound(2, 1) == 6
    assert p21.poly.per_var_degrees() == (5, 5)
    assert per_var_bound(2, 1) == 5
    p12 = eng.psi(1, 2)
    assert p12.poly.per_var_degrees() == (per_var_bound(1, 2),)


def test_f_extraction_matches_table():
    eng = Engine()
    assert eng.f_result(2, 1).f_e == f_table(1, 2)
    assert eng.f_result(1, 2).f_e == f_table(2, 1)


def symq():
    exps = st.tuples(st.integers(0, 2), st.integers(0, 2))
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(
        lambda f: f != 0
    )
    return st.dictionaries(exps, coeffs, max_size=4).map(
        lambda d: SparsePoly("Y", 2, d)
    )


@given(symq())
@settings(deadline=None, max_examples=25)
def test_solver_inverts_the_operator(q):
    # fabricate a symmetric target that vanishes at y_i = 1, apply the
    # operator, and demand the solver return exactly the target
    one = SparsePoly.const("Y", 2, 1)
    van = (SparsePoly.variable("Y", 2, 0) - one) * (SparsePoly.variable("Y", 2, 1) - one)
    target = (q + q.permute([1, 0])) * van
    c = 2  # cell (2, 1)
    rhs = target.scale(c)
    for var in range(2):
        rhs = rhs + apply_wdw(target, var)
    got = solve_pde(RhsRep(2, 1, rhs))
    assert got.poly == target


def test_solver_rejects_unreachable_rhs():
    K = SparsePoly("Y", 1, {(12,): Fraction(1), (0,): Fraction(-1)})
    with pytest.raises(ResidualNonzero):
        solve_pde(RhsRep(1, 1, K))


def test_budget_guard_reports_progress():
    eng = Engine(budgets={1: 2})
    eng.f_result(2, 1)
    with pytest.raises(BudgetExceeded) as ei:
        eng.f_result(3, 1)
    assert "(2, 1)" in str(ei.value)
    with pytest.raises(BudgetExceeded):
        eng.cell(2, 0)  # no genus-0 cell below three variables


def test_cell_pulls_dependencies():
    eng = Engine()
    eng.f_result(2, 2)
    got = set(eng.computed_cells())
    assert {(2, 2), (3, 1), (1, 2), (2, 1), (1, 1), (3, 0)} <= got


def test_cache_roundtrip(tmp_path):
    first = Engine(cache_dir=str(tmp_path))
    rep = first.psi(2, 1)
    path = tmp_path / "psi_m2_g1.json"
    assert path.is_file()

    second = Engine(cache_dir=str(tmp_path))
    again = second.psi(2, 1)
    assert again.poly == rep.poly
    assert second.f_result(2, 1).f_e == first.f_result(2, 1).f_e


def test_cache_ignores_foreign_versions(tmp_path):
    eng = Engine(cache_dir=str(tmp_path))
    eng.psi(1, 1)
    path = tmp_path / "psi_m1_g1.json"
    path.write_text(path.read_text().replace('"version":1', '"version":99'))
    fresh = Engine(cache_dir=str(tmp_path))
    assert fresh.psi(1, 1).poly == PSI11


def test_cache_ignores_corrupt_files(tmp_path):
    (tmp_path / "psi_m1_g1.json").write_text("not json")
    eng = Engine(cache_dir=str(tmp_path))
    assert eng.psi(1, 1).poly == PSI11
