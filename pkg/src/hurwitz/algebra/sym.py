"""Symmetric polynomials in the elementary basis, with exact fitting.

An E-kind SparsePoly over arity m stores powers of e_1 .. e_m; the
weighted degree of a term gives e_k weight k, matching the x-degree a
symmetric function of m variables inherits from its arguments.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..errors import InconsistentSystem, NotSymmetric
from .poly import SparsePoly

__all__ = [
    "e_monomials_by_weight",
    "elementary_values",
    "e_monomial_expand",
    "to_e_basis",
    "fit_sym_e_poly",
    "weighted_degree",
]


def weighted_degree(beta: Sequence[int]) -> int:
    return sum((k + 1) * a for k, a in enumerate(beta))


def e_monomials_by_weight(m: int, wmax: int) -> List[tuple]:
    """All e-exponent tuples with weighted degree <= wmax, graded-lex order."""
    out: List[tuple] = []

    def rec(k: int, left: int, acc: list):
        if k == m:
            out.append(tuple(acc))
            return
        for a in range(left // (k + 1) + 1):
            rec(k + 1, left - a * (k + 1), acc + [a])

    rec(0, wmax, [])
    out.sort(key=lambda b: (weighted_degree(b), b))
    return out


@lru_cache(maxsize=None)
def _elementary_poly(k: int, m: int) -> tuple:
    """e_k in m variables as a tuple of 0/1 exponent vectors."""
    vecs = []

    def rec(start: int, need: int, acc: list):
        if not need:
            vecs.append(tuple(acc))
            return
        for i in range(start, m - need + 1):
            rec(i + 1, need - 1, acc + [0] * (i - len(acc)) + [1])

    if k == 0:
        return ((0,) * m,)
    rec(0, k, [])
    return tuple(v + (0,) * (m - len(v)) for v in vecs)


@lru_cache(maxsize=None)
def e_monomial_expand(beta: tuple, m: int) -> Mapping[tuple, int]:
    """Monomial expansion of prod_k e_k^(beta_k) over m variables."""
    acc: Dict[tuple, int] = {(0,) * m: 1}
    for k, a in enumerate(beta):
        for _ in range(a):
            nxt: Dict[tuple, int] = {}
            for e, c in acc.items():
                for v in _elementary_poly(k + 1, m):
                    ne = tuple(x + y for x, y in zip(e, v))
                    nxt[ne] = nxt.get(ne, 0) + c
            acc = nxt
    return acc


def to_e_basis(mono: Mapping[tuple, Fraction], m: int) -> SparsePoly:
    """Rewrite a symmetric monomial dict over m variables in the e-basis.

    Leading subtraction: the lex-greatest exponent lam of a symmetric
    polynomial is a partition, and prod e_k^(lam_k - lam_(k+1)) is the
    unique e-monomial with lex-leading term lam, coefficient one.
    """
    work: Dict[tuple, Fraction] = {e: c for e, c in mono.items() if c}
    out: Dict[tuple, Fraction] = {}
    while work:
        lam = max(work)
        if any(lam[i] < lam[i + 1] for i in range(m - 1)):
            raise NotSymmetric(f"lex-leading exponent {lam} is not a partition")
        c = work[lam]
        beta = tuple(
            lam[k] - (lam[k + 1] if k + 1 < m else 0) for k in range(m)
        )
        out[beta] = c
        for e, ec in e_monomial_expand(beta, m).items():
            v = work.get(e, 0) - c * ec
            if v:
                work[e] = v
            elif e in work:
                del work[e]
    return SparsePoly("E", m, out)


def elementary_values(alpha: Sequence[int], m: int) -> List[int]:
    """[e_1(alpha), ..., e_m(alpha)] for a tuple of part sizes."""
    e = [1] + [0] * m
    for a in alpha:
        for k in range(min(m, len(e) - 1), 0, -1):
            e[k] += a * e[k - 1]
    return e[1:]


def fit_sym_e_poly(
    evals: Iterable[Tuple[Sequence[int], Fraction]],
    m: int,
    total_degree: int,
) -> SparsePoly:
    """Solve for the e-polynomial of weighted degree <= total_degree that
    matches every (partition, value) sample exactly.

    Requires the system to pin down all coefficients; redundant samples
    must agree.  Raises InconsistentSystem otherwise.
    """
    monos = e_monomials_by_weight(m, total_degree)
    ncols = len(monos)
    rows: List[List[Fraction]] = []
    tags: List[tuple] = []
    for alpha, value in evals:
        ev = elementary_values(alpha, m)
        row = []
        for beta in monos:
            acc = Fraction(1)
            for k, a in enumerate(beta):
                if a:
                    acc *= Fraction(ev[k]) ** a
            row.append(acc)
        row.append(Fraction(value))
        rows.append(row)
        tags.append(tuple(alpha))

    pivot_of_col: Dict[int, int] = {}
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        tags[r], tags[sel] = tags[sel], tags[r]
        pr = rows[r]
        inv = 1 / pr[col]
        rows[r] = pr = [x * inv for x in pr]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivot_of_col[col] = r
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols]:
            raise InconsistentSystem(
                f"sample {tags[i]} disagrees with the fitted polynomial"
            )
    missing = [monos[c] for c in range(ncols) if c not in pivot_of_col]
    if missing:
        raise InconsistentSystem(
            f"samples leave {len(missing)} coefficients free, first {missing[0]}",
            underdetermined=True,
        )
    terms = {
        monos[c]: rows[pivot_of_col[c]][ncols]
        for c in range(ncols)
        if rows[pivot_of_col[c]][ncols]
    }
    return SparsePoly("E", m, terms)
