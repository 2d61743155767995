"""Differential operators on y-polynomials and the operator-basis decomposition.

With w = x e^w and y = 1/(1-w), the two derivations act monomially:

    x d/dx:  y^k -> k (y^(k+2) - y^(k+1))      (raises degree by 2)
    w d/dw:  y^k -> k (y^(k+1) - y^k)          (raises degree by 1)

Both rules hold for every integer k, negative included.

The decomposition half of this module inverts the triangular family

    P_j = (x d/dx)^j (y - 1)          degree 2j+1, leading (2j-1)!!
    Q_j = (w d/dw)(x d/dx)^(j-1)(y-1)  degree 2j,  j >= 1

Per variable these span all polynomials vanishing at y = 1, one basis
element per degree (odd degrees are P, even are Q; note Q_j = P_j / y).
A multivariate polynomial vanishing on every y_i = 1 hyperplane therefore
decomposes uniquely into products of P's and Q's; terms that are pure P
are images of monomials in the x_i d/dx_i applied to V_m = prod (y_i - 1),
which is exactly the shape the extracted symmetric forms take.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from ..errors import NonzeroRemainder, NotVanishing
from .poly import SparsePoly

__all__ = [
    "apply_xdx",
    "apply_wdw",
    "apply_sum_xdx",
    "diag_fold",
    "divide_ydiff",
    "exact_divide_diff",
    "OperatorBasisDecomp",
    "xdx_basis_convert",
    "reconstruct_decomp",
    "p_ladder",
]

Core = Dict[tuple, int]


# ----- core (integer) variants, used by the hot paths ---------------------

def core_apply_xdx(core: Core, var: int) -> Core:
    out: Core = {}
    for e, c in core.items():
        k = e[var]
        if not k:
            continue
        kc = k * c
        up2 = e[:var] + (k + 2,) + e[var + 1:]
        up1 = e[:var] + (k + 1,) + e[var + 1:]
        v = out.get(up2, 0) + kc
        if v:
            out[up2] = v
        elif up2 in out:
            del out[up2]
        v = out.get(up1, 0) - kc
        if v:
            out[up1] = v
        elif up1 in out:
            del out[up1]
    return out


def core_apply_wdw(core: Core, var: int) -> Core:
    out: Core = {}
    for e, c in core.items():
        k = e[var]
        if not k:
            continue
        kc = k * c
        up1 = e[:var] + (k + 1,) + e[var + 1:]
        v = out.get(up1, 0) + kc
        if v:
            out[up1] = v
        elif up1 in out:
            del out[up1]
        v = out.get(e, 0) - kc
        if v:
            out[e] = v
        elif e in out:
            del out[e]
    return out


def core_mul(a: Core, b: Core) -> Core:
    if len(a) > len(b):
        a, b = b, a
    out: Core = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


# ----- public operators ---------------------------------------------------

def _wrap(poly: SparsePoly, core_fn, var: int) -> SparsePoly:
    if poly.kind != "Y":
        raise ValueError("operator acts on Y polynomials")
    if not 0 <= var < poly.arity:
        raise IndexError("variable index out of range")
    out: dict = {}
    for e, c in poly.terms.items():
        k = e[var]
        if not k:
            continue
        for ne, mult in core_fn(e, k, var):
            v = out.get(ne, 0) + mult * c
            if v:
                out[ne] = v
            elif ne in out:
                del out[ne]
    return SparsePoly("Y", poly.arity, out)


def apply_xdx(poly: SparsePoly, var: int) -> SparsePoly:
    """x_var d/dx_var in y-coordinates."""
    def rule(e, k, v):
        return (
            (e[:v] + (k + 2,) + e[v + 1:], k),
            (e[:v] + (k + 1,) + e[v + 1:], -k),
        )
    return _wrap(poly, rule, var)


def apply_wdw(poly: SparsePoly, var: int) -> SparsePoly:
    """w_var d/dw_var in y-coordinates."""
    def rule(e, k, v):
        return (
            (e[:v] + (k + 1,) + e[v + 1:], k),
            (e, -k),
        )
    return _wrap(poly, rule, var)


def apply_sum_xdx(poly: SparsePoly) -> SparsePoly:
    out = SparsePoly.zero("Y", poly.arity)
    for i in range(poly.arity):
        out = out + apply_xdx(poly, i)
    return out


def diag_fold(poly: SparsePoly, keep: int, drop: int) -> SparsePoly:
    """Set y_drop = y_keep and remove the drop slot (arity falls by one)."""
    if keep == drop:
        raise ValueError("keep and drop must differ")
    out: dict = {}
    for e, c in poly.terms.items():
        k = e[keep] + e[drop]
        le = list(e)
        le[keep] = k
        del le[drop]
        ne = tuple(le)
        v = out.get(ne, 0) + c
        if v:
            out[ne] = v
        elif ne in out:
            del out[ne]
    return SparsePoly(poly.kind, poly.arity - 1, out)


# ----- exact division by (y_i - y_j) --------------------------------------

def core_divide_ydiff(core: Core, i: int, j: int) -> Core:
    """Divide by (y_i - y_j), exactly.

    Descending over the y_i exponent k, the level-k slice P_k of the
    working dividend gives the quotient slice at k-1, and y_j * P_k is
    pushed down one level.  Whatever remains at level zero is the
    remainder and must vanish.
    """
    buckets: dict = {}
    for e, c in core.items():
        buckets.setdefault(e[i], {})[e] = c
    if not buckets:
        return {}
    out: Core = {}
    for k in range(max(buckets), 0, -1):
        cur = buckets.pop(k, None)
        if not cur:
            continue
        lower = buckets.setdefault(k - 1, {})
        for e, c in cur.items():
            if not c:
                continue
            q = e[:i] + (k - 1,) + e[i + 1:]
            v = out.get(q, 0) + c
            if v:
                out[q] = v
            elif q in out:
                del out[q]
            r = list(q)
            r[j] += 1
            r = tuple(r)
            v = lower.get(r, 0) + c
            if v:
                lower[r] = v
            elif r in lower:
                del lower[r]
    left = buckets.get(0)
    if left and any(left.values()):
        bad = next(e for e, c in left.items() if c)
        raise NonzeroRemainder(f"division by y_{i+1} - y_{j+1} leaves remainder at {bad}")
    return out


def divide_ydiff(poly: SparsePoly, i: int, j: int) -> SparsePoly:
    """Exact quotient poly / (y_i - y_j)."""
    from .series import from_core, to_core  # local to avoid an import cycle

    core, den = to_core(poly.terms)
    return from_core(core_divide_ydiff(core, i, j), den, poly.kind, poly.arity)


def exact_divide_diff(p: SparsePoly, i: int, j: int) -> SparsePoly:
    """q with q (y_i - y_j) = p y_i y_j, the y-form of division by (w_i - w_j)."""
    if p.kind != "Y":
        raise ValueError("exact_divide_diff wants a Y polynomial")
    shifted: dict = {}
    for e, c in p.terms.items():
        le = list(e)
        le[i] += 1
        le[j] += 1
        shifted[tuple(le)] = c
    return divide_ydiff(SparsePoly("Y", p.arity, shifted), i, j)


# ----- operator basis -----------------------------------------------------

def p_ladder(jmax: int) -> Tuple[list, list]:
    """(P, Q) ladders as univariate integer dicts {degree: coeff}.

    P[j] = (x d/dx)^j (y-1), Q[j] = P[j] shifted down one degree (valid
    since w d/dw = (1/y) x d/dx on monomials); Q[0] is unused.
    """
    P = [{1: 1, 0: -1}]
    for _ in range(jmax):
        prev = P[-1]
        nxt: dict = {}
        for k, c in prev.items():
            if not k:
                continue
            nxt[k + 2] = nxt.get(k + 2, 0) + k * c
            nxt[k + 1] = nxt.get(k + 1, 0) - k * c
        P.append({k: c for k, c in nxt.items() if c})
    Q = [None]
    for j in range(1, jmax + 1):
        Q.append({k - 1: c for k, c in P[j].items()})
    return P, Q


@dataclass
class OperatorBasisDecomp:
    """Result of xdx_basis_convert.

    b_terms[j-tuple] is the coefficient of prod_i (x_i d/dx_i)^(j_i) V_m;
    w_residual lists terms carrying exactly one w d/dw factor as
    (variable, j-tuple, coefficient).
    """

    m: int
    b_terms: Dict[tuple, Fraction] = field(default_factory=dict)
    w_residual: List[tuple] = field(default_factory=list)


def xdx_basis_convert(p: SparsePoly, m: int) -> OperatorBasisDecomp:
    """Decompose p over the P/Q operator basis, variable by variable.

    Requires p to vanish at y_i = 1 for every i; inside each variable the
    reduction is triangular by degree, so the decomposition is unique and
    exact by construction.  Terms with two or more Q factors cannot occur
    for the polynomials this package produces and raise NotVanishing's
    sibling error path upstream; here they simply raise.
    """
    if p.kind != "Y":
        raise ValueError("xdx_basis_convert wants a Y polynomial")
    if p.arity != m:
        raise ValueError("arity mismatch")
    if any(v < 0 for v in p.min_exponents()):
        raise ValueError("Laurent input is outside the operator basis")
    dmax = max(p.per_var_degrees(), default=0)
    P, Q = p_ladder(dmax // 2 + 1)

    def basis(d: int) -> dict:
        return P[(d - 1) // 2] if d % 2 else Q[d // 2]

    # mixed keys: processed slots hold basis degree labels, untouched
    # slots still hold y exponents
    terms: Dict[tuple, Fraction] = dict(p.terms)
    for var in range(m):
        groups: dict = {}
        for e, c in terms.items():
            rest = e[:var] + e[var + 1:]
            groups.setdefault(rest, {})[e[var]] = c
        terms = {}
        for rest, g in groups.items():
            work = dict(g)
            labels: dict = {}
            for d in range(max(work), 0, -1):
                s = work.pop(d, None)
                if not s:
                    continue
                B = basis(d)
                gamma = s / B[d]
                labels[d] = gamma
                for deg, bc in B.items():
                    if deg == d:
                        continue
                    v = work.get(deg, 0) - gamma * bc
                    if v:
                        work[deg] = v
                    elif deg in work:
                        del work[deg]
            leftover = work.get(0)
            if leftover:
                raise NotVanishing(
                    f"input does not vanish at y_{var+1} = 1 (constant residue {leftover})"
                )
            for d, c in labels.items():
                terms[rest[:var] + (d,) + rest[var:]] = c

    decomp = OperatorBasisDecomp(m)
    for lab, c in terms.items():
        evens = [i for i, d in enumerate(lab) if d % 2 == 0]
        jt = tuple((d - 1) // 2 if d % 2 else d // 2 for d in lab)
        if not evens:
            decomp.b_terms[jt] = c
        elif len(evens) == 1:
            decomp.w_residual.append((evens[0], jt, c))
        else:
            raise NotVanishing(
                f"term {lab} carries {len(evens)} w d/dw factors; "
                "the single-residual decomposition does not apply"
            )
    decomp.w_residual.sort(key=lambda t: (t[0], t[1]))
    return decomp


def reconstruct_decomp(decomp: OperatorBasisDecomp) -> SparsePoly:
    """Expand a decomposition back to an explicit y-polynomial."""
    m = decomp.m
    jmax = 0
    for jt in decomp.b_terms:
        jmax = max(jmax, max(jt, default=0))
    for _, jt, _ in decomp.w_residual:
        jmax = max(jmax, max(jt, default=0))
    P, Q = p_ladder(jmax + 1)
    out = SparsePoly.zero("Y", m)

    def product(univariates) -> SparsePoly:
        acc = SparsePoly.const("Y", m, 1)
        for var, table in enumerate(univariates):
            factor = SparsePoly("Y", m, {
                (0,) * var + (k,) + (0,) * (m - var - 1): Fraction(c)
                for k, c in table.items()
            })
            acc = acc * factor
        return acc

    for jt, c in decomp.b_terms.items():
        out = out + product([P[j] for j in jt]).scale(c)
    for var, jt, c in decomp.w_residual:
        tables = [Q[j] if i == var else P[j] for i, j in enumerate(jt)]
        out = out + product(tables).scale(c)
    return out
