"""Truncated series, the tree function, and exact jet transforms.

The coordinate chain is x -> w -> y:

    w = x e^w                 (tree function, [x^n]w = n^(n-1)/n!)
    y = 1/(1 - w),  so  y - 1 = w/(1 - w)

Per variable, (y-1)^l = sum_{j >= l} C(j-1, l-1) w^j.  That matrix is
unitriangular, so converting between y-polynomials and w-jets needs no
divisions and inverts exactly on any downward-closed exponent region
(a per-variable cap together with a total-degree cap).  This is what
makes the jet fits in the solver trustworthy: coefficients recovered
inside the region are the true ones unconditionally.

Heavy transforms run on an integer core (dict of int coefficients plus a
single shared denominator); Fractions appear at the public boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from ..errors import FitError
from .poly import SparsePoly

__all__ = [
    "TruncSeries",
    "tree_series",
    "tree_coeffs",
    "w_power_x_table",
    "expand_y_to_w",
    "compose_with_tree",
    "fit_y_poly",
    "x_coefficient",
]

Core = Dict[tuple, int]


# ----- truncated series ---------------------------------------------------

@dataclass(frozen=True)
class TruncSeries:
    """A jet: polynomial data valid only inside explicit caps.

    Exponents absent from `base` are zero inside the caps and unknown
    outside them.
    """

    base: SparsePoly
    per_var_cap: int
    total_cap: int

    def __post_init__(self):
        for e in self.base.terms:
            if any(k < 0 or k > self.per_var_cap for k in e) or sum(e) > self.total_cap:
                raise ValueError(f"stored exponent {e} violates the caps")

    @property
    def kind(self) -> str:
        return self.base.kind

    @property
    def arity(self) -> int:
        return self.base.arity

    def coeff(self, exps) -> Fraction:
        exps = tuple(exps)
        if any(k > self.per_var_cap for k in exps) or sum(exps) > self.total_cap:
            raise KeyError(f"{exps} lies outside the caps of this jet")
        return self.base.terms.get(exps, Fraction(0))


def tree_series(order: int) -> TruncSeries:
    """The tree function w(x) as a univariate x-jet up to x^order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    terms = {(n,): Fraction(n ** (n - 1), math.factorial(n)) for n in range(1, order + 1)}
    return TruncSeries(SparsePoly("X", 1, terms), order, order)


def tree_coeffs(nmax: int) -> list:
    """[x^n] w for n = 0..nmax."""
    out = [Fraction(0)]
    for n in range(1, nmax + 1):
        out.append(Fraction(n ** (n - 1), math.factorial(n)))
    return out


# ----- integer core plumbing ---------------------------------------------

def to_core(terms: Mapping[tuple, Fraction]) -> Tuple[Core, int]:
    """Clear denominators: return (int terms, common denominator)."""
    den = 1
    for c in terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    core = {e: int(c * den) for e, c in terms.items()}
    return core, den


def from_core(core: Core, den: int, kind: str, arity: int) -> SparsePoly:
    return SparsePoly(kind, arity, {e: Fraction(c, den) for e, c in core.items() if c})


def _groups_by_var(core: Core, var: int):
    """Split off one variable: rest-tuple -> {exponent_of_var: coeff}."""
    groups: dict = {}
    for e, c in core.items():
        rest = e[:var] + e[var + 1:]
        g = groups.get(rest)
        if g is None:
            groups[rest] = {e[var]: c}
        else:
            g[e[var]] = g.get(e[var], 0) + c
    return groups


def _ungroup(groups, var: int) -> Core:
    out: Core = {}
    for rest, g in groups.items():
        head, tail = rest[:var], rest[var:]
        for k, c in g.items():
            if c:
                out[head + (k,) + tail] = c
    return out


# ----- per-variable triangular passes ------------------------------------

def core_y_to_u(core: Core, arity: int) -> Core:
    """Rewrite y-monomials in u = y - 1.  Exact and degree-preserving."""
    comb = math.comb
    for var in range(arity):
        groups = _groups_by_var(core, var)
        for rest, g in groups.items():
            out: dict = {}
            for k, c in g.items():
                if k < 0:
                    raise ValueError("negative y exponent has no u-polynomial form")
                for l in range(k + 1):
                    out[l] = out.get(l, 0) + comb(k, l) * c
            groups[rest] = out
        core = _ungroup(groups, var)
    return core


def core_u_to_y(core: Core, arity: int) -> Core:
    """Inverse of core_y_to_u: expand u^l = (y - 1)^l."""
    comb = math.comb
    for var in range(arity):
        groups = _groups_by_var(core, var)
        for rest, g in groups.items():
            out: dict = {}
            for l, c in g.items():
                sign = 1
                for k in range(l, -1, -1):
                    out[k] = out.get(k, 0) + sign * comb(l, k) * c
                    sign = -sign
            groups[rest] = out
        core = _ungroup(groups, var)
    return core


def core_u_to_w_jet(core: Core, arity: int, per_var: int, total: int) -> Core:
    """w-jet of a u-polynomial on {e_i <= per_var, |e| <= total}.

    The per-variable map u^l -> sum_{j >= l} C(j-1, l-1) w^j only raises
    exponents, so truncating during the sweep loses nothing inside the
    region.
    """
    comb = math.comb
    for var in range(arity):
        groups = _groups_by_var(core, var)
        for rest, g in groups.items():
            jcap = min(per_var, total - sum(rest))
            out: dict = {}
            for l, c in g.items():
                if l > jcap:
                    continue
                if l == 0:
                    out[0] = out.get(0, 0) + c
                    continue
                for j in range(l, jcap + 1):
                    out[j] = out.get(j, 0) + comb(j - 1, l - 1) * c
            groups[rest] = out
        core = _ungroup(groups, var)
    return core


def core_w_jet_to_u(core: Core, arity: int, per_var: int, total: int) -> Core:
    """Invert core_u_to_w_jet on the same region.

    Per variable, ascending exponent:
        c_j = b_j - sum_{1 <= l < j} C(j-1, l-1) c_l
    Division-free, so the integer core stays integral.
    """
    comb = math.comb
    for var in range(arity):
        groups = _groups_by_var(core, var)
        for rest, g in groups.items():
            jcap = min(per_var, total - sum(rest))
            c_out: dict = {}
            if g.get(0):
                c_out[0] = g[0]
            for j in range(1, jcap + 1):
                v = g.get(j, 0)
                for l in range(1, j):
                    cl = c_out.get(l)
                    if cl:
                        v -= comb(j - 1, l - 1) * cl
                if v:
                    c_out[j] = v
            groups[rest] = c_out
        core = _ungroup(groups, var)
    return core


# ----- public conversions -------------------------------------------------

def expand_y_to_w(
    p: SparsePoly,
    per_var_cap: int,
    total_cap: int | None = None,
    *,
    allow_truncation: bool = False,
) -> TruncSeries:
    """w-jet of a polynomial in y.

    By default the cap must dominate the per-variable degree of p, so the
    jet determines p (see fit_y_poly).  The solver passes
    allow_truncation=True to take deliberately partial jets on a
    downward-closed region.
    """
    if p.kind != "Y":
        raise ValueError("expand_y_to_w wants a Y polynomial")
    if any(v < 0 for v in p.min_exponents()):
        raise ValueError("Laurent input cannot be expanded to a w-jet")
    if not allow_truncation and any(d > per_var_cap for d in p.per_var_degrees()):
        raise ValueError(
            f"per-variable cap {per_var_cap} is below the degree of the input; "
            "a fit from this jet would be underdetermined"
        )
    if total_cap is None:
        total_cap = per_var_cap * p.arity
    core, den = to_core(p.terms)
    core = core_y_to_u(core, p.arity)
    core = core_u_to_w_jet(core, p.arity, per_var_cap, total_cap)
    return TruncSeries(from_core(core, den, "W", p.arity), per_var_cap, total_cap)


def fit_y_poly(s: TruncSeries, m: int, degree_bound: int, *, verify: bool = True) -> SparsePoly:
    """The y-polynomial of per-variable degree <= degree_bound matching a w-jet.

    Inversion runs on the downward-closed region {e_i <= degree_bound,
    |e| <= s.total_cap}; the recovered coefficients there are exact.  With
    verify=True the candidate is re-expanded and compared against every
    stored jet entry, and the first mismatch raises FitError: that is the
    signature of a degree bound that was too small.
    """
    if s.kind != "W":
        raise ValueError("fit_y_poly wants a W jet")
    if s.arity != m:
        raise ValueError("arity mismatch")
    if s.per_var_cap < degree_bound:
        raise ValueError("jet cap below the requested degree bound")
    core, den = to_core(s.base.terms)
    fit_total = s.total_cap
    ucore = core_w_jet_to_u(core, m, degree_bound, fit_total)
    ycore = core_u_to_y(ucore, m)
    candidate = from_core(ycore, den, "Y", m)
    if verify:
        back = expand_y_to_w(candidate, s.per_var_cap, s.total_cap, allow_truncation=True)
        keys = set(back.base.terms) | set(s.base.terms)
        for e in sorted(keys, key=lambda t: (sum(t), t)):
            if back.base.terms.get(e, 0) != s.base.terms.get(e, 0):
                raise FitError(
                    f"jet cannot be matched by a y-polynomial of per-variable "
                    f"degree <= {degree_bound}; first mismatch at w-monomial {e}",
                    monomial=e,
                )
    return candidate


# ----- x-coordinates ------------------------------------------------------

def w_power_x_table(dmax: int, amax: int) -> list:
    """table[d][a] = [x^a] w(x)^d."""
    one = [Fraction(1)] + [Fraction(0)] * amax
    w1 = tree_coeffs(amax)
    table = [one]
    prev = one
    for _ in range(dmax):
        cur = [Fraction(0)] * (amax + 1)
        for a in range(amax + 1):
            pa = prev[a]
            if pa == 0:
                continue
            for b in range(1, amax - a + 1):
                cur[a + b] += pa * w1[b]
        table.append(cur)
        prev = cur
    return table


def compose_with_tree(s: TruncSeries, order: int) -> TruncSeries:
    """Substitute w_i = w(x_i) into a w-jet; result is an x-jet to x^order.

    [x^a] w^d vanishes for d > a, so the substitution needs w-data only up
    to order; the jet must carry at least that much.
    """
    if s.kind != "W":
        raise ValueError("compose_with_tree wants a W jet")
    if s.per_var_cap < order or s.total_cap < order:
        raise ValueError("jet caps too small for the requested x order")
    table = w_power_x_table(order, order)
    terms: dict = dict(s.base.terms)
    arity = s.arity
    for var in range(arity):
        out: dict = {}
        for e, c in terms.items():
            d = e[var]
            if d > order:
                continue
            acap = order - (sum(e) - d)
            row = table[d]
            for a in range(d, min(order, acap) + 1):
                t = row[a]
                if t == 0:
                    continue
                ne = e[:var] + (a,) + e[var + 1:]
                v = out.get(ne, 0) + c * t
                if v:
                    out[ne] = v
                elif ne in out:
                    del out[ne]
        terms = out
    return TruncSeries(SparsePoly("X", arity, terms), order, order)


def x_coefficient(jet: TruncSeries, alpha, table=None) -> Fraction:
    """[x^alpha] of the function behind a w-jet.

    Needs the jet to cover the box {e <= alpha componentwise}; beyond it
    nothing contributes since [x^a] w^d = 0 for d > a.
    """
    if jet.kind != "W":
        raise ValueError("x_coefficient wants a W jet")
    alpha = tuple(alpha)
    if len(alpha) != jet.arity:
        raise ValueError("alpha length must match jet arity")
    if any(a > jet.per_var_cap for a in alpha) or sum(alpha) > jet.total_cap:
        raise ValueError("jet caps too small for this x-coefficient")
    if table is None:
        table = w_power_x_table(max(alpha), max(alpha))
    total = Fraction(0)
    for e, c in jet.base.terms.items():
        if any(d > a for d, a in zip(e, alpha)):
            continue
        term = c
        for d, a in zip(e, alpha):
            term *= table[d][a]
            if term == 0:
                break
        total += term
    return total
