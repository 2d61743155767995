"""The cut-and-join pipeline: assemble K, solve the scaled equation,
extract the symmetric polynomial.

Every cell (m, g) with g >= 1 satisfies

    (sum_i w_i d/dw_i + m + 2g - 2) Psi = K

where K collects four kinds of lower-order data: a diagonal limit of the
cell one genus down with one extra variable (T1), a two-variable merge
with an exact division by y_r - y_s (T2), and symmetrized products
pairing a genus-0 cell (T3) or a positive-genus split (T4) against the
rest.  The scaling substitution w -> t w turns the equation into a
per-monomial division, so the solve is: take a w-jet of K on a region
known to contain the answer, divide each w^beta by |beta| + m + 2g - 2,
lift back to a y-polynomial, and verify the equation exactly.  The
verification step, not the degree bookkeeping, is what certifies the
result.

Genus 0 cells come from the closed form (sum x_i d/dx_i)^(m-3) V_m and
never touch the solver.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple

from .algebra.operators import (
    apply_xdx,
    core_apply_xdx,
    diag_fold,
    divide_ydiff,
    xdx_basis_convert,
)
from .algebra.poly import SparsePoly
from .algebra.series import (
    core_u_to_w_jet,
    core_u_to_y,
    core_w_jet_to_u,
    core_y_to_u,
    expand_y_to_w,
    from_core,
    to_core,
    x_coefficient,
    w_power_x_table,
)
from .algebra.sym import fit_sym_e_poly, to_e_basis, weighted_degree
from .errors import (
    BudgetExceeded,
    InconsistentSystem,
    ResidualNonzero,
    RouteDisagreement,
)
from .partitions import Partition, partitions_upto_length

__all__ = [
    "PsiRep",
    "RhsRep",
    "FResult",
    "RationalPair",
    "psi0_base",
    "xdx_psi01",
    "xdx_psi02",
    "theta_symmetrize",
    "assemble_K",
    "solve_pde",
    "extract_f",
    "Engine",
    "compute_psi",
    "default_engine",
    "DEFAULT_BUDGETS",
    "per_var_bound",
]

DEFAULT_BUDGETS = {0: 8, 1: 6, 2: 4, 3: 3, 4: 2}
CACHE_VERSION = 1


def per_var_bound(m: int, g: int) -> int:
    """Per-variable y-degree bound for a positive-genus cell."""
    return 2 * m + 6 * g - 5


def total_bound(m: int, g: int) -> int:
    """Total y-degree bound: m more than the top per-variable excess."""
    if g == 0:
        return 3 * m - 6
    return 3 * m + 6 * g - 6


@dataclass(frozen=True)
class PsiRep:
    m: int
    g: int
    poly: SparsePoly
    degree_cert: int  # attained total y-degree


@dataclass(frozen=True)
class RhsRep:
    m: int
    g: int
    poly: SparsePoly


@dataclass(frozen=True)
class FResult:
    m: int
    g: int
    f_e: SparsePoly
    w_residual: Tuple[tuple, ...]  # (variable, j-tuple, coefficient)
    weighted_degree: int


@dataclass(frozen=True)
class RationalPair:
    """A y-rational kernel num/(y1 - y2) plus a pure-x remainder
    x_num/(x1 - x2); the x remainder cancels pairwise during assembly."""
    num: SparsePoly
    x_num: Tuple[int, int]  # coefficients of (x1, x2) in the numerator


# ----- base cells ---------------------------------------------------------

def psi0_base(m: int) -> PsiRep:
    """Genus 0: (sum_i x_i d/dx_i)^(m-3) applied to prod (y_i - 1)."""
    if m < 3:
        raise ValueError("genus-0 cells start at three variables")
    core: dict = {}
    for bits in range(1 << m):
        e = tuple((bits >> i) & 1 for i in range(m))
        core[e] = (-1) ** (m - sum(e))
    for _ in range(m - 3):
        acc: dict = {}
        for var in range(m):
            for e, c in core_apply_xdx(core, var).items():
                v = acc.get(e, 0) + c
                if v:
                    acc[e] = v
                elif e in acc:
                    del acc[e]
        core = acc
    poly = from_core(core, 1, "Y", m)
    return PsiRep(m, 0, poly, poly.total_degree() or 0)


def xdx_psi01() -> SparsePoly:
    """First derivative of the one-variable genus-0 cell: w1 = 1 - 1/y1."""
    return SparsePoly("Y", 1, {(0,): Fraction(1), (-1,): Fraction(-1)})


def xdx_psi02() -> RationalPair:
    """First derivative of the two-variable genus-0 cell:
    y1^2 (y2 - 1)/(y1 - y2) - x2/(x1 - x2)."""
    num = SparsePoly("Y", 2, {(2, 1): Fraction(1), (2, 0): Fraction(-1)})
    return RationalPair(num, (0, -1))


# ----- assembly -----------------------------------------------------------

def _acc_poly(acc: dict, poly: SparsePoly, factor: Fraction = Fraction(1)):
    for e, c in poly.terms.items():
        v = acc.get(e, 0) + factor * c
        if v:
            acc[e] = v
        elif e in acc:
            del acc[e]


def theta_symmetrize(f: SparsePoly, i: int, m: int) -> SparsePoly:
    """Sum f over all placements (r; S; T) with |S| = i, S and T sorted.

    f's slots are read as (special, S block, T block); it must already be
    symmetric inside each block for the sum to be placement-independent.
    """
    if f.arity != m:
        raise ValueError("arity mismatch")
    if not 0 <= i <= m - 1:
        raise ValueError("block size out of range")
    acc: dict = {}
    for r in range(m):
        rest = [v for v in range(m) if v != r]
        for S in combinations(rest, i):
            sset = set(S)
            perm = [r] + list(S) + [v for v in rest if v not in sset]
            _acc_poly(acc, f.permute(perm))
    return SparsePoly("Y", m, acc)


K11 = SparsePoly(
    "Y", 1, {(4,): Fraction(1, 8), (3,): Fraction(-1, 6), (0,): Fraction(1, 24)}
)


def _pair_product(a: SparsePoly, b: SparsePoly, m: int) -> SparsePoly:
    """Embed two first-slot-differentiated cells sharing the special
    variable and multiply: slots (0; 1..k-1; k..m-1)."""
    k = a.arity
    ae = a.embed(m, [0] + list(range(1, k)))
    be = b.embed(m, [0] + list(range(k, m)))
    return ae * be


def assemble_K(m: int, g: int, psi_cache: Mapping[Tuple[int, int], PsiRep]) -> RhsRep:
    """Right-hand side for cell (m, g), g >= 1, from lower cells."""
    if g < 1:
        raise ValueError("assembly applies to positive genus")
    if (m, g) == (1, 1):
        return RhsRep(1, 1, K11)

    def cell(mm: int, gg: int) -> SparsePoly:
        try:
            return psi_cache[(mm, gg)].poly
        except KeyError:
            raise BudgetExceeded(f"assembly of ({m},{g}) needs cell ({mm},{gg})")

    half = Fraction(1, 2)
    acc: dict = {}

    # T1: two derivatives of the (m+1, g-1) cell, then diagonal y_{m+1} -> y_i
    src = cell(m + 1, g - 1)
    folded = diag_fold(apply_xdx(apply_xdx(src, 0), m), 0, m)
    _acc_poly(acc, theta_symmetrize(folded, 0, m), half)

    # T2: merge two variables through the exact-division kernel
    if m >= 2:
        xg = apply_xdx(cell(m - 1, g), 0)
        gr = xg.embed(m, [0] + list(range(2, m)))
        gs = xg.embed(m, [1] + list(range(2, m)))
        y_r = SparsePoly.variable("Y", m, 0)
        y_s = SparsePoly.variable("Y", m, 1)
        one = SparsePoly.const("Y", m, Fraction(1))
        num = (y_s - one) * y_r * y_r * gr - (y_r - one) * y_s * y_s * gs
        f01 = divide_ydiff(num, 0, 1)
        for r in range(m):
            for s in range(r + 1, m):
                tail = [v for v in range(m) if v != r and v != s]
                _acc_poly(acc, f01.permute([r, s] + tail))

    # T3: genus-0 factor times the rest, all variable splits
    for k in range(3, m + 1):
        a = apply_xdx(cell(k, 0), 0)
        b = apply_xdx(cell(m - k + 1, g), 0)
        _acc_poly(acc, theta_symmetrize(_pair_product(a, b, m), k - 1, m))

    # T4: positive-genus splits, halved for the double count
    for ga in range(1, g):
        for k in range(1, m + 1):
            a = apply_xdx(cell(k, ga), 0)
            b = apply_xdx(cell(m - k + 1, g - ga), 0)
            _acc_poly(acc, theta_symmetrize(_pair_product(a, b, m), k - 1, m), half)

    poly = SparsePoly("Y", m, acc)
    if not poly.is_symmetric():
        raise ArithmeticError(f"assembled K for ({m},{g}) is not symmetric")
    return RhsRep(m, g, poly)


# ----- solver -------------------------------------------------------------

def _integral_solve(kpoly: SparsePoly, c: int, pv: int, tot: int) -> SparsePoly:
    """Solve (sum w d/dw + c) Psi = K for the jet region
    {per-variable <= pv, total <= tot}; exact on that region."""
    m = kpoly.arity
    core, den = to_core(kpoly.terms)
    core = core_y_to_u(core, m)
    jet = core_u_to_w_jet(core, m, pv, tot)
    scale = math.lcm(*range(c, tot + c + 1))
    jet = {e: v * (scale // (sum(e) + c)) for e, v in jet.items()}
    ucore = core_w_jet_to_u(jet, m, pv, tot)
    ycore = core_u_to_y(ucore, m)
    return from_core(ycore, den * scale, "Y", m)


def _residual(psi: SparsePoly, kpoly: SparsePoly, c: int) -> SparsePoly:
    acc: dict = {}
    for e, coeff in psi.terms.items():
        for var in range(psi.arity):
            k = e[var]
            if not k:
                continue
            kc = k * coeff
            up = e[:var] + (k + 1,) + e[var + 1:]
            v = acc.get(up, 0) + kc
            if v:
                acc[up] = v
            elif up in acc:
                del acc[up]
            v = acc.get(e, 0) - kc
            if v:
                acc[e] = v
            elif e in acc:
                del acc[e]
        v = acc.get(e, 0) + c * coeff
        if v:
            acc[e] = v
        elif e in acc:
            del acc[e]
    for e, coeff in kpoly.terms.items():
        v = acc.get(e, 0) - coeff
        if v:
            acc[e] = v
        elif e in acc:
            del acc[e]
    return SparsePoly("Y", psi.arity, acc)


def _validate_psi(rep: PsiRep):
    poly = rep.poly
    if not poly.is_symmetric():
        raise ArithmeticError(f"cell ({rep.m},{rep.g}) is not symmetric")
    for var in range(rep.m):
        if not poly.substitute_one(var).is_zero():
            raise ArithmeticError(
                f"cell ({rep.m},{rep.g}) does not vanish at y_{var+1} = 1"
            )
    if rep.g >= 1:
        bound = per_var_bound(rep.m, rep.g)
        if any(d > bound for d in poly.per_var_degrees()):
            raise ArithmeticError(
                f"cell ({rep.m},{rep.g}) breaks the per-variable bound {bound}"
            )


def solve_pde(K: RhsRep) -> PsiRep:
    """Scaled-integral solve with an exact equation check as the gate."""
    m, g = K.m, K.g
    c = m + 2 * g - 2
    if c < 1:
        raise ValueError("scaling constant must be positive")
    pv0, tot0 = per_var_bound(m, g), total_bound(m, g)
    for attempt in range(3):
        pv, tot = pv0 + 2 * attempt, tot0 + 2 * attempt
        psi = _integral_solve(K.poly, c, pv, tot)
        if _residual(psi, K.poly, c).is_zero():
            rep = PsiRep(m, g, psi, psi.total_degree() or 0)
            _validate_psi(rep)
            return rep
    raise ResidualNonzero(
        f"no y-polynomial solution for ({m},{g}) within degree caps "
        f"{pv0}+4 per variable, {tot0}+4 total"
    )


# ----- extraction ---------------------------------------------------------

def _sample_plan(m: int, wdeg: int, extra: int) -> List[Partition]:
    out: List[Partition] = []
    for n in range(m, m + wdeg + 3 + extra):
        for p in partitions_upto_length(n, m):
            if p.m == m:
                out.append(p)
    return out


def _extract_by_samples(psi: SparsePoly, m: int, wdeg: int) -> SparsePoly:
    last: Optional[InconsistentSystem] = None
    for extra in (0, 3, 6):
        samples = _sample_plan(m, wdeg, extra)
        nmax = max(p.n for p in samples)
        amax = max(p.parts[0] for p in samples)
        jet = expand_y_to_w(psi, amax, nmax, allow_truncation=True)
        table = w_power_x_table(amax, amax)
        evals = []
        for p in samples:
            coeff = x_coefficient(jet, p.parts, table)
            scale = Fraction(1)
            for a in p.parts:
                scale *= Fraction(math.factorial(a), a ** a)
            evals.append((p.parts, scale * coeff))
        try:
            return fit_sym_e_poly(evals, m, wdeg)
        except InconsistentSystem as err:
            if not err.underdetermined:
                raise
            last = err
    raise last


def extract_f(psi: PsiRep) -> FResult:
    """Pull out the symmetric polynomial behind a cell, two ways.

    Route one rewrites the cell over the operator basis and reads the
    all-derivation terms as a symmetric polynomial; route two samples
    x-coefficients at partitions and fits.  Any disagreement is fatal.
    """
    m, g = psi.m, psi.g
    decomp = xdx_basis_convert(psi.poly, m)
    f_basis = to_e_basis(decomp.b_terms, m)
    wdeg = m + 3 * g - 3
    f_fit = _extract_by_samples(psi.poly, m, max(wdeg, 0))
    if f_basis != f_fit:
        raise RouteDisagreement(
            f"operator-basis and sampling extractions differ at ({m},{g})"
        )
    attained = max(
        (weighted_degree(e) for e in f_basis.terms), default=0
    )
    residual = tuple(
        (var, jt, coeff) for var, jt, coeff in decomp.w_residual
    )
    return FResult(m, g, f_basis, residual, attained)


# ----- orchestration ------------------------------------------------------

def _deps(m: int, g: int) -> List[Tuple[int, int]]:
    if g == 0 or (m, g) == (1, 1):
        return []
    out = [(m + 1, g - 1)]
    if m >= 2:
        out.append((m - 1, g))
    for k in range(3, m + 1):
        out.append((k, 0))
        out.append((m - k + 1, g))
    for ga in range(1, g):
        for k in range(1, m + 1):
            out.append((k, ga))
            out.append((m - k + 1, g - ga))
    seen = set()
    uniq = []
    for d in out:
        if d not in seen and d != (m, g):
            seen.add(d)
            uniq.append(d)
    return uniq


class Engine:
    """Cell cache plus the induction order, optionally disk-backed."""

    def __init__(self, budgets: Optional[Dict[int, int]] = None,
                 cache_dir: Optional[str] = None):
        self.budgets = dict(DEFAULT_BUDGETS)
        if budgets:
            self.budgets.update(budgets)
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._psi: Dict[Tuple[int, int], PsiRep] = {}
        self._f: Dict[Tuple[int, int], FResult] = {}

    # -- budget and cache plumbing

    def _check_budget(self, m: int, g: int):
        lim = self.budgets.get(g)
        if lim is None or m < 1 or m > lim or (g == 0 and m < 3):
            done = sorted(self._psi)
            raise BudgetExceeded(
                f"cell ({m},{g}) is outside the budget {self.budgets}; "
                f"cells computed so far: {done}"
            )

    def _cache_path(self, m: int, g: int) -> Optional[Path]:
        if self.cache_dir is None:
            return None
        return self.cache_dir / f"psi_m{m}_g{g}.json"

    def _load(self, m: int, g: int) -> bool:
        path = self._cache_path(m, g)
        if path is None or not path.is_file():
            return False
        try:
            obj = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return False
        if obj.get("version") != CACHE_VERSION:
            return False
        if obj.get("m") != m or obj.get("g") != g:
            return False
        poly = SparsePoly.from_obj(obj["psi"])
        f_e = SparsePoly.from_obj(obj["f_e"])
        residual = tuple(
            (var, tuple(jt), Fraction(cs))
            for var, jt, cs in obj["w_residual"]
        )
        attained = max((weighted_degree(e) for e in f_e.terms), default=0)
        self._psi[(m, g)] = PsiRep(m, g, poly, poly.total_degree() or 0)
        self._f[(m, g)] = FResult(m, g, f_e, residual, attained)
        return True

    def _save(self, m: int, g: int):
        path = self._cache_path(m, g)
        if path is None:
            return
        psi = self._psi[(m, g)]
        f = self._f[(m, g)]
        obj = {
            "version": CACHE_VERSION,
            "m": m,
            "g": g,
            "psi": psi.poly.to_obj(),
            "f_e": f.f_e.to_obj(),
            "w_residual": [
                [var, list(jt), f"{c.numerator}/{c.denominator}"]
                for var, jt, c in f.w_residual
            ],
        }
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(obj, separators=(",", ":")) + "\n")

    # -- public access

    def psi(self, m: int, g: int) -> PsiRep:
        return self.cell(m, g)[0]

    def f_result(self, m: int, g: int) -> FResult:
        return self.cell(m, g)[1]

    def cell(self, m: int, g: int) -> Tuple[PsiRep, FResult]:
        key = (m, g)
        if key not in self._f:
            self._check_budget(m, g)
            if not self._load(m, g):
                for dm, dg in _deps(m, g):
                    self.cell(dm, dg)
                if g == 0:
                    rep = psi0_base(m)
                else:
                    rep = solve_pde(assemble_K(m, g, self._psi))
                self._psi[key] = rep
                self._f[key] = extract_f(rep)
                self._save(m, g)
        return self._psi[key], self._f[key]

    def computed_cells(self) -> List[Tuple[int, int]]:
        return sorted(self._f)


_default: Optional[Engine] = None


def default_engine() -> Engine:
    global _default
    if _default is None:
        _default = Engine()
    return _default


def compute_psi(m: int, g: int) -> PsiRep:
    """Cell access through a shared in-process engine."""
    return default_engine().psi(m, g)
