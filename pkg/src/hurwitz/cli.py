"""Command-line front end.

Subcommands: compute (one alpha, best route), table (emit f polynomials
or value grids), verify (cross-check suites, JSON report), cache
(inspect, clear, or warm the cell cache).

Exit codes: 0 success, 1 verification mismatch, 2 unavailable
computation, 3 bad arguments.  All output is deterministic; rationals
print as p/q in lowest terms.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

from . import formulas, oracle
from .algebra.poly import SparsePoly
from .algebra.sym import elementary_values
from .engine import DEFAULT_BUDGETS, Engine
from .errors import BudgetExceeded, HurwitzError
from .partitions import Partition, partitions

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_UNAVAILABLE = 2
EXIT_BAD_ARGS = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_ARGS)


def poly_str(poly: SparsePoly) -> str:
    """Integer-coefficient display with the common denominator pulled out."""
    if poly.is_zero():
        return "0"
    den = 1
    for c in poly.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    letter = {"Y": "y", "W": "w", "X": "x", "E": "e"}[poly.kind]
    parts = []
    for e, c in sorted(poly.terms.items(), reverse=True):
        num = int(c * den)
        factors = []
        for i, k in enumerate(e):
            if k:
                factors.append(f"{letter}{i+1}" if k == 1 else f"{letter}{i+1}^{k}")
        body = "*".join(factors)
        if not body:
            parts.append(str(num))
        elif num == 1:
            parts.append(body)
        elif num == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{num}*{body}")
    s = parts[0]
    for p in parts[1:]:
        s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return s if den == 1 else f"({s})/{den}"


# ----- route selection ----------------------------------------------------

def _f_from_formulas(alpha: Partition, g: int) -> Optional[Fraction]:
    if g == 0:
        return formulas.f_genus0(alpha)
    if alpha.m == 1:
        return formulas.f_one_part(alpha.n, g)
    if g in formulas.TABLE_M_MAX and alpha.m <= formulas.TABLE_M_MAX[g]:
        return formulas.f_table_eval(g, alpha)
    return None


def best_route(alpha: Partition, g: int, engine: Engine) -> Tuple[Fraction, str]:
    """f by the preferred available route: engine, formulas, oracle."""
    m = alpha.m
    if g >= 1 or m >= 3:
        try:
            fr = engine.f_result(m, g)
            ev = [Fraction(v) for v in elementary_values(alpha.parts, m)]
            return fr.f_e.evaluate(ev), "engine"
        except BudgetExceeded:
            pass
    f = _f_from_formulas(alpha, g)
    if f is not None:
        return f, "formulas"
    c = oracle.c_count(alpha, g)  # raises BudgetExceeded when out of range
    scale = Fraction(math.factorial(alpha.j_for_genus(g)))
    for a in alpha.parts:
        scale *= Fraction(a ** a, math.factorial(a - 1))
    return Fraction(c) / scale, "oracle"


# ----- compute ------------------------------------------------------------

def run_compute(args) -> int:
    alpha = args.alpha
    engine = Engine(cache_dir=args.cache_dir)
    f, route = best_route(alpha, args.genus, engine)
    hc = formulas.hurwitz(alpha, args.genus, f)
    if args.format == "json":
        print(json.dumps({
            "alpha": list(alpha.parts),
            "n": alpha.n,
            "m": alpha.m,
            "g": args.genus,
            "f": str(hc.f),
            "mu": str(hc.mu),
            "c": str(hc.c),
            "route": route,
        }, sort_keys=True))
    elif args.format == "csv":
        print("alpha,n,m,g,f,mu,c,route")
        print(f"{alpha.key()},{alpha.n},{alpha.m},{args.genus},"
              f"{hc.f},{hc.mu},{hc.c},{route}")
    else:
        print(f"alpha = {alpha}")
        print(f"g = {args.genus}")
        print(f"f = {hc.f}")
        print(f"mu = {hc.mu}")
        print(f"c = {hc.c}")
        print(f"route = {route}")
    return EXIT_OK


# ----- table --------------------------------------------------------------

def _table_f_poly(g: int, m: int) -> SparsePoly:
    if g == 0:
        if m < 3:
            raise BudgetExceeded("genus-0 polynomials start at m = 3")
        return SparsePoly("E", m, {
            tuple([m - 3] + [0] * (m - 1)): Fraction(1)
        })
    return formulas.f_table(g, m)


def run_table(args) -> int:
    g, m = args.genus, args.m
    basis = "values" if args.values else args.basis
    if basis == "e":
        poly = _table_f_poly(g, m)
        if args.format == "json":
            print(poly.to_json())
        elif args.format == "csv":
            print("exponents,coefficient")
            for e, c in poly.sorted_terms():
                print(f"{'-'.join(str(v) for v in e)},{c}")
        else:
            print(poly_str(poly))
        return EXIT_OK
    rows = []
    for n in range(m, args.n_max + 1):
        for alpha in partitions(n):
            if alpha.m != m:
                continue
            if g == 0:
                f = formulas.f_genus0(alpha)
            elif m == 1:
                f = formulas.f_one_part(n, g)
            else:
                f = formulas.f_table_eval(g, alpha)
            hc = formulas.hurwitz(alpha, g, f)
            rows.append((alpha, hc))
    if args.format == "json":
        print(json.dumps([
            {"alpha": list(a.parts), "n": a.n, "m": a.m, "g": g,
             "f": str(h.f), "mu": str(h.mu), "c": str(h.c),
             "route": "formulas"}
            for a, h in rows
        ], sort_keys=True))
    else:
        print("alpha,n,m,g,f,mu,c,route")
        for a, h in rows:
            print(f"{a.key()},{a.n},{a.m},{g},{h.f},{h.mu},{h.c},formulas")
    return EXIT_OK


# ----- verify -------------------------------------------------------------

def _check(name: str, ok: bool, detail: str = "") -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _suite_appendix(engine: Engine, checks: List[dict]):
    for g in sorted(formulas.TABLE_M_MAX):
        for m in range(1, formulas.TABLE_M_MAX[g] + 1):
            want = formulas.f_table(g, m)
            got = engine.f_result(m, g).f_e
            ok = got == want
            detail = "" if ok else (
                f"engine {poly_str(got)} vs table {poly_str(want)}"
            )
            checks.append(_check(f"appendix g={g} m={m}", ok, detail))


def _suite_oracle(engine: Engine, n_max: int, checks: List[dict]):
    for n in range(1, n_max + 1):
        for alpha in partitions(n):
            for g in range(0, 3):
                c_oracle = oracle.c_count(alpha, g)
                if g == 0 and alpha.m < 3:
                    f = formulas.f_genus0(alpha)
                    label = f"oracle {alpha} g={g} (formulas)"
                else:
                    fr = engine.f_result(alpha.m, g)
                    ev = [Fraction(v) for v in
                          elementary_values(alpha.parts, alpha.m)]
                    f = fr.f_e.evaluate(ev)
                    label = f"oracle {alpha} g={g} (engine)"
                hc = formulas.hurwitz(alpha, g, f)
                ok = hc.c == c_oracle
                detail = "" if ok else (
                    f"counting route {Fraction(c_oracle)} vs "
                    f"extraction route {Fraction(hc.c)}"
                )
                checks.append(_check(label, ok, detail))
    for n in range(1, 7):
        alpha = Partition((1,) * n)
        mu_closed = formulas.mu0_simple(n)
        mu_oracle = oracle.mu_count(alpha, 0)
        ok = mu_closed == mu_oracle
        checks.append(_check(
            f"genus-0 mu at 1^{n}", ok,
            "" if ok else f"closed {mu_closed} vs oracle {mu_oracle}"
        ))


def _suite_recurrence(checks: List[dict]):
    try:
        formulas.a_sequence(12)
        checks.append(_check("a_n triple equality n<=12", True))
    except ArithmeticError as err:
        checks.append(_check("a_n triple equality n<=12", False, str(err)))
    mu1 = formulas.pg_mu1(10)
    for n in range(2, 11):
        want = Fraction(math.factorial(2 * n)) * formulas.f1_simple(n) \
            / math.factorial(n)
        ok = mu1[n - 1] == want
        checks.append(_check(
            f"torus recurrence n={n}", ok,
            "" if ok else f"recurrence {mu1[n - 1]} vs direct {want}"
        ))


def _suite_closedform(checks: List[dict]):
    for g in range(1, 5):
        poly = formulas.f_table(g, 1)
        for n in range(1, 11):
            want = formulas.f_one_part(n, g)
            got = poly.evaluate([Fraction(n)])
            ok = got == want
            checks.append(_check(
                f"one-part g={g} n={n}", ok,
                "" if ok else f"table {got} vs series {want}"
            ))
    for m in range(1, 7):
        for n in range(m, m + 4):
            for alpha in partitions(n):
                if alpha.m != m:
                    continue
                got = formulas.f_table_eval(1, alpha)
                want = formulas.f1_conjecture(alpha)
                ok = got == want
                checks.append(_check(
                    f"genus-1 table vs formula {alpha}", ok,
                    "" if ok else f"table {got} vs formula {want}"
                ))


def run_verify(args) -> int:
    budgets = None
    if args.suite in ("oracle", "all"):
        # the oracle triangle needs cells up to (n_max, 2)
        budgets = {
            1: max(DEFAULT_BUDGETS[1], args.n_max),
            2: max(DEFAULT_BUDGETS[2], args.n_max),
        }
    engine = Engine(budgets=budgets, cache_dir=args.cache_dir)
    checks: List[dict] = []
    suite = args.suite
    if suite in ("appendix", "all"):
        _suite_appendix(engine, checks)
    if suite in ("oracle", "all"):
        _suite_oracle(engine, args.n_max, checks)
    if suite in ("recurrence", "all"):
        _suite_recurrence(checks)
    if suite in ("closedform", "all"):
        _suite_closedform(checks)
    failures = [c for c in checks if c["status"] == "fail"]
    report = {
        "suite": suite,
        "total": len(checks),
        "failures": len(failures),
        "checks": checks,
    }
    print(json.dumps(report, sort_keys=True))
    if failures:
        first = failures[0]
        print(f"FIRST FAILURE: {first['name']}: {first['detail']}",
              file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


# ----- cache --------------------------------------------------------------

def run_cache(args) -> int:
    engine = Engine(cache_dir=args.cache_dir)
    if engine.cache_dir is None:
        print("no cache directory configured (pass --cache-dir)")
        return EXIT_BAD_ARGS
    if args.clear:
        removed = 0
        for path in sorted(engine.cache_dir.glob("psi_m*_g*.json")):
            path.unlink()
            removed += 1
        print(f"removed {removed} cached cells")
        return EXIT_OK
    if args.warm:
        budgets = dict(DEFAULT_BUDGETS)
        for g in sorted(budgets):
            if args.genus is not None and g != args.genus:
                continue
            top = budgets[g] if args.m is None else min(budgets[g], args.m)
            start = 3 if g == 0 else 1
            for m in range(start, top + 1):
                engine.cell(m, g)
                print(f"computed ({m},{g})")
        return EXIT_OK
    files = sorted(engine.cache_dir.glob("psi_m*_g*.json"))
    if not files:
        print("cache is empty")
        return EXIT_OK
    for path in files:
        print(f"{path.name} {path.stat().st_size} bytes")
    return EXIT_OK


# ----- argument plumbing --------------------------------------------------

def _partition_arg(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hurwitz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="one alpha, best route")
    p_compute.add_argument("--alpha", type=_partition_arg, required=True,
                           help="partition, comma-separated parts")
    p_compute.add_argument("--genus", type=int, required=True)
    p_compute.add_argument("--format", choices=("csv", "json", "text"),
                           default="text")
    p_compute.add_argument("--cache-dir", default=None)
    p_compute.add_argument("--jobs", type=int, default=1,
                           help="reserved; evaluation is single-process")
    p_compute.set_defaults(func=run_compute)

    p_table = sub.add_parser("table", help="emit f polynomials or value grids")
    p_table.add_argument("--genus", type=int, required=True)
    p_table.add_argument("--m", type=int, required=True)
    p_table.add_argument("--basis", choices=("e", "values"), default="e")
    p_table.add_argument("--values", action="store_true",
                         help="same as --basis values")
    p_table.add_argument("--n-max", type=int, default=None)
    p_table.add_argument("--format", choices=("csv", "json", "text"),
                         default="text")
    p_table.add_argument("--cache-dir", default=None)
    p_table.add_argument("--jobs", type=int, default=1)
    p_table.set_defaults(func=run_table)

    p_verify = sub.add_parser("verify", help="cross-check suites")
    p_verify.add_argument("--suite", required=True,
                          choices=("appendix", "oracle", "recurrence",
                                   "closedform", "all"))
    p_verify.add_argument("--n-max", type=int, default=5)
    p_verify.add_argument("--format", choices=("csv", "json", "text"),
                          default="json")
    p_verify.add_argument("--cache-dir", default=None)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.set_defaults(func=run_verify)

    p_cache = sub.add_parser("cache", help="inspect, clear, or warm the cache")
    p_cache.add_argument("--cache-dir", default=None)
    p_cache.add_argument("--clear", action="store_true")
    p_cache.add_argument("--warm", action="store_true")
    p_cache.add_argument("--genus", type=int, default=None)
    p_cache.add_argument("--m", type=int, default=None)
    p_cache.add_argument("--jobs", type=int, default=1)
    p_cache.set_defaults(func=run_cache)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n_max", None) is None and args.command == "table":
        args.n_max = args.m + 4
    if getattr(args, "genus", None) is not None and args.genus < 0:
        print("error: genus must be nonnegative", file=sys.stderr)
        return EXIT_BAD_ARGS
    try:
        return args.func(args)
    except BudgetExceeded as err:
        print(f"unavailable: {err}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    except HurwitzError as err:
        print(f"verification failure: {err}", file=sys.stderr)
        return EXIT_MISMATCH
    except ArithmeticError as err:
        print(f"verification failure: {err}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    raise SystemExit(main())
