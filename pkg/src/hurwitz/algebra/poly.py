"""Sparse multivariate Laurent polynomials over the rationals.

A polynomial is stored as a dict mapping exponent tuples to nonzero
Fraction coefficients.  The zero polynomial has an empty dict.  Exponents
are ints and may be negative (a few downstream objects are honest Laurent
polynomials).  Every polynomial carries a variable kind tag and an arity;
arithmetic between mismatched kinds or arities is refused, which catches a
whole family of plumbing mistakes (e.g. adding a y-form to a w-jet).

Kinds:
    Y   y_i = 1/(1 - w_i), the working coordinates of the solved forms
    W   w_i, the tree-function coordinates (jets live here)
    X   x_i, the underlying point coordinates
    E   e_k, elementary symmetric arguments of extracted forms
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = ["SparsePoly", "KINDS", "Exponent", "Rational"]

KINDS = ("Y", "W", "X", "E")

Exponent = tuple  # tuple[int, ...]
Rational = Fraction

_VAR_LETTER = {"Y": "y", "W": "w", "X": "x", "E": "e"}


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"coefficient must be int or Fraction, got {type(v).__name__}")


class SparsePoly:
    """Immutable-by-convention sparse polynomial.

    Callers must not mutate `terms` after construction; all methods return
    new objects.
    """

    __slots__ = ("kind", "arity", "terms")

    def __init__(self, kind: str, arity: int, terms: Mapping[Exponent, Fraction] | None = None):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        if arity < 0:
            raise ValueError("arity must be >= 0")
        self.kind = kind
        self.arity = arity
        clean: dict = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != arity:
                    raise ValueError(f"exponent tuple {exps} does not match arity {arity}")
                c = _as_fraction(c)
                if c != 0:
                    clean[tuple(exps)] = c
        self.terms = clean

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, kind: str, arity: int) -> "SparsePoly":
        return cls(kind, arity)

    @classmethod
    def const(cls, kind: str, arity: int, value) -> "SparsePoly":
        value = _as_fraction(value)
        if value == 0:
            return cls(kind, arity)
        return cls(kind, arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, kind: str, arity: int, index: int, power: int = 1) -> "SparsePoly":
        """The monomial (var_index)^power.  Index is 0-based."""
        if not 0 <= index < arity:
            raise IndexError(f"variable index {index} out of range for arity {arity}")
        exps = [0] * arity
        exps[index] = power
        return cls(kind, arity, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, kind: str, exps: Sequence[int], coeff) -> "SparsePoly":
        return cls(kind, len(exps), {tuple(exps): _as_fraction(coeff)})

    # ----- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (self.kind, self.arity, self.terms) == (other.kind, other.arity, other.terms)

    __hash__ = None  # dict payload, not hashable

    def total_degree(self) -> int | None:
        """Max over terms of the exponent sum.  None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def per_var_degrees(self) -> tuple:
        """Componentwise max exponent, (0,...,0) for zero."""
        degs = [0] * self.arity
        for e in self.terms:
            for i, v in enumerate(e):
                if v > degs[i]:
                    degs[i] = v
        return tuple(degs)

    def min_exponents(self) -> tuple:
        """Componentwise min exponent; detects Laurent terms."""
        mins = [0] * self.arity
        for e in self.terms:
            for i, v in enumerate(e):
                if v < mins[i]:
                    mins[i] = v
        return tuple(mins)

    # ----- arithmetic ---------------------------------------------------

    def _check_compat(self, other: "SparsePoly") -> None:
        if self.kind != other.kind or self.arity != other.arity:
            raise ValueError(
                f"incompatible polynomials: {self.kind}/{self.arity} vs {other.kind}/{other.arity}"
            )

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check_compat(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return SparsePoly(self.kind, self.arity, out)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.kind, self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        self._check_compat(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return SparsePoly(self.kind, self.arity, out)

    def scale(self, c) -> "SparsePoly":
        c = _as_fraction(c)
        if c == 0:
            return SparsePoly(self.kind, self.arity)
        return SparsePoly(self.kind, self.arity, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compat(other)
        # iterate the smaller factor on the outside
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return SparsePoly(self.kind, self.arity, out)

    __rmul__ = __mul__

    # ----- structural operations ---------------------------------------

    def permute(self, perm: Sequence[int]) -> "SparsePoly":
        """Relabel variables: old variable i becomes variable perm[i]."""
        if sorted(perm) != list(range(self.arity)):
            raise ValueError(f"{perm} is not a permutation of 0..{self.arity - 1}")
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * self.arity
            for i, v in enumerate(e):
                ne[perm[i]] = v
            out[tuple(ne)] = c
        return SparsePoly(self.kind, self.arity, out)

    def embed(self, arity: int, positions: Sequence[int]) -> "SparsePoly":
        """View this polynomial inside a larger variable set.

        Old variable i lands at positions[i]; new slots are absent from
        every term (exponent 0).
        """
        if len(positions) != self.arity:
            raise ValueError("positions must list a target for every variable")
        if len(set(positions)) != self.arity or any(not 0 <= p < arity for p in positions):
            raise ValueError(f"bad embedding {positions} into arity {arity}")
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * arity
            for i, v in enumerate(e):
                ne[positions[i]] = v
            out[tuple(ne)] = c
        return SparsePoly(self.kind, arity, out)

    def substitute_one(self, index: int) -> "SparsePoly":
        """Set variable `index` to 1 (exponent dropped, arity kept)."""
        out: dict = {}
        for e, c in self.terms.items():
            ne = e[:index] + (0,) + e[index + 1:]
            s = out.get(ne, 0) + c
            if s:
                out[ne] = s
            elif ne in out:
                del out[ne]
        return SparsePoly(self.kind, self.arity, out)

    def evaluate(self, values: Sequence) -> Fraction:
        """Full evaluation at rational points."""
        if len(values) != self.arity:
            raise ValueError("value count must match arity")
        vals = [_as_fraction(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k == 0:
                    continue
                if v == 0 and k < 0:
                    raise ZeroDivisionError("negative exponent at zero")
                term *= v ** k
            total += term
        return total

    def is_symmetric(self) -> bool:
        """Invariance under all variable permutations.

        Checked on the generators (adjacent swap and full cycle), which
        suffices for the whole symmetric group.
        """
        m = self.arity
        if m <= 1:
            return True
        swap = list(range(m))
        swap[0], swap[1] = 1, 0
        if self.permute(swap) != self:
            return False
        cyc = [(i + 1) % m for i in range(m)]
        return self.permute(cyc) == self

    # ----- ordering and serialization -----------------------------------

    def sorted_terms(self) -> list:
        """Terms in graded lexicographic order (degree first, then exponents)."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def to_obj(self) -> dict:
        return {
            "kind": self.kind,
            "arity": self.arity,
            "terms": [
                [list(e), str(c.numerator), str(c.denominator)]
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "SparsePoly":
        terms = {
            tuple(e): Fraction(int(num), int(den))
            for e, num, den in obj["terms"]
        }
        return cls(obj["kind"], obj["arity"], terms)

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, s: str) -> "SparsePoly":
        return cls.from_obj(json.loads(s))

    def __repr__(self) -> str:
        return f"SparsePoly({self.kind!r}, {self.arity}, {len(self.terms)} terms)"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        letter = _VAR_LETTER[self.kind]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 0:
                    continue
                name = f"{letter}{i + 1}"
                factors.append(name if k == 1 else f"{name}^{k}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out
