"""Commutative multivariate polynomials with exact rational coefficients.

Shared by the symbol calculus (polynomials on a cotangent space) and the
symbolic Krylov determinant.  Terms are a dict from exponent tuples to
nonzero Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .ratlin import rat


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Tuple[int, ...], object] = None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        clean: Dict[Tuple[int, ...], Fraction] = {}
        for expo, c in (terms or {}).items():
            expo = tuple(expo)
            if len(expo) != nvars or any(e < 0 for e in expo):
                raise ValueError(f"bad exponent tuple {expo}")
            c = rat(c)
            if c != 0:
                clean[expo] = clean.get(expo, Fraction(0)) + c
                if clean[expo] == 0:
                    del clean[expo]
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {tuple([0] * nvars): c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        expo = [0] * nvars
        expo[i] = 1
        return cls(nvars, {tuple(expo): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """-1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            out: Dict[Tuple[int, ...], Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
            return MultiPoly(self.nvars, out)
        c = rat(other)
        return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def diff(self, i: int) -> "MultiPoly":
        """Partial derivative in variable i."""
        out: Dict[Tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return MultiPoly(self.nvars, out)

    def eval(self, values: Sequence) -> Fraction:
        vals = [rat(v) for v in values]
        if len(vals) != self.nvars:
            raise ValueError("wrong number of values")
        acc = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                for _ in range(k):
                    term *= v
            acc += term
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def format(self, names: Sequence[str]) -> str:
        """Human-readable form with the given variable names."""
        if len(names) != self.nvars:
            raise ValueError("wrong number of names")
        if not self.terms:
            return "0"
        def key(item):
            e, _ = item
            return (-sum(e), tuple(-x for x in e))
        parts = []
        for e, c in sorted(self.terms.items(), key=key):
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                mono = str(abs(c))
            elif abs(c) == 1:
                mono = "*".join(factors)
            else:
                mono = "*".join([str(abs(c))] + factors)
            if not parts:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"+ {mono}" if c > 0 else f"- {mono}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {{{', '.join(f'{e}: {c}' for e, c in sorted(self.terms.items()))}}})"
