"""Nilpotency and semisimplicity certificates, additive Jordan decomposition.

The decomposition X = S + N is computed entirely over Q: Newton iteration
against the squarefree part of the minimal polynomial, carried out in the
quotient ring Q[t]/(m(t)).  No eigenvalue ever needs to be factored out,
and the returned certificate polynomial lets a third party recompute
S = certificate(X) independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .lie import bracket
from .ratlin import (
    RatMatrix,
    RatPoly,
    char_poly,
    minimal_poly,
    poly_eval_mat,
    poly_ext_gcd,
    rank,
    squarefree_part,
)


def jordan_block(n: int, eigenvalue=0) -> RatMatrix:
    """Single Jordan block with ones on the superdiagonal (J e_{i+1} = e_i)."""
    return RatMatrix(
        [[eigenvalue if i == j else (1 if j == i + 1 else 0) for j in range(n)] for i in range(n)]
    )


def is_nilpotent(x: RatMatrix) -> bool:
    """char_poly(X) = t^n, cross-checked against X^n = 0."""
    n = x.n
    by_poly = char_poly(x) == RatPoly.monomial(n)
    by_power = (x ** n).is_zero()
    assert by_poly == by_power, "nilpotency certificates disagree"
    return by_poly


def is_semisimple(x: RatMatrix) -> bool:
    """Squarefree minimal polynomial, i.e. diagonalizable over the closure."""
    m = minimal_poly(x)
    return squarefree_part(m) == m


def is_regular_semisimple(x: RatMatrix) -> bool:
    """Squarefree characteristic polynomial (centralizer of minimal dimension n)."""
    p = char_poly(x)
    return squarefree_part(p) == p


@dataclass(frozen=True)
class ChevalleyDecomp:
    """Certified additive decomposition X = S + N.

    Invariants, all verified on construction against X = S + N:
    [S, N] = 0, minimal_poly(S) squarefree, N^n = 0, and
    S = certificate(S + N) exactly.
    """

    S: RatMatrix
    N: RatMatrix
    certificate: RatPoly

    def __post_init__(self):
        x = self.S + self.N
        n = x.n
        if not bracket(self.S, self.N).is_zero():
            raise ValueError("S and N do not commute")
        if not is_semisimple(self.S):
            raise ValueError("S is not semisimple")
        if not (self.N ** n).is_zero():
            raise ValueError("N is not nilpotent")
        if poly_eval_mat(self.certificate, x) != self.S:
            raise ValueError("certificate does not evaluate to S")


def _poly_mulmod(a: RatPoly, b: RatPoly, m: RatPoly) -> RatPoly:
    return (a * b) % m


def _poly_compose_mod(f: RatPoly, z: RatPoly, m: RatPoly) -> RatPoly:
    """f(z) mod m by Horner in the quotient ring."""
    acc = RatPoly.zero()
    for c in reversed(f.coeffs):
        acc = (_poly_mulmod(acc, z, m) + RatPoly.constant(c)) % m
    return acc


def _poly_invmod(a: RatPoly, m: RatPoly) -> RatPoly:
    g, u, _ = poly_ext_gcd(a, m)
    if g.degree != 0:
        raise ArithmeticError("element is not invertible in the quotient ring")
    return u % m


def chevalley(x: RatMatrix) -> ChevalleyDecomp:
    """Additive Jordan decomposition over Q.

    Let m be the minimal polynomial of X and f its squarefree part.  Then
    f(t) is nilpotent in Q[t]/(m), so the Newton step
    z <- z - f(z)/f'(z) converges quadratically to a root of f congruent to
    t; ceil(log2 n) + 1 steps suffice.  S = z(X) is semisimple, N = X - S
    nilpotent, and both are polynomials in X by construction.
    """
    n = x.n
    m = minimal_poly(x)
    f = squarefree_part(m)
    t = RatPoly.t()
    if f == m:
        return ChevalleyDecomp(S=x, N=RatMatrix.zero(n), certificate=t)
    df = f.derivative()
    z = t % m
    for _ in range(max(1, math.ceil(math.log2(n))) + 1):
        fz = _poly_compose_mod(f, z, m)
        if fz.is_zero():
            break
        dfz = _poly_compose_mod(df, z, m)
        z = (z - fz * _poly_invmod(dfz, m)) % m
    if not _poly_compose_mod(f, z, m).is_zero():
        raise AssertionError("Newton lifting failed to converge")
    s = poly_eval_mat(z, x)
    return ChevalleyDecomp(S=s, N=x - s, certificate=z)


@dataclass(frozen=True)
class JordanType:
    """Weakly decreasing partition recording Jordan block sizes."""

    partition: Tuple[int, ...]

    def __post_init__(self):
        p = self.partition
        if not p or any(a <= 0 for a in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"not a partition: {p}")

    @property
    def size(self) -> int:
        return sum(self.partition)


def jordan_type(n_mat: RatMatrix) -> JordanType:
    """Partition of a certified-nilpotent matrix from its rank sequence.

    The number of blocks of size >= k is rank(N^{k-1}) - rank(N^k).
    Non-nilpotent input is rejected so the partition semantics stay
    unambiguous.
    """
    if not is_nilpotent(n_mat):
        raise ValueError("jordan_type requires a nilpotent matrix")
    n = n_mat.n
    ranks = [n]
    power = RatMatrix.identity(n)
    while ranks[-1] > 0:
        power = power @ n_mat
        ranks.append(rank(power))
    blocks_ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k, count in enumerate(blocks_ge, start=1):
        exactly = count - (blocks_ge[k] if k < len(blocks_ge) else 0)
        parts.extend([k] * exactly)
    parts.sort(reverse=True)
    assert sum(parts) == n
    return JordanType(tuple(parts))


def is_regular_nilpotent(x: RatMatrix) -> bool:
    """Nilpotent with a single Jordan block.

    Cross-checked two ways: partition (n), and rank(X^{n-1}) = 1 (so the
    kernel of X^{n-1} is a hyperplane).
    """
    if not is_nilpotent(x):
        return False
    n = x.n
    by_type = jordan_type(x).partition == (n,)
    by_corank = rank(x ** (n - 1)) == 1 if n > 1 else x.is_zero()
    assert by_type == by_corank, "regular-nilpotent certificates disagree"
    return by_type
