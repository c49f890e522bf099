"""gl(n) structure: bracket, trace form, vector stabilizer, centralizers.

The trace form tr(AB) stands in for the Killing form throughout; it is
non-degenerate on gl(n) and proportional to the Killing form on sl(n), and
none of the predicates here depend on the constant.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence

from .ratlin import (
    RatMatrix,
    RatVector,
    kernel_basis,
    rank,
    rref,
    solve,
    vec,
    unvec,
)


def bracket(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """[A, B] = AB - BA."""
    if a.n != b.n:
        raise ValueError("bracket of matrices of different sizes")
    return a @ b - b @ a


def trace_form(a: RatMatrix, b: RatMatrix) -> Fraction:
    """tr(AB), computed entrywise without forming the product."""
    if a.n != b.n:
        raise ValueError("trace form of matrices of different sizes")
    return sum(
        (a.rows[i][k] * b.rows[k][i] for i in range(a.n) for k in range(a.n)),
        Fraction(0),
    )


def tau_at(z: RatMatrix, x: RatMatrix) -> RatMatrix:
    """Value [X, Z] at the point X of the adjoint vector field attached to Z."""
    return bracket(x, z)


class Subalgebra:
    """Span of linearly independent matrices, closed under bracket.

    Closure is certified on construction: every bracket of basis elements
    must reduce to zero against the row echelon form of the span.  The
    check is skipped when the basis spans all of gl(n), which is closed
    trivially.
    """

    def __init__(self, n: int, basis: Sequence[RatMatrix]):
        self.n = n
        self.basis = list(basis)
        if any(m.n != n for m in self.basis):
            raise ValueError("basis matrices must all be n x n")
        rows = [list(vec(m)) for m in self.basis]
        if rows:
            self._rref_rows, self._pivots = rref(rows)
            self._rref_rows = self._rref_rows[: len(self._pivots)]
        else:
            self._rref_rows, self._pivots = [], []
        if len(self._pivots) != len(self.basis):
            raise ValueError("basis is linearly dependent")
        if len(self.basis) < n * n:
            for i, a in enumerate(self.basis):
                for b in self.basis[i + 1:]:
                    if not self.contains(bracket(a, b)):
                        raise ValueError("basis is not closed under bracket")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _reduce(self, entries: List[Fraction]) -> List[Fraction]:
        entries = list(entries)
        for row, p in zip(self._rref_rows, self._pivots):
            c = entries[p]
            if c != 0:
                entries = [a - c * b for a, b in zip(entries, row)]
        return entries

    def contains(self, m: RatMatrix) -> bool:
        if m.n != self.n:
            return False
        return all(e == 0 for e in self._reduce(list(vec(m))))

    def coordinates(self, m: RatMatrix):
        """Coefficients of m in the stored basis, or None when m is outside."""
        cols = [vec(b) for b in self.basis]
        rows_t = [[cols[j][i] for j in range(len(cols))] for i in range(self.n * self.n)]
        return solve(rows_t, vec(m))


@lru_cache(maxsize=None)
def full_gl(n: int) -> Subalgebra:
    """gl(n) itself, with the elementary-matrix basis E_ij (row-major)."""
    return Subalgebra(n, [RatMatrix.unit(n, i, j) for i in range(n) for j in range(n)])


class StabilizerData:
    """Stabilizer algebra p of a nonzero vector and its trace-form orthogonal.

    p = { A : A v0 = 0 } has dimension n^2 - n; its orthogonal under the
    trace form is spanned by the rank-one matrices v0 e_j^T, the matrices
    whose column space lies on the line through v0.  Both descriptions are
    computed and cross-checked on construction.
    """

    def __init__(self, v0: RatVector, p: Subalgebra, p_perp: List[RatMatrix]):
        self.v0 = v0
        self.p = p
        self.p_perp = p_perp

    @property
    def n(self) -> int:
        return self.v0.n


def _orthogonal_complement(mats: Sequence[RatMatrix], n: int) -> List[RatMatrix]:
    """Trace-form orthogonal of a span: kernel of Z -> (tr(Z M_i))_i."""
    rows = [list(vec(m.transpose())) for m in mats]
    return [unvec(v, n) for v in kernel_basis(rows)]


@lru_cache(maxsize=None)
def stabilizer(v0: RatVector) -> StabilizerData:
    """StabilizerData for a nonzero vector; v0 = 0 is rejected.

    (For v0 = 0 the stabilizer is all of gl(n) and nothing here is
    informative.)
    """
    if v0.is_zero():
        raise ValueError("stabilizer of the zero vector is all of gl(n); refusing")
    n = v0.n
    # Matrix of A -> A v0 in the E_ij basis, row-major columns.
    act_rows = [[Fraction(0)] * (n * n) for _ in range(n)]
    for i in range(n):
        for j in range(n):
            act_rows[i][i * n + j] = v0[j]
    p_basis = [unvec(v, n) for v in kernel_basis(act_rows)]
    p = Subalgebra(n, p_basis)
    if p.dim != n * n - n:
        raise AssertionError("stabilizer dimension is off")
    p_perp = [RatMatrix.outer(v0, RatVector.unit(n, j)) for j in range(n)]
    for a in p_basis:
        if not (a @ v0).is_zero():
            raise AssertionError("stabilizer basis fails to annihilate v0")
        for m in p_perp:
            if trace_form(a, m) != 0:
                raise AssertionError("p and its stated orthogonal are not orthogonal")
    # Cross-check the explicit rank-one basis against the computed complement.
    complement = _orthogonal_complement(p_basis, n)
    span_rows = [list(vec(m)) for m in p_perp]
    red, piv = rref(span_rows)
    comp_rows = [list(vec(m)) for m in complement]
    red2, piv2 = rref(comp_rows)
    if piv != piv2 or red[: len(piv)] != red2[: len(piv2)]:
        raise AssertionError("rank-one basis does not span the orthogonal complement")
    return StabilizerData(v0, p, p_perp)


def centralizer(x: RatMatrix) -> Subalgebra:
    """Basis of { Y : [X, Y] = 0 }, the kernel of ad X on gl(n)."""
    n = x.n
    cols = [vec(bracket(x, RatMatrix.unit(n, i, j))) for i in range(n) for j in range(n)]
    rows_t = [[cols[j][i] for j in range(n * n)] for i in range(n * n)]
    return Subalgebra(n, [unvec(v, n) for v in kernel_basis(rows_t)])


def orbit_tangent_dim(x: RatMatrix, a: Subalgebra) -> int:
    """dim [X, a]: rank of Z -> [X, Z] restricted to the subalgebra."""
    if a.n != x.n:
        raise ValueError("dimension mismatch")
    if not a.basis:
        return 0
    return rank([list(vec(bracket(x, z))) for z in a.basis])
