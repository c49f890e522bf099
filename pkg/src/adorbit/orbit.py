"""Krylov invariant d(X, v), the hypersurface where it degenerates, and the
classification data for vector-stabilizer orbits inside conjugation orbits.

Conventions: matrices act on column vectors, and the Krylov matrix has
columns v, Xv, ..., X^{n-1}v.  ("Last row of I, X, ..., X^{n-1}" style
determinants are the transpose convention; the vanishing locus matches up
to X -> X^T.)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .jordan import chevalley, is_regular_nilpotent, is_semisimple, jordan_type
from .lie import (
    Subalgebra,
    _orthogonal_complement,
    bracket,
    centralizer,
    full_gl,
    orbit_tangent_dim,
    stabilizer,
)
from .multipoly import MultiPoly
from .ratlin import (
    RatMatrix,
    RatVector,
    char_poly,
    det,
    inverse,
    kernel_basis,
    poly_eval_mat,
    rank,
    rat,
    solve,
    squarefree_decomposition,
    vec,
)


class KrylovBlockError(ValueError):
    """Raised when a claimed block structure is violated."""


@dataclass(frozen=True)
class KrylovData:
    """d = dim span(v, Xv, ..., X^{n-1}v) plus the leading chain vectors."""

    d: int
    basis: Tuple[RatVector, ...]

    def __post_init__(self):
        if self.d != len(self.basis):
            raise ValueError("d does not match the basis length")


def krylov_columns(x: RatMatrix, v: RatVector) -> List[RatVector]:
    if v.n != x.n:
        raise ValueError("vector length does not match the matrix")
    cols = [v]
    for _ in range(x.n - 1):
        cols.append(x @ cols[-1])
    return cols


def krylov_dim(x: RatMatrix, v: RatVector, blocks: Optional[Sequence[int]] = None) -> KrylovData:
    """Krylov dimension d(X, v); 0 iff v = 0.

    In a Krylov chain the first dependent power makes all later powers
    dependent, so the first d columns are a basis of the span.

    With ``blocks`` (sizes of a block-diagonal decomposition of X), the sum
    of the per-block Krylov dimensions is computed and required to equal
    the global one.  The sum rule holds whenever the per-block annihilator
    polynomials of the v_i are pairwise coprime, e.g. when the blocks come
    from distinct-eigenvalue groups; a violation raises KrylovBlockError
    rather than returning a wrong d.
    """
    cols = krylov_columns(x, v)
    d = rank([list(c) for c in cols])
    data = KrylovData(d=d, basis=tuple(cols[:d]))
    if blocks is not None:
        sizes = list(blocks)
        if any(s < 1 for s in sizes) or sum(sizes) != x.n:
            raise KrylovBlockError(f"blocks {sizes} do not partition n={x.n}")
        offsets = [0]
        for s in sizes:
            offsets.append(offsets[-1] + s)
        for i in range(x.n):
            for j in range(x.n):
                bi = next(k for k in range(len(sizes)) if offsets[k] <= i < offsets[k + 1])
                bj = next(k for k in range(len(sizes)) if offsets[k] <= j < offsets[k + 1])
                if bi != bj and x.rows[i][j] != 0:
                    raise KrylovBlockError(f"entry ({i},{j}) is outside the claimed blocks")
        total = 0
        for k, s in enumerate(sizes):
            lo, hi = offsets[k], offsets[k + 1]
            xb = RatMatrix([row[lo:hi] for row in x.rows[lo:hi]])
            vb = RatVector(v.entries[lo:hi])
            total += rank([list(c) for c in krylov_columns(xb, vb)])
        if total != d:
            raise KrylovBlockError(
                f"per-block Krylov sum {total} != global {d}: block annihilators "
                "are not coprime, so the sum rule does not apply"
            )
    return data


def _poly_det(rows: List[List[MultiPoly]]) -> MultiPoly:
    n = len(rows)
    nvars = rows[0][0].nvars
    if n == 1:
        return rows[0][0]
    acc = MultiPoly.zero(nvars)
    for i in range(n):
        if rows[i][0].is_zero():
            continue
        minor = [r[1:] for k, r in enumerate(rows) if k != i]
        term = rows[i][0] * _poly_det(minor)
        acc = acc + term if i % 2 == 0 else acc - term
    return acc


def sigma_poly(n: int, v0: RatVector) -> MultiPoly:
    """Symbolic Krylov determinant det[v0 | Xv0 | ... | X^{n-1}v0].

    The result is a polynomial in the n^2 matrix entries, variable (i, j)
    at index i*n + j.  It vanishes at X exactly when d(X, v0) < n.
    Cofactor expansion over the polynomial ring; guarded to n <= 5.
    """
    if v0.is_zero():
        raise ValueError("v0 must be nonzero")
    if v0.n != n:
        raise ValueError("v0 length does not match n")
    if n > 5:
        raise ValueError("symbolic determinant is limited to n <= 5")
    nvars = n * n
    xsym = [[MultiPoly.var(nvars, i * n + j) for j in range(n)] for i in range(n)]
    col = [MultiPoly.constant(nvars, v0[i]) for i in range(n)]
    cols = [col]
    for _ in range(n - 1):
        prev = cols[-1]
        nxt = []
        for i in range(n):
            acc = MultiPoly.zero(nvars)
            for j in range(n):
                acc = acc + xsym[i][j] * prev[j]
            nxt.append(acc)
        cols.append(nxt)
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return _poly_det(rows)


def sigma_eval(x: RatMatrix, v0: RatVector) -> Fraction:
    """det of the Krylov matrix of (X, v0); zero iff d(X, v0) < n."""
    if v0.is_zero():
        raise ValueError("v0 must be nonzero")
    return det(RatMatrix.from_columns(krylov_columns(x, v0)))


@dataclass(frozen=True)
class RegularNilpotentPClass:
    """Orbit index p = n - d(X, v0) with a solved preimage X^p w = v0."""

    p_index: int
    witness_w: RatVector


def p_index(x: RatMatrix, v0: RatVector) -> RegularNilpotentPClass:
    """Unique p in [0..n-1] with v0 in im(X^p) \\ im(X^{p+1}), plus a witness.

    Computed as the image-membership maximum and cross-checked against
    n - d(X, v0); the witness automatically avoids ker X^{n-1} (otherwise
    p would not be maximal).
    """
    if v0.is_zero():
        raise ValueError("v0 must be nonzero")
    if not is_regular_nilpotent(x):
        raise ValueError("p_index requires a regular nilpotent matrix")
    n = x.n
    d = krylov_dim(x, v0).d
    best = None
    for k in range(n):
        w = solve(x ** k, v0)
        if w is not None:
            best = (k, w)
    assert best is not None  # k = 0 always solves
    p, w = best
    if p != n - d:
        raise AssertionError("image-membership p disagrees with n - d")
    if n > 1 and ((x ** (n - 1)) @ w).is_zero():
        raise AssertionError("witness unexpectedly lies in ker X^{n-1}")
    if (x ** p) @ w != v0:
        raise AssertionError("witness does not map to v0")
    return RegularNilpotentPClass(p_index=p, witness_w=w)


def _chain_basis(x: RatMatrix, w: RatVector) -> List[RatVector]:
    """(w, Xw, ..., X^{n-1}w); a basis when w avoids ker X^{n-1}."""
    chain = [w]
    for _ in range(x.n - 1):
        chain.append(x @ chain[-1])
    return chain


def conjugator_in_P(x: RatMatrix, x2: RatMatrix, v0: RatVector) -> RatMatrix:
    """g with g v0 = v0 and g X g^{-1} = X2, for equal-p regular nilpotents.

    Both matrices act as the same shift on their chains through v0, so the
    change of basis between the chains conjugates one to the other and
    fixes v0 (which sits at position p in both chains).  Unequal p is an
    error: d(., v0) separates the orbits.
    """
    pc1 = p_index(x, v0)
    pc2 = p_index(x2, v0)
    if pc1.p_index != pc2.p_index:
        raise ValueError(
            f"no conjugator fixing v0 exists: p indices {pc1.p_index} != {pc2.p_index}"
        )
    c1 = RatMatrix.from_columns(_chain_basis(x, pc1.witness_w))
    c2 = RatMatrix.from_columns(_chain_basis(x2, pc2.witness_w))
    g = c2 @ inverse(c1)
    if g @ v0 != v0:
        raise AssertionError("conjugator does not fix v0")
    if g @ x @ inverse(g) != x2:
        raise AssertionError("conjugation check failed")
    return g


@dataclass(frozen=True)
class WitnessPair:
    """Non-central semisimple phi with [phi, X] of rank <= 1 into the v0 line."""

    phi: RatMatrix
    bracket_value: RatMatrix


def _column_line_witness(m: RatMatrix, v0: RatVector) -> Optional[RatVector]:
    """w with m = v0 w^T, or None when some column leaves the v0 line."""
    i0 = next(i for i, e in enumerate(v0.entries) if e != 0)
    w = RatVector([m.rows[i0][j] / v0[i0] for j in range(m.n)])
    return w if RatMatrix.outer(v0, w) == m else None


def semisimple_witness(x: RatMatrix, v0: RatVector, a, b) -> WitnessPair:
    """Two-eigenvalue witness a*I_{V1} + b*I_{V2} for a p >= 1 orbit.

    V1 = span(w, ..., X^{p-1}w) and V2 = span(v0, ..., X^{n-p-1}v0) split
    the space; X maps V1 into V1 + the v0 line and preserves V2, so the
    bracket [phi, X] lands in rank-one matrices onto the v0 line, i.e. in
    the trace-form orthogonal of the stabilizer algebra.
    """
    a, b = rat(a), rat(b)
    if a == b:
        raise ValueError("a = b gives a scalar, which witnesses nothing")
    pc = p_index(x, v0)
    p, n = pc.p_index, x.n
    if p == 0:
        raise ValueError("p = 0 is the dense orbit; no witness is claimed there")
    c = RatMatrix.from_columns(_chain_basis(x, pc.witness_w))
    d_mat = RatMatrix.diagonal([a] * p + [b] * (n - p))
    phi = c @ d_mat @ inverse(c)
    bv = bracket(phi, x)
    if not is_semisimple(phi):
        raise AssertionError("witness is not semisimple")
    if phi == RatMatrix.diagonal([phi.rows[0][0]] * n):
        raise AssertionError("witness is scalar")
    if _column_line_witness(bv, v0) is None:
        raise AssertionError("[phi, X] does not map into the v0 line")
    if rank(bv) > 1:
        raise AssertionError("[phi, X] has rank > 1")
    return WitnessPair(phi=phi, bracket_value=bv)


def orbit_dense_check(x: RatMatrix, v0: RatVector) -> bool:
    """True when the stabilizer orbit of X already has full tangent space.

    For regular nilpotent X this is asserted to coincide with p = 0.
    """
    if v0.is_zero():
        raise ValueError("v0 must be nonzero")
    stab = stabilizer(v0)
    dense = orbit_tangent_dim(x, stab.p) == orbit_tangent_dim(x, full_gl(x.n))
    if is_regular_nilpotent(x):
        assert dense == (p_index(x, v0).p_index == 0)
    return dense


@dataclass(frozen=True)
class StratumSignature:
    """Conjugation-invariant stratum data plus the Krylov index.

    semisimple_part: (degree, multiplicity) pairs of the squarefree
    decomposition of char_poly(S), increasing multiplicity.
    nilpotent_partitions: Jordan partition of N on each primary component,
    in the same order.  krylov_d: d(X, v0).
    """

    semisimple_part: Tuple[Tuple[int, int], ...]
    nilpotent_partitions: Tuple[Tuple[int, ...], ...]
    krylov_d: int


def stratum_signature(x: RatMatrix, v0: RatVector) -> StratumSignature:
    if v0.is_zero():
        raise ValueError("v0 must be nonzero")
    n = x.n
    dec = chevalley(x)
    factors = squarefree_decomposition(char_poly(dec.S))
    if sum(f.degree * m for f, m in factors) != n:
        raise AssertionError("squarefree decomposition does not account for n")
    parts = []
    for f, m in factors:
        proj = poly_eval_mat(f, dec.S) ** m
        comp = kernel_basis(proj)
        k = len(comp)
        assert k == f.degree * m, "primary component dimension is off"
        comp_rows = [[comp[j][i] for j in range(k)] for i in range(n)]
        restricted_cols = []
        for basis_vec in comp:
            coords = solve(comp_rows, dec.N @ basis_vec)
            assert coords is not None, "N does not preserve the primary component"
            restricted_cols.append(coords)
        n_restricted = RatMatrix.from_columns(restricted_cols)
        parts.append(jordan_type(n_restricted).partition)
    return StratumSignature(
        semisimple_part=tuple((f.degree, m) for f, m in factors),
        nilpotent_partitions=tuple(parts),
        krylov_d=krylov_dim(x, v0).d,
    )


def section(v: RatVector, v0: RatVector) -> RatMatrix:
    """Deterministic invertible g with g v0 = v.

    Each vector is completed to a basis by the standard vectors other than
    its first nonzero coordinate; g maps one completion to the other.  For
    v = v0 both completions agree and g is the identity, in particular g
    fixes v0.
    """
    if v0.is_zero() or v.is_zero():
        raise ValueError("section needs nonzero vectors")
    if v.n != v0.n:
        raise ValueError("length mismatch")
    n = v0.n

    def completion(u: RatVector) -> RatMatrix:
        pivot = next(i for i, e in enumerate(u.entries) if e != 0)
        cols = [u] + [RatVector.unit(n, j) for j in range(n) if j != pivot]
        return RatMatrix.from_columns(cols)

    g = completion(v) @ inverse(completion(v0))
    if g @ v0 != v:
        raise AssertionError("section does not map v0 to v")
    if v == v0 and g @ v0 != v0:
        raise AssertionError("section at v = v0 must fix v0")
    return g


def phi_map(x: RatMatrix, v: RatVector, v0: RatVector) -> RatMatrix:
    """Transfer phi(v)^{-1} X phi(v); preserves the Krylov index against v0."""
    g = section(v, v0)
    out = inverse(g) @ x @ g
    assert krylov_dim(out, v0).d == krylov_dim(x, v).d
    return out


def m_genericity(s: RatMatrix, y: RatMatrix) -> bool:
    """det(ad Y) != 0 on the trace-form complement of the centralizer of S.

    S must be semisimple and Y must commute with S.  ad Y preserves the
    complement because the trace form is ad-invariant.
    """
    if not is_semisimple(s):
        raise ValueError("S must be semisimple")
    if s.n != y.n:
        raise ValueError("dimension mismatch")
    if not bracket(s, y).is_zero():
        raise ValueError("Y does not commute with S")
    m = centralizer(s)
    q = _orthogonal_complement(m.basis, s.n)
    if not q:
        return True
    q_rows = [[q[j].rows[i // s.n][i % s.n] for j in range(len(q))] for i in range(s.n * s.n)]
    cols = []
    for qb in q:
        coords = solve(q_rows, vec(bracket(y, qb)))
        assert coords is not None, "ad Y must preserve the complement"
        cols.append(coords)
    return det(RatMatrix.from_columns(cols)) != 0


def project_traceless(x: RatMatrix) -> RatMatrix:
    """X minus its scalar part (tr X / n) I."""
    c = x.trace() / x.n
    return x - RatMatrix.diagonal([c] * x.n)
