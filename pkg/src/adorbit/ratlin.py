"""Exact rational linear algebra kernel.

Scalars are ``fractions.Fraction`` throughout, so every result is exact and
every downstream check is a true equality, never a tolerance test.  Matrices
act on column vectors.  ``RatMatrix`` is square by construction; the
elimination helpers (``rank``, ``kernel_basis``, ``solve``) also accept
rectangular row lists.

Determinism: elimination always picks the first nonzero pivot in column
order, and kernel vectors are emitted in ascending free-variable order, so
outputs are reproducible byte for byte.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union


Rational = Fraction


def rat(x) -> Fraction:
    """Coerce an int, a "num/den" string, or a Fraction to a Fraction.

    Floats are rejected: inexact input would silently break the exactness
    guarantees of everything built on top.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class RatVector:
    """Immutable vector with exact rational entries."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        self.entries = tuple(rat(e) for e in entries)
        if not self.entries:
            raise ValueError("vector must have at least one entry")

    @classmethod
    def zero(cls, n: int) -> "RatVector":
        return cls([0] * n)

    @classmethod
    def unit(cls, n: int, i: int) -> "RatVector":
        """Standard basis vector e_i (0-indexed)."""
        return cls([1 if j == i else 0 for j in range(n)])

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __add__(self, other: "RatVector") -> "RatVector":
        self._check_dim(other)
        return RatVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "RatVector") -> "RatVector":
        self._check_dim(other)
        return RatVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "RatVector":
        return RatVector(-a for a in self.entries)

    def __mul__(self, c) -> "RatVector":
        c = rat(c)
        return RatVector(a * c for a in self.entries)

    __rmul__ = __mul__

    def dot(self, other: "RatVector") -> Fraction:
        self._check_dim(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def _check_dim(self, other: "RatVector") -> None:
        if len(self.entries) != len(other.entries):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatVector):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"RatVector({[str(e) for e in self.entries]})"


class RatMatrix:
    """Immutable square matrix over the rationals.

    Rows are stored as a tuple of tuples; ``M[i]`` is row i.  ``@`` is
    matrix product (or matrix-vector product when applied to a RatVector),
    ``*`` is scalar multiplication.
    """

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(rat(e) for e in row) for row in rows)
        self.n = len(self.rows)
        if self.n == 0:
            raise ValueError("matrix must have dimension >= 1")
        for row in self.rows:
            if len(row) != self.n:
                raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "RatMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "RatMatrix":
        ent = [rat(e) for e in entries]
        n = len(ent)
        return cls([[ent[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "RatMatrix":
        """Elementary matrix E_ij (0-indexed)."""
        return cls([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)])

    @classmethod
    def outer(cls, u: RatVector, v: RatVector) -> "RatMatrix":
        """Rank-<=1 matrix u v^T."""
        if len(u) != len(v):
            raise ValueError("outer product needs equal lengths")
        return cls([[a * b for b in v] for a in u])

    @classmethod
    def from_columns(cls, cols: Sequence[RatVector]) -> "RatMatrix":
        n = len(cols)
        if any(len(c) != n for c in cols):
            raise ValueError("from_columns needs n vectors of length n")
        return cls([[cols[j][i] for j in range(n)] for i in range(n)])

    def __getitem__(self, i: int):
        return self.rows[i]

    def column(self, j: int) -> RatVector:
        return RatVector(row[j] for row in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.n)]

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_dim(other)
        return RatMatrix(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_dim(other)
        return RatMatrix(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(tuple(-a for a in row) for row in self.rows)

    def __mul__(self, c) -> "RatMatrix":
        c = rat(c)
        return RatMatrix(tuple(a * c for a in row) for row in self.rows)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, RatVector):
            if other.n != self.n:
                raise ValueError("matrix-vector dimension mismatch")
            return RatVector(
                sum((a * b for a, b in zip(row, other.entries)), Fraction(0))
                for row in self.rows
            )
        if isinstance(other, RatMatrix):
            self._check_dim(other)
            n = self.n
            cols = list(zip(*other.rows))
            return RatMatrix(
                tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
                for row in self.rows
            )
        return NotImplemented

    def __pow__(self, k: int) -> "RatMatrix":
        if k < 0:
            raise ValueError("negative matrix powers are not supported; invert first")
        result = RatMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows))

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.rows for a in row)

    def _check_dim(self, other: "RatMatrix") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in row) for row in self.rows)
        return f"RatMatrix[{body}]"


MatrixLike = Union[RatMatrix, Sequence[Sequence]]


def _as_rows(m: MatrixLike) -> list:
    """Normalize a RatMatrix or a rectangular row list to lists of Fractions."""
    if isinstance(m, RatMatrix):
        return [list(row) for row in m.rows]
    rows = [[rat(e) for e in row] for row in m]
    if not rows or not rows[0]:
        raise ValueError("empty matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged rows")
    return rows


def vec(m: RatMatrix) -> RatVector:
    """Row-major flattening of a matrix to a vector of length n^2."""
    return RatVector(e for row in m.rows for e in row)


def unvec(v: RatVector, n: int) -> RatMatrix:
    if len(v) != n * n:
        raise ValueError("vector length is not n^2")
    return RatMatrix(tuple(v.entries[i * n:(i + 1) * n]) for i in range(n))


def rank(m: MatrixLike) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers (rank-preserving); the Bareiss update
    keeps all intermediate entries integral, with every division exact.
    """
    rows = _as_rows(m)
    work = []
    for row in rows:
        scale = math.lcm(*(e.denominator for e in row)) if row else 1
        work.append([int(e * scale) for e in row])
    nrows, ncols = len(work), len(work[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            work[r], work[piv] = work[piv], work[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                num = work[r][c] * work[i][j] - work[i][c] * work[r][j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss exact-division invariant violated"
                work[i][j] = q
            work[i][c] = 0
        prev = work[r][c]
        r += 1
        if r == nrows:
            break
    return r


def rref(m: MatrixLike):
    """Reduced row echelon form over Q.

    Returns ``(rows, pivots)`` where ``pivots`` lists the pivot column of
    each nonzero row in order.
    """
    rows = _as_rows(m)
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def kernel_basis(m: MatrixLike) -> list:
    """Basis of the null space, one vector per free column.

    Vectors are emitted in ascending free-variable order, taken from the
    reduced row echelon form, so the basis is canonical for a given input.
    """
    rows, pivots = rref(m)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        entries = [Fraction(0)] * ncols
        entries[f] = Fraction(1)
        for r, p in enumerate(pivots):
            entries[p] = -rows[r][f]
        basis.append(RatVector(entries))
    return basis


def solve(m: MatrixLike, b: RatVector) -> Optional[RatVector]:
    """One exact solution of M x = b, or None when inconsistent.

    Free variables are set to zero, so the returned solution is canonical.
    """
    rows = _as_rows(m)
    if len(rows) != len(b):
        raise ValueError("right-hand side length mismatch")
    ncols = len(rows[0])
    aug = [row + [be] for row, be in zip(rows, b.entries)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    entries = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        entries[p] = red[r][ncols]
    return RatVector(entries)


def det(m: RatMatrix) -> Fraction:
    """Exact determinant by Gaussian elimination with pivot bookkeeping."""
    rows = [list(row) for row in m.rows]
    n = m.n
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        result *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[c])]
    return result * sign


def inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse; raises ValueError on singular input."""
    n = m.n
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return RatMatrix(tuple(red[i][n:]) for i in range(n))


class RatPoly:
    """Univariate polynomial over Q, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1;
    otherwise the leading coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls([])

    @classmethod
    def constant(cls, c) -> "RatPoly":
        return cls([c])

    @classmethod
    def t(cls) -> "RatPoly":
        """The monomial t."""
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "RatPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, RatPoly):
            if self.is_zero() or other.is_zero():
                return RatPoly.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return RatPoly(out)
        return RatPoly(c * rat(other) for c in self.coeffs)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RatPoly":
        if k < 0:
            raise ValueError("negative power")
        result = RatPoly.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: "RatPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        if self.degree < dq:
            return RatPoly.zero(), RatPoly(rem)
        quot = [Fraction(0)] * (self.degree - dq + 1)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c / lead
            quot[i - dq] = f
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= f * b
        return RatPoly(quot), RatPoly(rem)

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return divmod(self, other)[0]

    def derivative(self) -> "RatPoly":
        return RatPoly(c * i for i, c in enumerate(self.coeffs) if i >= 1)

    def monic(self) -> "RatPoly":
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        inv = 1 / self.coeffs[-1]
        return RatPoly(c * inv for c in self.coeffs)

    def eval(self, x) -> Fraction:
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                mono = str(abs(c))
            else:
                var = "t" if i == 1 else f"t^{i}"
                mono = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not parts:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"+ {mono}" if c > 0 else f"- {mono}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"RatPoly({[str(c) for c in self.coeffs]})"


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd over Q (Euclidean algorithm)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_ext_gcd(a: RatPoly, b: RatPoly):
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = a, b
    u0, u1 = RatPoly.constant(1), RatPoly.zero()
    v0, v1 = RatPoly.zero(), RatPoly.constant(1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero():
        return r0, u0, v0
    lead = r0.leading
    inv = 1 / lead
    return r0.monic(), u0 * inv, v0 * inv


def squarefree_part(p: RatPoly) -> RatPoly:
    """p / gcd(p, p'), made monic; rejects the zero polynomial."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial is undefined")
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.monic()
    q, r = divmod(p, g)
    assert r.is_zero()
    return q.monic()


def squarefree_decomposition(p: RatPoly) -> list:
    """Yun decomposition: pairs (factor, multiplicity) with p ~ prod f_i^{m_i}.

    Factors are monic, squarefree, pairwise coprime, and listed in
    increasing multiplicity; factors of degree zero are omitted.
    """
    if p.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        f = poly_gcd(b, d)
        if f.degree > 0:
            out.append((f, i))
        b, rem = divmod(b, f)
        assert rem.is_zero()
        c = d // f
        d = c - b.derivative()
        i += 1
    return out


def poly_eval_mat(p: RatPoly, m: RatMatrix) -> RatMatrix:
    """Horner evaluation of p at a square matrix."""
    acc = RatMatrix.zero(m.n)
    for c in reversed(p.coeffs):
        acc = acc @ m + RatMatrix.diagonal([c] * m.n)
    return acc


def char_poly(m: RatMatrix) -> RatPoly:
    """Monic characteristic polynomial det(tI - M).

    Uses the Faddeev-LeVerrier recurrence: the only divisions are by the
    step index, which are exact, so the computation is deterministic and
    never hits a zero pivot.
    """
    n = m.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    b = m
    for k in range(1, n + 1):
        a_k = -b.trace() / k
        coeffs[n - k] = a_k
        if k < n:
            b = m @ (b + RatMatrix.diagonal([a_k] * n))
    return RatPoly(coeffs)


def minimal_poly(m: RatMatrix) -> RatPoly:
    """Monic minimal polynomial.

    Found as the first linear dependence among I, M, M^2, ...; existence by
    degree n is guaranteed by Cayley-Hamilton.
    """
    n = m.n
    powers = [RatMatrix.identity(n)]
    for k in range(1, n + 1):
        powers.append(powers[-1] @ m)
        cols = [vec(p) for p in powers[:k]]
        rows_t = [[cols[j][i] for j in range(k)] for i in range(n * n)]
        sol = solve(rows_t, vec(powers[k]))
        if sol is not None:
            return RatPoly(list(-c for c in sol.entries) + [1])
    raise AssertionError("unreachable: Cayley-Hamilton guarantees degree <= n")
