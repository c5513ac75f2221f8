"""Exact rational scalars, vectors and dense matrices.

Scalars are plain ``int`` or ``fractions.Fraction``; the two mix freely and
exactly.  Fractions that reduce to integers are normalised back to ``int`` so
equality is structural and integer-only workloads stay in fast int arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]
Vector = tuple  # tuple of Scalar


def norm_scalar(x: Scalar) -> Scalar:
    """Canonicalise: Fraction with denominator 1 becomes int."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return x
    if isinstance(x, int):
        return x
    raise TypeError(f"not an exact scalar: {x!r}")


def parse_scalar(token: str) -> Scalar:
    """Parse an integer or a 'p/q' fraction token."""
    token = token.strip()
    if "/" in token:
        num, _, den = token.partition("/")
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {token!r}")
        return norm_scalar(Fraction(int(num), d))
    return int(token)


def scalar_str(x: Scalar) -> str:
    return str(x)


def vector(entries: Iterable) -> Vector:
    v = tuple(norm_scalar(e) for e in entries)
    if not v:
        raise ValueError("empty vector")
    return v


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c: Scalar, v: Vector) -> Vector:
    return tuple(norm_scalar(c * a) for a in v)


def is_zero_vector(v: Vector) -> bool:
    return all(a == 0 for a in v)


class Matrix:
    """Dense m x n matrix of exact scalars, row-major and immutable."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, rows: Sequence[Sequence[Scalar]]):
        rws = tuple(tuple(norm_scalar(e) for e in row) for row in rows)
        if not rws or not rws[0]:
            raise ValueError("matrix needs at least one row and one column")
        n = len(rws[0])
        if any(len(r) != n for r in rws):
            raise ValueError("ragged rows")
        object.__setattr__(self, "m", len(rws))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rws)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Matrix is immutable")

    def col(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def cols(self) -> list:
        return [self.col(j) for j in range(self.n)]

    def row_sums(self) -> Vector:
        return tuple(sum(row) for row in self.rows)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.rows]})"

    def to_text(self) -> str:
        return "\n".join(" ".join(scalar_str(e) for e in row) for row in self.rows)

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        """Parse the matrix text format: one row per line, whitespace-separated
        integer or p/q tokens.  Blank lines are ignored."""
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            rows.append([parse_scalar(tok) for tok in line.split()])
        if not rows:
            raise ValueError("empty matrix text")
        return cls(rows)


def mat_vec(A: Matrix, v: Vector) -> Vector:
    if len(v) != A.n:
        raise ValueError("dimension mismatch")
    return tuple(
        norm_scalar(sum(a * x for a, x in zip(row, v))) for row in A.rows
    )


def rank(vectors: Sequence[Vector]) -> int:
    """Rank of a list of vectors, by fraction-free Gaussian elimination.

    Division-free so integer inputs stay in int arithmetic throughout.
    """
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("dimension mismatch")
    rk = 0
    for c in range(ncols):
        piv = None
        for i in range(rk, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        prow = rows[rk]
        p = prow[c]
        for i in range(rk + 1, len(rows)):
            f = rows[i][c]
            if f == 0:
                continue
            ri = rows[i]
            for k in range(c, ncols):
                ri[k] = ri[k] * p - prow[k] * f
        rk += 1
        if rk == len(rows):
            break
    return rk


def span_member(basis: Sequence[Vector], v: Vector) -> bool:
    """True iff v lies in the rational span of the given vectors.

    The empty basis spans only the zero vector.
    """
    dim = len(v)
    if any(len(b) != dim for b in basis):
        raise ValueError("dimension mismatch")
    if not basis:
        return is_zero_vector(v)
    base = list(basis)
    return rank(base) == rank(base + [v])


def rref(A: Matrix) -> tuple:
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns)."""
    rows = [[Fraction(e) for e in row] for row in A.rows]
    pivots = []
    r = 0
    for c in range(A.n):
        piv = None
        for i in range(r, A.m):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [e / p for e in rows[r]]
        for i in range(A.m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == A.m:
            break
    out = tuple(tuple(norm_scalar(e) for e in row) for row in rows)
    return out, pivots


def kernel_basis(A: Matrix) -> list:
    """Basis of the rational null space of A, from the reduced echelon
    parametrisation (one basis vector per free column).  Empty list iff the
    kernel is trivial."""
    rows, pivots = rref(A)
    free = [c for c in range(A.n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * A.n
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = norm_scalar(-Fraction(rows[i][f]))
        basis.append(tuple(v))
    return basis


def matrix_rank(A: Matrix) -> int:
    return rank(list(A.rows))
