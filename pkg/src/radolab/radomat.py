"""Rado-specific matrix procedures: the column condition decider, the
expanded matrix, and the constant-solution criterion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactq import Matrix, Vector, is_zero_vector, norm_scalar, span_member

MAX_COLS = 32


@dataclass(frozen=True)
class ColumnPartitionWitness:
    """Ordered partition (I_1, ..., I_v) of the column indices, 1-based."""

    blocks: tuple

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data: dict) -> "ColumnPartitionWitness":
        return cls(tuple(tuple(int(i) for i in b) for b in data["blocks"]))


@dataclass(frozen=True)
class ExpandedMatrix:
    base: Matrix
    expanded: Matrix


def _reduce(v: list, basis: list) -> list:
    # basis rows are normalised: basis[k] = (pivot_col, row with row[pivot]=1)
    for p, row in basis:
        f = v[p]
        if f != 0:
            v = [a - f * b for a, b in zip(v, row)]
    return v


def _basis_insert(v, basis: list) -> None:
    v = _reduce(list(v), basis)
    for p, e in enumerate(v):
        if e != 0:
            inv = Fraction(1, 1) / e
            row = [norm_scalar(inv * a) for a in v]
            basis.append((p, row))
            basis.sort(key=lambda t: t[0])
            return


def column_condition(A: Matrix):
    """Decide the column condition; return a witness partition or None.

    Dynamic program over subsets U of the column indices: U is reachable iff
    it is a valid union of leading blocks.  This relies on the span of the
    earlier columns depending only on the union of the earlier blocks, not on
    how they were split; the naive oracle cross-validates that reading.
    Returns the witness found first in ascending-mask order (deterministic).
    """
    n = A.n
    if n > MAX_COLS:
        raise ValueError(f"too many columns ({n} > {MAX_COLS})")
    cols = A.cols()
    m = A.m
    full = (1 << n) - 1

    # subset column sums, tuple-valued, built by peeling the lowest bit
    sums = [None] * (full + 1)
    sums[0] = (0,) * m
    for mask in range(1, full + 1):
        low = mask & -mask
        c = cols[low.bit_length() - 1]
        s = sums[mask ^ low]
        sums[mask] = tuple(a + b for a, b in zip(s, c))

    zero = (0,) * m
    # prev[U]: predecessor union (0 = U itself is the first block), -1 unknown
    prev = [-1] * (full + 1)
    reachable = []
    for mask in range(1, full + 1):
        if all(e == 0 for e in sums[mask]):
            prev[mask] = 0
            reachable.append(mask)
    if not reachable:
        return None

    bases = {}  # reachable mask -> reduced basis of its columns

    def basis_of(mask):
        b = bases.get(mask)
        if b is None:
            b = []
            mm = mask
            while mm:
                low = mm & -mm
                _basis_insert(cols[low.bit_length() - 1], b)
                mm ^= low
            bases[mask] = b
        return b

    for mask in range(1, full + 1):
        if prev[mask] != -1:
            continue
        # ascending submask order keeps the result deterministic
        subs = []
        u = (mask - 1) & mask
        while u:
            if prev[u] != -1:
                subs.append(u)
            u = (u - 1) & mask
        for u in reversed(subs):
            j = mask ^ u
            if all(e == 0 for e in _reduce(list(sums[j]), basis_of(u))):
                prev[mask] = u
                break

    if prev[full] == -1:
        return None
    chain = []
    mask = full
    while mask:
        u = prev[mask]
        chain.append(mask ^ u)
        mask = u
    blocks = []
    for blk in reversed(chain):
        idx = tuple(i + 1 for i in range(n) if blk >> i & 1)
        blocks.append(idx)
    return ColumnPartitionWitness(tuple(blocks))


def _ordered_partitions(remaining: int, n: int):
    """All ordered set partitions of the bit set `remaining` into nonempty
    blocks, yielded as lists of masks."""
    if remaining == 0:
        yield []
        return
    masks = []
    u = remaining
    while u:
        masks.append(u)
        u = (u - 1) & remaining
    for first in reversed(masks):
        for rest in _ordered_partitions(remaining ^ first, n):
            yield [first] + rest


def column_condition_naive(A: Matrix):
    """Exhaustive oracle: enumerate ordered set partitions of the column
    indices and check the definition literally.  Guarded to n <= 8."""
    n = A.n
    if n > 8:
        raise ValueError(f"naive decider limited to n <= 8, got {n}")
    cols = A.cols()
    full = (1 << n) - 1

    def block_sum(mask):
        s = None
        for i in range(n):
            if mask >> i & 1:
                c = cols[i]
                s = c if s is None else tuple(a + b for a, b in zip(s, c))
        return s

    def check(partition):
        if not is_zero_vector(block_sum(partition[0])):
            return False
        earlier = partition[0]
        for blk in partition[1:]:
            basis = [cols[i] for i in range(n) if earlier >> i & 1]
            if not span_member(basis, block_sum(blk)):
                return False
            earlier |= blk
        return True

    for partition in _ordered_partitions(full, n):
        if check(partition):
            blocks = tuple(
                tuple(i + 1 for i in range(n) if blk >> i & 1) for blk in partition
            )
            return ColumnPartitionWitness(blocks)
    return None


def validate_witness(A: Matrix, w: ColumnPartitionWitness) -> bool:
    """Re-verify both conditions of the definition, independently of either
    decider's internals."""
    n = A.n
    seen = set()
    for blk in w.blocks:
        if not blk or any(j < 1 or j > n for j in blk):
            return False
        if seen & set(blk):
            return False
        seen |= set(blk)
    if seen != set(range(1, n + 1)):
        return False
    cols = A.cols()

    def bsum(blk):
        s = cols[blk[0] - 1]
        for j in blk[1:]:
            s = tuple(a + b for a, b in zip(s, cols[j - 1]))
        return s

    if not is_zero_vector(bsum(w.blocks[0])):
        return False
    earlier = list(w.blocks[0])
    for blk in w.blocks[1:]:
        basis = [cols[j - 1] for j in earlier]
        if not span_member(basis, bsum(blk)):
            return False
        earlier.extend(blk)
    return True


def expand_matrix(A: Matrix) -> ExpandedMatrix:
    """E(A): keep columns 1..n-1, split the last column into a diagonal block
    of per-row entries a_{i,n}."""
    if A.n < 2:
        raise ValueError("expansion needs n >= 2")
    m, n = A.m, A.n
    rows = []
    for i in range(m):
        row = list(A.rows[i][: n - 1]) + [0] * m
        row[n - 1 + i] = A.rows[i][n - 1]
        rows.append(row)
    return ExpandedMatrix(base=A, expanded=Matrix(rows))


def constant_solution(A: Matrix, b: Vector):
    """d in Q with A (d,...,d)^T = b, or None.  With all row sums zero the
    answer exists iff b = 0 (d = 0 is returned then)."""
    if len(b) != A.m:
        raise ValueError("rhs length must match row count")
    sums = A.row_sums()
    d = None
    for s, t in zip(sums, b):
        if s == 0:
            if t != 0:
                return None
        else:
            cand = norm_scalar(Fraction(t) / Fraction(s))
            if d is None:
                d = cand
            elif d != cand:
                return None
    return 0 if d is None else d


def schur_matrix() -> Matrix:
    return Matrix([[1, 1, -1]])


def van_der_waerden_matrix(m: int) -> Matrix:
    """The m x (m+2) matrix whose kernel encodes (m+1)-term arithmetic
    progressions: row i is (1, i, -e_i)."""
    if m < 1:
        raise ValueError("m >= 1 required")
    rows = []
    for i in range(1, m + 1):
        row = [1, i] + [0] * m
        row[1 + i] = -1
        rows.append(row)
    return Matrix(rows)
