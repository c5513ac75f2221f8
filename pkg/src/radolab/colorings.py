"""Finite colorings of [1..N], finite-sums/products structures, regular
families, and the finite witness searches built on them."""

from __future__ import annotations

import random as _random
from dataclasses import dataclass
from itertools import product as _iproduct

from .polyring import Poly

MAX_SEQ = 20
MAX_SELECTORS = 10**6


class ColoringTooShort(ValueError):
    """A structure element fell outside [1..N]; the verdict is 'range too
    small', which is distinct from a color mismatch."""


@dataclass(frozen=True)
class Coloring:
    """Colors 0..r-1 assigned to the integers 1..N."""

    N: int
    r: int
    colors: tuple

    def __post_init__(self):
        if self.N < 1 or self.r < 1:
            raise ValueError("N and r must be positive")
        if len(self.colors) != self.N:
            raise ValueError("color array length must be N")
        if any(c < 0 or c >= self.r for c in self.colors):
            raise ValueError("color out of range")

    def color_of(self, k: int) -> int:
        if k < 1 or k > self.N:
            raise ColoringTooShort(f"{k} outside [1..{self.N}]")
        return self.colors[k - 1]

    def classes(self) -> list:
        out = [[] for _ in range(self.r)]
        for k, c in enumerate(self.colors, start=1):
            out[c].append(k)
        return out

    def to_text(self) -> str:
        return f"{self.N} {self.r}\n" + " ".join(str(c) for c in self.colors) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Coloring":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) < 2:
            raise ValueError("coloring file needs a header line and a color line")
        n_str, r_str = lines[0].split()
        colors = tuple(int(t) for t in " ".join(lines[1:]).split())
        return cls(N=int(n_str), r=int(r_str), colors=colors)


def all_one_coloring(N: int) -> Coloring:
    return Coloring(N=N, r=1, colors=(0,) * N)


def parity_coloring(N: int) -> Coloring:
    return Coloring(N=N, r=2, colors=tuple(k % 2 for k in range(1, N + 1)))


def random_coloring(N: int, r: int, seed: int) -> Coloring:
    rng = _random.Random(seed)
    return Coloring(N=N, r=r, colors=tuple(rng.randrange(r) for _ in range(N)))


# ---------------------------------------------------------------------------
# FS / FP structures


def fs(seq) -> set:
    """All finite sums over nonempty index subsets of the sequence."""
    seq = list(seq)
    _check_seq(seq)
    out = set()
    for x in seq:
        out |= {s + x for s in out}
        out.add(x)
    return out


def fp(seq) -> set:
    """All finite products over nonempty index subsets of the sequence."""
    seq = list(seq)
    _check_seq(seq)
    out = set()
    for x in seq:
        out |= {s * x for s in out}
        out.add(x)
    return out


def _check_seq(seq):
    if not seq:
        raise ValueError("empty sequence")
    if len(seq) > MAX_SEQ:
        raise ValueError(f"sequence longer than {MAX_SEQ}")
    if any(x < 1 for x in seq):
        raise ValueError("entries must be positive")


def _sets_selectors(sets):
    sets = [sorted(s) for s in sets]
    if not sets or any(not s for s in sets):
        raise ValueError("need nonempty sets")
    total = 1
    for s in sets:
        total *= len(s)
        if total > MAX_SELECTORS:
            raise ValueError("too many selector tuples")
    return _iproduct(*sets)


def fs_sets(sets) -> set:
    """Union of FS over every selector tuple (one element per set)."""
    out = set()
    for tup in _sets_selectors(sets):
        out |= fs(tup)
    return out


def fp_sets(sets) -> set:
    """Union of FP over every selector tuple (one element per set)."""
    out = set()
    for tup in _sets_selectors(sets):
        out |= fp(tup)
    return out


def mixed_structure(a_seq, b_seq, n_limit: int = None) -> set:
    """Union over m = 1..N of the elementwise products
    FS(a_1..a_m) * FP(b_m..b_N)."""
    a_seq, b_seq = list(a_seq), list(b_seq)
    if len(a_seq) != len(b_seq):
        raise ValueError("sequences must have equal length")
    n = len(a_seq)
    if n_limit is not None and n_limit != n:
        raise ValueError("n_limit must equal the sequence length")
    _check_seq(a_seq)
    _check_seq(b_seq)
    out = set()
    for m in range(1, n + 1):
        left = fs(a_seq[:m])
        right = fp(b_seq[m - 1 :])
        out |= {f * g for f in left for g in right}
    return out


@dataclass(frozen=True)
class FSFPWitness:
    a_seq: tuple
    b_seq: tuple
    color: int


def witness_structure(w: FSFPWitness) -> set:
    return fs(w.a_seq) | fp(w.b_seq) | mixed_structure(w.a_seq, w.b_seq)


def verify_fsfp(w: FSFPWitness, c: Coloring) -> bool:
    """True iff FS(a), FP(b), and the mixed products all carry w.color.
    Raises ColoringTooShort when any element exceeds the coloring range."""
    elems = witness_structure(w)
    too_big = [e for e in elems if e > c.N]
    if too_big:
        raise ColoringTooShort(f"elements {sorted(too_big)[:5]} outside [1..{c.N}]")
    return all(c.color_of(e) == w.color for e in elems)


def search_fsfp(c: Coloring, depth: int):
    """Depth-first search for a-/b-sequences of the target length whose full
    structure is monochromatic inside [1..N].  Returns the first witness in
    lexicographic order (a_1, ..., a_depth, b_1, ..., b_depth), or None.

    Absence means only that no witness fits inside [1..N]; the result says
    nothing about larger ranges.
    """
    if depth < 1 or depth > 4:
        raise ValueError("depth must be in 1..4")
    N = c.N

    def extend_a(a_seq):
        if len(a_seq) == depth:
            yield tuple(a_seq)
            return
        start = 1
        total = sum(a_seq)
        for x in range(start, N - total + 1):
            a_seq.append(x)
            yield from extend_a(a_seq)
            a_seq.pop()

    def a_ok(a_seq, color):
        for e in fs(a_seq):
            if e > N or c.colors[e - 1] != color:
                return False
        return True

    def extend_b(a_seq, color, b_seq):
        if len(b_seq) == depth:
            w = FSFPWitness(a_seq=a_seq, b_seq=tuple(b_seq), color=color)
            try:
                if verify_fsfp(w, c):
                    return w
            except ColoringTooShort:
                return None
            return None
        prod = 1
        for b in b_seq:
            prod *= b
        # every a_1 * b_1...b_k product must stay in range
        cap = N // max(prod * a_seq[0], prod)
        for y in range(1, cap + 1):
            # partial structure pruning: FP of b-prefix and the products of
            # FS(a-prefixes) with FP(b-suffixes) chosen so far stay subsets of
            # the final structure, so any off-color partial kills the branch
            b_seq.append(y)
            if _partial_ok(a_seq, b_seq, color):
                w = extend_b(a_seq, color, b_seq)
                if w is not None:
                    b_seq.pop()
                    return w
            b_seq.pop()
        return None

    def _partial_ok(a_seq, b_seq, color):
        for e in fp(b_seq):
            if e > N or c.colors[e - 1] != color:
                return False
        for m in range(1, len(b_seq) + 1):
            right = fp(b_seq[m - 1 :])
            for f in fs(a_seq[:m]):
                for g in right:
                    e = f * g
                    if e > N or c.colors[e - 1] != color:
                        return False
        return True

    for a_seq in extend_a([]):
        color = c.colors[a_seq[0] - 1]
        if not a_ok(a_seq, color):
            continue
        w = extend_b(a_seq, color, [])
        if w is not None:
            return w
    return None


# ---------------------------------------------------------------------------
# regular families


@dataclass(frozen=True)
class FiniteFamily:
    """One of the concrete regular-family generators: ap(l) gives arithmetic
    progressions of length l+1, gp(m) geometric progressions of length m with
    integer ratio >= 2, sum-singletons(k) / product-singletons(k) the
    singleton k-fold sums / products, explicit an explicit member list."""

    kind: str
    param: int = 0
    members: tuple = ()

    def __post_init__(self):
        kinds = ("ap", "gp", "sum-singletons", "product-singletons", "explicit")
        if self.kind not in kinds:
            raise ValueError(f"unknown family kind {self.kind!r}")


def regular_family_members(fam: FiniteFamily, N: int):
    """Enumerate the family's members inside [1..N] (deterministic order)."""
    if fam.kind == "explicit":
        for s in fam.members:
            if all(1 <= x <= N for x in s):
                yield frozenset(s)
        return
    if fam.kind == "ap":
        l = fam.param
        if l < 1:
            raise ValueError("ap family needs l >= 1")
        for a in range(1, N + 1):
            for d in range(1, (N - a) // l + 1):
                yield frozenset(a + i * d for i in range(l + 1))
        return
    if fam.kind == "gp":
        m = fam.param
        if m < 1:
            raise ValueError("gp family needs m >= 1")
        if m == 1:
            for cstart in range(1, N + 1):
                yield frozenset({cstart})
            return
        for cstart in range(1, N + 1):
            q = 2
            while cstart * q ** (m - 1) <= N:
                yield frozenset(cstart * q**i for i in range(m))
                q += 1
        return
    k = fam.param
    if k < 1:
        raise ValueError("family needs k >= 1")
    if fam.kind == "sum-singletons":
        for s in range(k, N + 1):
            yield frozenset({s})
        return
    # product-singletons: every s in [1..N] is a product of k naturals
    # (pad with ones)
    for s in range(1, N + 1):
        yield frozenset({s})


# ---------------------------------------------------------------------------
# polynomial van der Waerden witness search


def poly_vdw_witness(c: Coloring, polys):
    """Find a, d >= 1 with {a} union {a + P(d)} monochromatic inside [1..N].
    Search order: increasing a + d, then increasing a.  Returns
    (a, d, color) or None."""
    polys = list(polys)
    N = c.N
    for s in range(2, 2 * N + 1):
        for a in range(max(1, s - N), min(N, s - 1) + 1):
            d = s - a
            color = c.colors[a - 1]
            ok = True
            for p in polys:
                v = a + p.eval(d)
                if isinstance(v, int):
                    iv = v
                else:
                    if v.denominator != 1:
                        ok = False
                        break
                    iv = int(v)
                if iv < 1 or iv > N or c.colors[iv - 1] != color:
                    ok = False
                    break
            if ok:
                return (a, d, color)
    return None


# ---------------------------------------------------------------------------
# the base-p avoider coloring


class RadoAvoider:
    """The classical falsification device for a single non-regular equation:
    color n by its least significant nonzero digit in base p (r = p - 1
    colors).  Admissible only when no nonempty subset of the coefficients
    sums to 0 mod p."""

    def __init__(self, coeffs, p: int):
        coeffs = [int(c) for c in coeffs]
        if not coeffs or any(c == 0 for c in coeffs):
            raise ValueError("coefficients must be nonzero")
        if p < 2:
            raise ValueError("p must be at least 2")
        bad = _zero_subset_mod(coeffs, p)
        if bad is not None:
            raise ValueError(
                f"subset {bad} of coefficients sums to 0 mod {p}; "
                "the avoider construction does not apply"
            )
        self.coeffs = tuple(coeffs)
        self.p = p
        self.r = p - 1

    def color_of(self, n: int) -> int:
        if n < 1:
            raise ValueError("n must be positive")
        p = self.p
        while n % p == 0:
            n //= p
        return n % p - 1

    def coloring(self, N: int) -> Coloring:
        return Coloring(N=N, r=self.r, colors=tuple(self.color_of(k) for k in range(1, N + 1)))


def _zero_subset_mod(coeffs, p):
    n = len(coeffs)
    for mask in range(1, 1 << n):
        total = 0
        sub = []
        for i in range(n):
            if mask >> i & 1:
                total += coeffs[i]
                sub.append(coeffs[i])
        if total % p == 0:
            return sub
    return None


def rado_avoider_coloring(coeffs, p: int) -> RadoAvoider:
    """Validate the precondition and hand back a lazily evaluable coloring
    generator."""
    return RadoAvoider(coeffs, p)
