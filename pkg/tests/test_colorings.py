"""Tests for colorings, FS/FP structures, regular families, witness search,
and the base-p avoider coloring."""

import itertools
import random

import pytest

from radolab.colorings import (
    Coloring,
    ColoringTooShort,
    FiniteFamily,
    FSFPWitness,
    RadoAvoider,
    all_one_coloring,
    fp,
    fp_sets,
    fs,
    fs_sets,
    mixed_structure,
    parity_coloring,
    poly_vdw_witness,
    rado_avoider_coloring,
    random_coloring,
    regular_family_members,
    search_fsfp,
    verify_fsfp,
    witness_structure,
)
from radolab.polyring import poly_parse


# ---------------------------------------------------------------------------
# Coloring basics


def test_coloring_basics():
    c = Coloring(N=4, r=2, colors=(0, 1, 0, 1))
    assert c.color_of(1) == 0
    assert c.color_of(4) == 1
    assert c.classes() == [[1, 3], [2, 4]]


def test_coloring_invariants():
    with pytest.raises(ValueError):
        Coloring(N=3, r=2, colors=(0, 1))
    with pytest.raises(ValueError):
        Coloring(N=2, r=2, colors=(0, 2))


def test_coloring_out_of_range():
    c = all_one_coloring(5)
    with pytest.raises(ColoringTooShort):
        c.color_of(6)
    with pytest.raises(ColoringTooShort):
        c.color_of(0)


def test_coloring_file_round_trip():
    c = random_coloring(10, 3, seed=5)
    back = Coloring.from_text(c.to_text())
    assert back == c
    assert c.to_text().splitlines()[0] == "10 3"


def test_random_coloring_deterministic():
    assert random_coloring(50, 4, seed=9) == random_coloring(50, 4, seed=9)


def test_parity_coloring():
    c = parity_coloring(6)
    assert [c.color_of(k) for k in range(1, 7)] == [1, 0, 1, 0, 1, 0]


# ---------------------------------------------------------------------------
# FS / FP


def _fs_recursive(seq):
    """Independent recursive finite-sums enumeration."""
    if len(seq) == 1:
        return {seq[0]}
    rest = _fs_recursive(seq[1:])
    return {seq[0]} | rest | {seq[0] + x for x in rest}


def _fp_recursive(seq):
    if len(seq) == 1:
        return {seq[0]}
    rest = _fp_recursive(seq[1:])
    return {seq[0]} | rest | {seq[0] * x for x in rest}


def test_fs_examples():
    assert fs((1, 2)) == {1, 2, 3}
    assert fs((1, 1)) == {1, 2}
    assert fs((1, 2, 4)) == set(range(1, 8))


def test_fp_examples():
    assert fp((2, 3)) == {2, 3, 6}
    assert fp((1, 1, 1)) == {1}
    assert fp((2, 3, 5)) == {2, 3, 5, 6, 10, 15, 30}


def test_fs_fp_against_recursive_oracle():
    rng = random.Random(77)
    for _ in range(200):
        seq = tuple(rng.randint(1, 9) for _ in range(rng.randint(1, 5)))
        assert fs(seq) == _fs_recursive(seq)
        assert fp(seq) == _fp_recursive(seq)


def test_fs_guards():
    with pytest.raises(ValueError):
        fs(())
    with pytest.raises(ValueError):
        fs(tuple(range(1, 22)))


def test_fs_sets_examples():
    assert fs_sets(({1, 2}, {10})) == {1, 2, 10, 11, 12}
    assert fs_sets(({5},)) == {5}
    assert fp_sets(({2}, {3, 4})) == {2, 3, 4, 6, 8}


def test_fs_sets_is_union_over_selectors():
    rng = random.Random(78)
    for _ in range(50):
        sets = tuple(
            frozenset(rng.randint(1, 6) for _ in range(rng.randint(1, 3)))
            for _ in range(rng.randint(1, 3))
        )
        expect_fs = set()
        expect_fp = set()
        for choice in itertools.product(*sets):
            expect_fs |= fs(choice)
            expect_fp |= fp(choice)
        assert fs_sets(sets) == expect_fs
        assert fp_sets(sets) == expect_fp


def test_mixed_structure_examples():
    assert mixed_structure((1, 2), (2, 3)) == {2, 3, 6, 9}
    assert mixed_structure((1,), (5,)) == {5}
    assert mixed_structure((1, 1), (1, 1)) == {1, 2}


def test_mixed_structure_contains_last_term_products():
    rng = random.Random(79)
    for _ in range(50):
        k = rng.randint(1, 4)
        a = tuple(rng.randint(1, 5) for _ in range(k))
        b = tuple(rng.randint(1, 5) for _ in range(k))
        got = mixed_structure(a, b)
        assert {s * b[-1] for s in fs(a)} <= got


def test_witness_distributivity_identity():
    # (a1 + a2) * b2 appears in the mixed structure and splits as
    # a1*b2 + a2*b2: the sum-equals-product pattern on witness elements.
    a = (1, 2)
    b = (2, 3)
    got = mixed_structure(a, b)
    assert (a[0] + a[1]) * b[1] in got
    assert (a[0] + a[1]) * b[1] == a[0] * b[1] + a[1] * b[1]


# ---------------------------------------------------------------------------
# witness verification and search


def test_verify_fsfp_monochromatic_universe():
    c = all_one_coloring(20)
    w = FSFPWitness(a_seq=(1, 2), b_seq=(2, 3), color=0)
    assert verify_fsfp(w, c)


def test_verify_fsfp_detects_mixed_element():
    # 9 = (1+2)*3 is in the mixed structure; recolor it.
    colors = [0] * 20
    colors[8] = 1
    c = Coloring(N=20, r=2, colors=tuple(colors))
    w = FSFPWitness(a_seq=(1, 2), b_seq=(2, 3), color=0)
    assert not verify_fsfp(w, c)


def test_verify_fsfp_short_coloring():
    c = all_one_coloring(5)
    w = FSFPWitness(a_seq=(1, 2), b_seq=(2, 3), color=0)
    with pytest.raises(ColoringTooShort):
        verify_fsfp(w, c)


def test_verify_fsfp_length_one_is_mult_schur():
    # {x, y, x*y} monochromatic
    colors = tuple(0 if k + 1 in (2, 3, 6) else 1 for k in range(10))
    c = Coloring(N=10, r=2, colors=colors)
    assert verify_fsfp(FSFPWitness(a_seq=(2,), b_seq=(3,), color=0), c)
    assert not verify_fsfp(FSFPWitness(a_seq=(2,), b_seq=(5,), color=0), c)


def test_verify_fsfp_monotone_under_agreement():
    c = random_coloring(30, 2, seed=11)
    w = search_fsfp(c, 1)
    if w is None:
        pytest.skip("no witness at this scale for this seed")
    extended = Coloring(N=40, r=2, colors=c.colors + tuple([0] * 10))
    assert verify_fsfp(w, extended)


def test_search_fsfp_all_one():
    c = all_one_coloring(100)
    w = search_fsfp(c, 2)
    assert w is not None
    assert verify_fsfp(w, c)


def test_search_fsfp_parity_small():
    # the degenerate witness a=(1), b=(1) has structure {1}, which is
    # monochromatic under any coloring
    c = parity_coloring(4)
    w = search_fsfp(c, 1)
    assert w == FSFPWitness(a_seq=(1,), b_seq=(1,), color=1)
    assert verify_fsfp(w, c)
    # the mult-Schur witness from a hand check is also valid
    assert verify_fsfp(FSFPWitness(a_seq=(2,), b_seq=(2,), color=0), c)


def test_search_fsfp_absent_when_too_small():
    # at depth 2 every candidate structure inside [1..2] contains both
    # 1 and 2, and parity separates them
    c = parity_coloring(2)
    assert search_fsfp(c, 2) is None


def test_search_fsfp_depth_guard():
    with pytest.raises(ValueError):
        search_fsfp(all_one_coloring(10), 5)


def test_search_fsfp_returns_lexicographically_least():
    c = all_one_coloring(50)
    w = search_fsfp(c, 1)
    assert (w.a_seq, w.b_seq) == ((1,), (1,))


def test_witness_structure_matches_pieces():
    w = FSFPWitness(a_seq=(1, 2), b_seq=(2, 3), color=0)
    assert witness_structure(w) == fs((1, 2)) | fp((2, 3)) | mixed_structure(
        (1, 2), (2, 3)
    )


# ---------------------------------------------------------------------------
# regular families


def test_family_ap():
    members = list(regular_family_members(FiniteFamily(kind="ap", param=2), 5))
    assert {1, 2, 3} in members
    assert {1, 3, 5} in members
    assert {3, 4, 5} in members
    assert all(len(m) == 3 for m in members)


def test_family_gp():
    members = list(regular_family_members(FiniteFamily(kind="gp", param=2), 10))
    assert {2, 4} in members
    assert {3, 9} in members
    assert {1, 2} in members
    for m in members:
        lo, hi = sorted(m)
        assert hi % lo == 0 and hi // lo >= 2


def test_family_sum_singletons():
    members = list(regular_family_members(FiniteFamily(kind="sum-singletons", param=2), 5))
    assert members == [{2}, {3}, {4}, {5}]


def test_family_product_singletons():
    members = list(
        regular_family_members(FiniteFamily(kind="product-singletons", param=2), 10)
    )
    # every n <= 10 is a 2-fold product via 1*n
    assert sorted(min(m) for m in set(members)) == list(range(1, 11))


def test_family_explicit():
    fam = FiniteFamily(kind="explicit", param=None, members=({1, 2}, {2, 3, 50}))
    assert list(regular_family_members(fam, 10)) == [{1, 2}]


# ---------------------------------------------------------------------------
# polynomial van der Waerden witnesses


def test_poly_vdw_all_two_colorings_of_5():
    # F = {z}: every 2-coloring of [1..5] admits a, d with a and a+d
    # the same color.
    for colors in itertools.product(range(2), repeat=5):
        c = Coloring(N=5, r=2, colors=colors)
        got = poly_vdw_witness(c, [poly_parse("z")])
        assert got is not None
        a, d, color = got
        assert c.color_of(a) == color and c.color_of(a + d) == color


def test_poly_vdw_all_one():
    got = poly_vdw_witness(all_one_coloring(10), [poly_parse("z"), poly_parse("2z")])
    assert got == (1, 1, 0)


def test_poly_vdw_absent_on_tiny_parity():
    assert poly_vdw_witness(parity_coloring(2), [poly_parse("z^2")]) is None


def test_poly_vdw_search_order():
    # increasing a+d, then a: with F={z} on an all-one coloring the first
    # candidate is a=1, d=1.
    assert poly_vdw_witness(all_one_coloring(4), [poly_parse("z")]) == (1, 1, 0)


# ---------------------------------------------------------------------------
# base-p avoider


def test_avoider_accepts_valid_coeffs():
    av = RadoAvoider((1, 1, -3), 5)
    assert av.color_of(7) == 1


def test_avoider_rejects_zero_subset():
    for p in (2, 3, 5, 7):
        with pytest.raises(ValueError):
            RadoAvoider((1, 1, -2), p)


def test_avoider_digit_colors():
    av = RadoAvoider((1, 1, -3), 5)
    # color is the least significant nonzero base-5 digit, minus one
    assert av.color_of(1) == 0
    assert av.color_of(5) == 0  # 10 base 5
    assert av.color_of(15) == 2  # 30 base 5
    assert av.color_of(50) == 1  # 200 base 5
    assert av.r == 4


def test_avoider_coloring_matches_color_of():
    av = RadoAvoider((1, 1, -3), 5)
    c = rado_avoider_coloring((1, 1, -3), 5).coloring(200)
    assert c.N == 200 and c.r == 4
    assert all(c.color_of(k) == av.color_of(k) for k in range(1, 201))


def test_avoider_blocks_small_solutions_directly():
    # brute force x + y = 3z over [1..60]: no solution is monochromatic
    av = RadoAvoider((1, 1, -3), 5)
    for z in range(1, 61):
        for x in range(1, 3 * z):
            y = 3 * z - x
            if 1 <= y <= 60:
                assert len({av.color_of(x), av.color_of(y), av.color_of(z)}) > 1
