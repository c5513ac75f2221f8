"""Tests for the two search engines and the CNF export."""

import itertools
import random

import pytest

from radolab.colorings import Coloring, all_one_coloring, rado_avoider_coloring
from radolab.polyring import poly_parse
from radolab.search import (
    BudgetExhausted,
    SearchBudget,
    SolutionRecord,
    enumerate_solutions,
    export_cnf,
    find_mono_solution,
    rado_number,
    validate_solution,
)
from radolab.systems import (
    Equation,
    EquationSystem,
    Monomial,
    build_nonlinear_rado,
    mult_schur_system,
    schur_system,
    single_equation,
)
from radolab.exactq import Matrix


def _coloring_from_classes(N, classes):
    colors = [None] * N
    for color, members in enumerate(classes):
        for k in members:
            colors[k - 1] = color
    return Coloring(N=N, r=len(classes), colors=tuple(colors))


def _budget(N, nodes=None):
    return SearchBudget(N=N, node_limit=nodes)


# ---------------------------------------------------------------------------
# find_mono_solution


def test_schur_every_2_coloring_of_5():
    sys = schur_system()
    for colors in itertools.product(range(2), repeat=5):
        c = Coloring(N=5, r=2, colors=colors)
        rec = find_mono_solution(sys, c, _budget(5))
        assert rec is not None
        assert validate_solution(sys, c, rec)


def test_schur_avoider_coloring_of_4():
    sys = schur_system()
    c = _coloring_from_classes(4, [[1, 4], [2, 3]])
    assert find_mono_solution(sys, c, _budget(4)) is None


def test_example_system_all_one_10():
    A = Matrix([[1, 2, -3], [2, -1, -1]])
    sys = build_nonlinear_rado(A, [poly_parse("z^2 + z"), poly_parse("z^3")])
    rec = find_mono_solution(sys, all_one_coloring(10), _budget(10))
    assert rec is not None
    # lexicographic minimum in declaration order
    assert rec.assignment == {"x1": 1, "x2": 1, "y1": 3, "y2": 9, "z": 2}
    assert validate_solution(sys, all_one_coloring(10), rec)
    # the hand-built solution (2, 1, 2, 4, 1) is valid too, just later
    assert sys.satisfied_by({"x1": 2, "x2": 1, "y1": 2, "y2": 4, "z": 1})


def test_solution_is_lexicographically_least():
    sys = schur_system()
    rec = find_mono_solution(sys, all_one_coloring(10), _budget(10))
    assert rec.assignment == {"x": 1, "y": 1, "z": 2}


def test_first_solvable_class_wins():
    # class 0 = evens has 2+2=4; class 1 = odds has 1+1=2? no, 2 is even.
    # odds alone: 1+1=2 not odd, 1+3=4 not odd; no odd solution of x+y=z.
    sys = schur_system()
    c = _coloring_from_classes(6, [[2, 4, 6], [1, 3, 5]])
    rec = find_mono_solution(sys, c, _budget(6))
    assert rec.color == 0
    assert rec.assignment == {"x": 2, "y": 2, "z": 4}


def test_budget_exhaustion_is_distinct():
    sys = schur_system()
    c = _coloring_from_classes(4, [[1, 4], [2, 3]])
    with pytest.raises(BudgetExhausted):
        find_mono_solution(sys, c, _budget(4, nodes=2))


def test_distinctness_flags():
    sys_rep = single_equation([1, 1, -2])  # x + y = 2z
    sys_non = single_equation([1, 1, -2], distinctness="nontrivial")
    c = all_one_coloring(3)
    rec = find_mono_solution(sys_rep, c, _budget(3))
    assert rec.assignment == {"v1": 1, "v2": 1, "v3": 1}
    rec = find_mono_solution(sys_non, c, _budget(3))
    assert rec is not None
    assert len(set(rec.assignment.values())) > 1


def test_nonlinear_engine_mult_schur():
    sys = mult_schur_system()
    c = all_one_coloring(6)
    rec = find_mono_solution(sys, c, _budget(6))
    assert rec.assignment == {"x": 1, "y": 1, "z": 1}


def test_determinism():
    sys = schur_system()
    c = _coloring_from_classes(8, [[1, 2, 6], [3, 4, 5, 7, 8]])
    recs = [find_mono_solution(sys, c, _budget(8)) for _ in range(3)]
    assert recs[0] == recs[1] == recs[2]


def test_linear_and_generic_engines_agree():
    """Force both engines over the same systems and compare enumerations."""
    from radolab.search import _search_generic, _search_linear, _Nodes

    rng = random.Random(55)
    for _ in range(40):
        k = rng.randint(2, 3)
        coeffs = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(k)]
        sys = single_equation(coeffs)
        values = sorted(rng.sample(range(1, 13), rng.randint(3, 8)))
        a = list(_search_linear(sys, values, set(values), _Nodes(None)))
        b = list(_search_generic(sys, values, set(values), _Nodes(None)))
        assert a == b


def test_validate_solution_rejects_bad_records():
    sys = schur_system()
    c = all_one_coloring(10)
    good = SolutionRecord(assignment={"x": 1, "y": 1, "z": 2}, color=0, system=sys.name)
    assert validate_solution(sys, c, good)
    bad_residual = SolutionRecord(
        assignment={"x": 1, "y": 1, "z": 3}, color=0, system=sys.name
    )
    assert not validate_solution(sys, c, bad_residual)
    bad_color = SolutionRecord(
        assignment={"x": 1, "y": 1, "z": 2}, color=1, system=sys.name
    )
    c2 = Coloring(N=10, r=2, colors=tuple([0] * 10))
    assert not validate_solution(sys, c2, bad_color)


def test_enumerate_solutions():
    sys = schur_system()
    sols = list(enumerate_solutions(sys, 4))
    expected = [
        {"x": 1, "y": 1, "z": 2},
        {"x": 1, "y": 2, "z": 3},
        {"x": 1, "y": 3, "z": 4},
        {"x": 2, "y": 1, "z": 3},
        {"x": 2, "y": 2, "z": 4},
        {"x": 3, "y": 1, "z": 4},
    ]
    assert sols == expected


# ---------------------------------------------------------------------------
# rado_number


def _brute_force_rado(sys, r, N_max):
    """Try every r-coloring of [1..N] for each N; the first N with no
    avoiding coloring is the number."""
    from radolab.search import _has_mono_solution, _Nodes

    for N in range(1, N_max + 1):
        avoider = None
        for colors in itertools.product(range(r), repeat=N):
            c = Coloring(N=N, r=r, colors=colors)
            if not _has_mono_solution(sys, c, _Nodes(None)):
                avoider = c
                break
        if avoider is None:
            return N
    return None


def test_rado_number_schur():
    res = rado_number(schur_system(), 2, _budget(6))
    assert res.value == 5
    assert res.avoider is not None and res.avoider.N == 4
    assert not res.exhausted


def test_rado_number_attached_avoider_avoids():
    from radolab.search import _has_mono_solution, _Nodes

    res = rado_number(schur_system(), 2, _budget(6))
    assert not _has_mono_solution(schur_system(), res.avoider, _Nodes(None))


def test_rado_number_vdw_3ap():
    sys = single_equation([1, 1, -2], distinctness="nontrivial")
    res = rado_number(sys, 2, _budget(10))
    assert res.value == 9


def test_rado_number_trivial_r1():
    res = rado_number(single_equation([1, 1, -2]), 1, _budget(3))
    assert res.value == 1


def test_rado_number_budget_exhaustion():
    res = rado_number(schur_system(), 2, SearchBudget(N=6, node_limit=20))
    assert res.value is None
    assert res.exhausted


def test_rado_number_out_of_reach_reports_none():
    # x + y = 3z is not partition regular; no value exists at any N
    sys = single_equation([1, 1, -3])
    res = rado_number(sys, 2, _budget(8))
    assert res.value is None
    assert not res.exhausted
    assert res.avoider is not None and res.avoider.N == 8


def test_rado_number_matches_brute_force_suite():
    suite = [
        schur_system(),
        single_equation([1, 1, -3]),
        single_equation([1, 1, -2]),
        mult_schur_system(),
    ]
    for sys in suite:
        for N_max in (4, 6):
            expect = _brute_force_rado(sys, 2, N_max)
            got = rado_number(sys, 2, _budget(N_max))
            assert got.value == expect, sys.name


# ---------------------------------------------------------------------------
# avoider consistency


def test_avoider_blocks_x_plus_y_eq_3z_to_2000():
    av = rado_avoider_coloring((1, 1, -3), 5)
    c = av.coloring(2000)
    sys = single_equation([1, 1, -3])
    assert find_mono_solution(sys, c, _budget(2000)) is None


# ---------------------------------------------------------------------------
# CNF export


def _parse_dimacs(text):
    clauses = []
    nvars = ncl = None
    for line in text.splitlines():
        if not line or line.startswith("c"):
            continue
        if line.startswith("p cnf"):
            _, _, v, c = line.split()
            nvars, ncl = int(v), int(c)
            continue
        lits = [int(t) for t in line.split()]
        assert lits[-1] == 0
        clauses.append(lits[:-1])
    assert len(clauses) == ncl
    return nvars, clauses


def _sat(nvars, clauses):
    """Tiny DPLL, adequate for these instances."""

    def solve(assign):
        unit = True
        clauses_left = []
        while unit:
            unit = False
            clauses_left = []
            for cl in clauses:
                vals = [assign.get(abs(l)) for l in cl]
                if any(
                    v is not None and (l > 0) == v for l, v in zip(cl, vals)
                ):
                    continue
                free = [l for l, v in zip(cl, vals) if v is None]
                if not free:
                    return False
                if len(free) == 1:
                    assign[abs(free[0])] = free[0] > 0
                    unit = True
                    break
                clauses_left.append(cl)
            else:
                break
        if not clauses_left:
            return True
        lit = clauses_left[0][0]
        for guess in (True, False):
            trial = dict(assign)
            trial[abs(lit)] = guess
            if solve(trial):
                return True
        return False

    return solve({})


def test_cnf_schur_n4_satisfiable():
    text = export_cnf(schur_system(), 2, 4)
    nvars, clauses = _parse_dimacs(text)
    assert nvars == 8
    assert _sat(nvars, clauses)


def test_cnf_schur_n5_unsatisfiable():
    text = export_cnf(schur_system(), 2, 5)
    nvars, clauses = _parse_dimacs(text)
    assert nvars == 10
    assert not _sat(nvars, clauses)


def test_cnf_r1_with_solution_unsatisfiable():
    text = export_cnf(schur_system(), 1, 3)
    nvars, clauses = _parse_dimacs(text)
    assert not _sat(nvars, clauses)


def test_cnf_variable_numbering_comment():
    text = export_cnf(schur_system(), 2, 4)
    assert "v(n,c) = (n-1)*r + c + 1" in text


def test_cnf_truncation_flag():
    text = export_cnf(schur_system(), 2, 30, tuple_limit=3)
    assert "truncated" in text
