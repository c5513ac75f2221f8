"""Batch command-line front end.

Exit codes: 0 affirmative/found, 1 negative/not-found, 2 usage or parse
error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import colorings, radomat, search, systems
from .exactq import Matrix, kernel_basis, parse_scalar, scalar_str
from .polyring import poly_parse

EXIT_FOUND = 0
EXIT_NOT_FOUND = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class CliError(Exception):
    pass


def _scalar_json(v):
    return v if isinstance(v, int) else scalar_str(v)


def _assignment_json(assignment: dict) -> dict:
    return {k: _scalar_json(v) for k, v in assignment.items()}


def _load_matrix(path: str) -> Matrix:
    try:
        with open(path) as fh:
            return Matrix.from_text(fh.read())
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read matrix from {path}: {exc}") from exc


def _load_system(spec: str) -> systems.EquationSystem:
    if os.path.exists(spec):
        try:
            with open(spec) as fh:
                return systems.system_from_json(json.load(fh))
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read system from {spec}: {exc}") from exc
    try:
        return systems.parse_template_spec(spec)
    except ValueError as exc:
        raise CliError(f"bad system spec {spec!r}: {exc}") from exc


def _load_coloring(spec: str, N: int, seed: int) -> colorings.Coloring:
    spec = spec.strip()
    if spec == "all-one":
        return colorings.all_one_coloring(N)
    if spec == "parity":
        return colorings.parity_coloring(N)
    if spec.startswith("random"):
        s = seed
        if "(" in spec:
            inner = spec[spec.index("(") + 1 : spec.rindex(")")].strip()
            if inner:
                s = int(inner)
        return colorings.random_coloring(N, 2, s)
    if spec.startswith("rado-avoider"):
        inner = spec[spec.index("(") + 1 : spec.rindex(")")]
        coeff_part, _, p_part = inner.partition(";")
        if not p_part:
            raise CliError("rado-avoider spec is rado-avoider(c1,c2,...;p)")
        coeffs = [int(t) for t in coeff_part.split(",") if t.strip()]
        try:
            gen = colorings.rado_avoider_coloring(coeffs, int(p_part))
        except ValueError as exc:
            raise CliError(f"avoider generator refused: {exc}") from exc
        return gen.coloring(N)
    if os.path.exists(spec):
        try:
            with open(spec) as fh:
                return colorings.Coloring.from_text(fh.read())
        except (OSError, ValueError) as exc:
            raise CliError(f"cannot read coloring from {spec}: {exc}") from exc
    raise CliError(f"unknown coloring spec {spec!r}")


def _parse_scalar_list(text: str):
    return [parse_scalar(t) for t in text.split(",") if t.strip()]


def _parse_poly_list(text: str):
    return [poly_parse(t) for t in text.split(",") if t.strip()]


def _report(args, command: str, inputs: dict, outcome: dict, elapsed: float, human: str):
    if args.json:
        payload = {
            "command": command,
            "inputs": inputs,
            "outcome": outcome,
            "elapsed_s": round(elapsed, 6),
            "budget": {"range": getattr(args, "range", None), "node_limit": args.budget_nodes},
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def _budget(args) -> search.SearchBudget:
    return search.SearchBudget(N=args.range, node_limit=args.budget_nodes)


# ---------------------------------------------------------------------------
# subcommands


def cmd_check_cc(args) -> int:
    A = _load_matrix(args.matrix)
    t0 = time.perf_counter()
    w = radomat.column_condition(A)
    elapsed = time.perf_counter() - t0
    if w is not None:
        outcome = {"satisfied": True, "witness": w.to_json()}
        human = f"SATISFIED blocks={[list(b) for b in w.blocks]}"
    else:
        outcome = {"satisfied": False}
        human = "NOT SATISFIED"
    _report(args, "check-cc", {"matrix": A.to_text()}, outcome, elapsed, human)
    return EXIT_FOUND if w is not None else EXIT_NOT_FOUND


def cmd_expand(args) -> int:
    A = _load_matrix(args.matrix)
    t0 = time.perf_counter()
    e = radomat.expand_matrix(A)
    elapsed = time.perf_counter() - t0
    _report(
        args,
        "expand",
        {"matrix": A.to_text()},
        {"expanded": e.expanded.to_text()},
        elapsed,
        e.expanded.to_text(),
    )
    return EXIT_FOUND


def cmd_kernel(args) -> int:
    A = _load_matrix(args.matrix)
    t0 = time.perf_counter()
    basis = kernel_basis(A)
    elapsed = time.perf_counter() - t0
    human = "\n".join(" ".join(scalar_str(e) for e in v) for v in basis) or "(trivial kernel)"
    outcome = {"basis": [[_scalar_json(e) for e in v] for v in basis]}
    _report(args, "kernel", {"matrix": A.to_text()}, outcome, elapsed, human)
    return EXIT_FOUND if basis else EXIT_NOT_FOUND


def cmd_constant_solution(args) -> int:
    A = _load_matrix(args.matrix)
    try:
        b = tuple(_parse_scalar_list(args.rhs))
    except ValueError as exc:
        raise CliError(f"bad rhs: {exc}") from exc
    t0 = time.perf_counter()
    d = radomat.constant_solution(A, b)
    elapsed = time.perf_counter() - t0
    if d is not None:
        outcome = {"constant": _scalar_json(d)}
        human = f"CONSTANT d = {scalar_str(d)}"
    else:
        outcome = {"constant": None}
        human = "NO CONSTANT SOLUTION"
    _report(args, "constant-solution", {"matrix": A.to_text(), "rhs": args.rhs}, outcome, elapsed, human)
    return EXIT_FOUND if d is not None else EXIT_NOT_FOUND


def _apply_distinct(sys: systems.EquationSystem, args) -> systems.EquationSystem:
    if args.distinct is None:
        return sys
    mapping = {"repeats": "allow-repeats", "distinct": "all-distinct", "nontrivial": "nontrivial"}
    return systems.EquationSystem(
        name=sys.name,
        variables=sys.variables,
        equations=sys.equations,
        distinctness=mapping[args.distinct],
        status=sys.status,
    )


def cmd_solve(args) -> int:
    sys_ = _apply_distinct(_load_system(args.system), args)
    col = _load_coloring(args.coloring, args.range, args.seed)
    t0 = time.perf_counter()
    try:
        rec = search.find_mono_solution(sys_, col, _budget(args))
    except search.BudgetExhausted as exc:
        _report(
            args,
            "solve",
            {"system": sys_.name, "coloring": args.coloring, "status": sys_.status},
            {"budget_exhausted": True},
            time.perf_counter() - t0,
            f"BUDGET ({exc})",
        )
        return EXIT_BUDGET
    elapsed = time.perf_counter() - t0
    label = f"[status={sys_.status}]"
    if rec is not None:
        outcome = {"solution": _assignment_json(rec.assignment), "color": rec.color}
        human = f"SOLUTION color={rec.color} {rec.assignment} {label}"
    else:
        outcome = {"solution": None}
        human = f"NONE-IN-RANGE {label}"
    _report(
        args,
        "solve",
        {"system": sys_.name, "coloring": args.coloring, "status": sys_.status},
        outcome,
        elapsed,
        human,
    )
    return EXIT_FOUND if rec is not None else EXIT_NOT_FOUND


def cmd_rado_number(args) -> int:
    sys_ = _apply_distinct(_load_system(args.system), args)
    t0 = time.perf_counter()
    res = search.rado_number(sys_, args.colors, _budget(args))
    elapsed = time.perf_counter() - t0
    avoider = res.avoider.to_text() if res.avoider is not None else None
    outcome = {
        "value": res.value,
        "avoider": avoider,
        "nodes": res.nodes,
        "exhausted": res.exhausted,
    }
    if res.value is not None:
        human = f"RADO-NUMBER {res.value} (avoider for N={res.value - 1} attached, nodes={res.nodes})"
        code = EXIT_FOUND
    elif res.exhausted:
        human = f"BUDGET (largest avoider N={res.avoider.N if res.avoider else 0})"
        code = EXIT_BUDGET
    else:
        human = f"UNRESOLVED up to N={args.range} (avoider exists at N={args.range})"
        code = EXIT_NOT_FOUND
    _report(args, "rado-number", {"system": sys_.name, "colors": args.colors}, outcome, elapsed, human)
    return code


def cmd_export_cnf(args) -> int:
    sys_ = _apply_distinct(_load_system(args.system), args)
    t0 = time.perf_counter()
    text = search.export_cnf(sys_, args.colors, args.range)
    elapsed = time.perf_counter() - t0
    with open(args.out, "w") as fh:
        fh.write(text)
    header = next(ln for ln in text.splitlines() if ln.startswith("p cnf"))
    _report(
        args,
        "export-cnf",
        {"system": sys_.name, "colors": args.colors, "range": args.range},
        {"file": args.out, "header": header},
        elapsed,
        f"WROTE {args.out} ({header})",
    )
    return EXIT_FOUND


def cmd_fsfp(args) -> int:
    col = _load_coloring(args.coloring, args.range, args.seed)
    t0 = time.perf_counter()
    w = colorings.search_fsfp(col, args.depth)
    elapsed = time.perf_counter() - t0
    if w is not None:
        outcome = {"a_seq": list(w.a_seq), "b_seq": list(w.b_seq), "color": w.color}
        human = f"WITNESS a={list(w.a_seq)} b={list(w.b_seq)} color={w.color}"
    else:
        outcome = {"witness": None}
        human = "NO WITNESS AT THIS SCALE"
    _report(args, "fsfp", {"coloring": args.coloring, "depth": args.depth}, outcome, elapsed, human)
    return EXIT_FOUND if w is not None else EXIT_NOT_FOUND


def cmd_polyvdw(args) -> int:
    col = _load_coloring(args.coloring, args.range, args.seed)
    try:
        polys = _parse_poly_list(args.polys)
    except ValueError as exc:
        raise CliError(f"bad polynomial list: {exc}") from exc
    t0 = time.perf_counter()
    res = colorings.poly_vdw_witness(col, polys)
    elapsed = time.perf_counter() - t0
    if res is not None:
        a, d, color = res
        outcome = {"a": a, "d": d, "color": color}
        human = f"WITNESS a={a} d={d} color={color}"
    else:
        outcome = {"witness": None}
        human = "NO WITNESS AT THIS SCALE"
    _report(args, "polyvdw", {"coloring": args.coloring, "polys": args.polys}, outcome, elapsed, human)
    return EXIT_FOUND if res is not None else EXIT_NOT_FOUND


def cmd_construct_thm34(args) -> int:
    try:
        a_list = _parse_scalar_list(args.a_list)
        b_list = _parse_scalar_list(args.b_list) if args.b_list else []
        a = parse_scalar(args.a)
        d = parse_scalar(args.d)
        polys = _parse_poly_list(args.polys)
        assignments = systems.construct_thm34(a_list, b_list, a, d, polys)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(str(exc)) from exc
    n, m = len(a_list), len(b_list) + 1
    sys_ = systems.poly_sum_product(n, m, polys)
    t0 = time.perf_counter()
    merged = {}
    for asg in assignments:
        merged.update(asg)
    residuals = sys_.residuals(merged)
    elapsed = time.perf_counter() - t0
    integral = systems.integrality_check(merged)
    outcome = {
        "assignments": [_assignment_json(a_) for a_ in assignments],
        "residuals": [_scalar_json(r) for r in residuals],
        "all_satisfied": all(r == 0 for r in residuals),
        "integral": integral,
    }
    human = "\n".join(
        [f"equation {i + 1}: {a_}" for i, a_ in enumerate(assignments)]
        + [f"residuals: {residuals}", f"integral: {integral}"]
    )
    _report(args, "construct-thm34", {"a_list": args.a_list, "b_list": args.b_list, "a": args.a, "d": args.d, "polys": args.polys}, outcome, elapsed, human)
    return EXIT_FOUND


def cmd_construct_thm37(args) -> int:
    A = _load_matrix(args.matrix)
    try:
        polys = _parse_poly_list(args.polys)
        if args.kernel_vec:
            X = tuple(_parse_scalar_list(args.kernel_vec))
        else:
            basis = kernel_basis(A)
            if not basis:
                raise CliError("trivial kernel: supply --kernel-vec")
            X = basis[0]
        a = parse_scalar(args.a)
        d = parse_scalar(args.d)
        assignment = systems.construct_thm37(A, X, a, d, polys)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(str(exc)) from exc
    sys_ = systems.build_nonlinear_rado(A, polys)
    residuals = sys_.residuals(assignment)
    integral = systems.integrality_check(assignment)
    outcome = {
        "assignment": _assignment_json(assignment),
        "residuals": [_scalar_json(r) for r in residuals],
        "all_satisfied": all(r == 0 for r in residuals),
        "integral": integral,
    }
    human = f"assignment: {assignment}\nresiduals: {residuals}\nintegral: {integral}"
    _report(args, "construct-thm37", {"matrix": A.to_text(), "a": args.a, "d": args.d, "polys": args.polys}, outcome, 0.0, human)
    return EXIT_FOUND


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON run report")
    common.add_argument("--seed", type=int, default=0, help="seed for random generators")
    common.add_argument("--budget-nodes", type=int, default=None, help="search node limit")
    common.add_argument("--range", type=int, default=100, metavar="N", help="integer range bound [1..N]")
    common.add_argument("--colors", type=int, default=2, metavar="R", help="number of colors")
    common.add_argument(
        "--distinct",
        choices=["repeats", "distinct", "nontrivial"],
        default=None,
        help="override the system's distinctness policy",
    )

    p = argparse.ArgumentParser(prog="radolab", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("check-cc", parents=[common], help="decide the column condition")
    sp.add_argument("matrix")
    sp.set_defaults(func=cmd_check_cc)

    sp = sub.add_parser("expand", parents=[common], help="print the expanded matrix E(A)")
    sp.add_argument("matrix")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("kernel", parents=[common], help="rational kernel basis of A")
    sp.add_argument("matrix")
    sp.set_defaults(func=cmd_kernel)

    sp = sub.add_parser("constant-solution", parents=[common], help="solve A(d..d)=b")
    sp.add_argument("matrix")
    sp.add_argument("--rhs", required=True, help="comma-separated right-hand side")
    sp.set_defaults(func=cmd_constant_solution)

    sp = sub.add_parser("solve", parents=[common], help="monochromatic solution search")
    sp.add_argument("system", help="system JSON file or template spec")
    sp.add_argument("--coloring", default="all-one")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("rado-number", parents=[common], help="generalized Rado number")
    sp.add_argument("system")
    sp.set_defaults(func=cmd_rado_number)

    sp = sub.add_parser("export-cnf", parents=[common], help="DIMACS CNF export")
    sp.add_argument("system")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_export_cnf)

    sp = sub.add_parser("fsfp", parents=[common], help="FS/FP witness search")
    sp.add_argument("--coloring", default="all-one")
    sp.add_argument("--depth", type=int, default=2)
    sp.set_defaults(func=cmd_fsfp)

    sp = sub.add_parser("polyvdw", parents=[common], help="polynomial vdW witness search")
    sp.add_argument("--coloring", default="all-one")
    sp.add_argument("--polys", required=True, help="comma-separated polynomials")
    sp.set_defaults(func=cmd_polyvdw)

    sp = sub.add_parser("construct-thm34", parents=[common], help="sum-equals-product construction")
    sp.add_argument("--a-list", required=True)
    sp.add_argument("--b-list", default="")
    sp.add_argument("--a", required=True)
    sp.add_argument("--d", required=True)
    sp.add_argument("--polys", required=True)
    sp.set_defaults(func=cmd_construct_thm34)

    sp = sub.add_parser("construct-thm37", parents=[common], help="nonlinear Rado construction")
    sp.add_argument("matrix")
    sp.add_argument("--kernel-vec", default="")
    sp.add_argument("--a", required=True)
    sp.add_argument("--d", required=True)
    sp.add_argument("--polys", required=True)
    sp.set_defaults(func=cmd_construct_thm37)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
