"""Command-line frontend: JSON in, JSON report out.

Exit codes: 0 success, 1 a mathematical check failed, 2 unreadable or
invalid input, 3 the Groebner budget ran out before a decision.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pvp import expr
from pvp.config import Settings
from pvp.fields import OperatorSpec, format_ratfunc, get_spec, parse_ratfunc
from pvp.groebner import BudgetExceeded
from pvp.ideals import IdealGens, format_jet_polynomial, invariance_check
from pvp.matrices import (
    DimensionError,
    Jet,
    SingularMatrixError,
    SqMatrix,
    jet_inv,
    jet_mul,
    jet_to_block,
)
from pvp.prolongation import eq2_from_leibniz, prolong_system, verify_fundamental
from pvp.selftest import selftest
from pvp.structure import (
    MonomialModel,
    cocycle_check,
    enumerate_automorphisms,
    exact_sequence_check,
    sigma_orbits,
    sigma_power_product,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_BAD_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _require(data: dict, key: str):
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    if key not in data:
        raise InputError(f"missing required field {key!r}")
    return data[key]


def _spec(data) -> OperatorSpec:
    return get_spec(data.get("spec", "shift"))


def _matrix(spec, data) -> SqMatrix:
    return SqMatrix.from_json(data, lambda t: parse_ratfunc(spec, t))


def _fmt(spec):
    return lambda e: format_ratfunc(spec, e)


def _int(data, key, minimum=0):
    value = _require(data, key)
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise InputError(f"{key!r} must be an integer >= {minimum}")
    return value


def cmd_prolong(data, settings):
    spec = _spec(data)
    a = _matrix(spec, _require(data, "A"))
    n = _int(data, "n")
    if n > settings.order:
        raise InputError(f"order {n} exceeds the configured maximum {settings.order}")
    system = prolong_system(spec, a, n)
    checks = [
        {"name": "block_lower_triangular", "passed": system.matrix.is_lower_triangular()},
        {"name": "det_is_power_of_det_A", "passed": system.det() == a.det() ** (n + 1)},
    ]
    return system.matrix.to_json(_fmt(spec)), checks


def cmd_verify(data, settings):
    spec = _spec(data)
    a = _matrix(spec, _require(data, "A"))
    n = _int(data, "n")
    if n > settings.order:
        raise InputError(f"order {n} exceeds the configured maximum {settings.order}")
    system = prolong_system(spec, a, n).matrix
    corrupt = data.get("corrupt")
    if corrupt:
        r, c = _int(corrupt, "row"), _int(corrupt, "col")
        if r > n or c > n:
            raise InputError("corrupted block lies outside the block matrix")
        block = system.block(r, c)
        replacement = SqMatrix.zeros(a.dim, a.zero) if not block.is_zero() else SqMatrix.identity(a.dim, a.one)
        system = system.replace(r, c, replacement)
    fundamental = verify_fundamental(spec, a, n, system)
    orders = list(range(n + 1))
    leibniz = {j: eq2_from_leibniz(spec, a, j) for j in orders}
    checks = [{"name": "fundamental_solution", "passed": fundamental}]
    checks += [{"name": f"eq2_leibniz_j{j}", "passed": ok} for j, ok in leibniz.items()]
    return {"fundamental": fundamental, "leibniz_orders_checked": orders}, checks


def cmd_compose(data, settings):
    spec = _spec(data)
    a = _matrix(spec, _require(data, "A"))
    l = _int(data, "l", 1)
    al = sigma_power_product(spec, a, l)
    checks = [
        {"name": f"cocycle_{i}_{l - i}", "passed": cocycle_check(spec, a, i, l - i)} for i in range(1, l)
    ]
    return {"l": l, "A_l": al.to_json(_fmt(spec))}, checks


def cmd_jets(data, settings):
    spec = _spec(data)
    parse = lambda t: parse_ratfunc(spec, t)  # noqa: E731
    a = Jet.from_json(_require(data, "a"), parse)
    b = Jet.from_json(data["b"], parse) if "b" in data else a
    fmt = _fmt(spec)
    unit = Jet.unit(a.order, a.dim, spec.field.one)
    product = jet_mul(a, b)
    inv_a = jet_inv(a)
    result = {
        "product": product.to_json(fmt),
        "inverse_a": inv_a.to_json(fmt),
        "block_a": jet_to_block(a).to_json(fmt),
        "block_product": jet_to_block(product).to_json(fmt),
    }
    checks = [
        {"name": "block_homomorphism", "passed": jet_to_block(product) == jet_to_block(a) * jet_to_block(b)},
        {"name": "inverse_round_trip", "passed": jet_mul(a, inv_a) == unit and jet_mul(inv_a, a) == unit},
    ]
    return result, checks


def cmd_check_invariance(data, settings):
    spec = _spec(data)
    order, m = _int(data, "order"), _int(data, "m", 1)
    gens = _require(data, "generators")
    if not isinstance(gens, list):
        raise InputError("'generators' must be an array of expression strings")
    ideal = IdealGens.parse(spec, order, m, gens)
    jet = Jet.from_json(_require(data, "jet"), lambda t: parse_ratfunc(spec, t))
    outcome = invariance_check(ideal, jet, settings.budget)
    result = {
        "invariant": outcome.invariant,
        "basis": [format_jet_polynomial(spec, g) for g in ideal.basis(settings.budget)],
    }
    if outcome.failing_generator is not None:
        result["failing_generator"] = outcome.failing_generator
    return result, [{"name": "ideal_invariant_under_jet", "passed": outcome.invariant}]


def _model(data) -> MonomialModel:
    r = _require(data, "r")
    if not isinstance(r, list) or not r or not all(isinstance(v, int) and v >= 1 for v in r):
        raise InputError("'r' must be a non-empty array of positive integers")
    return MonomialModel(tuple(r))


def cmd_components(data, settings):
    model = _model(data)
    report = sigma_orbits(model)
    if model.dim <= settings.max_group_order:
        report.automorphism_group_order = enumerate_automorphisms(model, settings.max_group_order).order
    checks = [
        {"name": "idempotent_axioms", "passed": report.idempotent_axioms},
        {"name": "sigma_cycles_orbits", "passed": report.sigma_cycles_orbits},
        {"name": "sigma_l_fixes_idempotents", "passed": all(report.sigma_l_fixes)},
        {"name": "components_are_fields", "passed": all(report.components_are_fields)},
        {"name": "l_matches_root_order", "passed": report.l == report.l_by_root_order},
    ]
    return report.to_json(), checks


def cmd_exact_seq(data, settings):
    model = _model(data)
    try:
        report = exact_sequence_check(model, settings.max_group_order)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    checks = [{"name": k, "passed": v} for k, v in report.checks.items()]
    return report.to_json(), checks


COMMANDS = {
    "prolong": cmd_prolong,
    "verify": cmd_verify,
    "compose": cmd_compose,
    "jets": cmd_jets,
    "check-invariance": cmd_check_invariance,
    "components": cmd_components,
    "exact-seq": cmd_exact_seq,
}


def _settings_echo(settings: Settings) -> dict:
    return {"order": settings.order, "budget": settings.budget, "seed": settings.seed,
            "max_group_order": settings.max_group_order}


def run(command: str, data, settings: Settings) -> tuple[int, dict]:
    """Execute one subcommand; returns the exit code and the JSON report."""
    report = {"command": command, "inputs_echo": {"input": data, "settings": _settings_echo(settings)}}
    if command == "selftest":
        suite = selftest(settings)
        report["result"] = {"status": suite["status"], "passed": suite["passed"], "total": suite["total"]}
        report["checks"] = suite["checks"]
        code = {"pass": EXIT_OK, "fail": EXIT_CHECK_FAILED, "budget_exceeded": EXIT_BUDGET}[suite["status"]]
        report["status"] = suite["status"]
        return code, report
    try:
        result, checks = COMMANDS[command](data, settings)
    except BudgetExceeded as exc:
        report.update(status="budget_exceeded", error=str(exc), result=None, checks=[])
        return EXIT_BUDGET, report
    except (InputError, expr.ExpressionError, DimensionError, SingularMatrixError, ValueError, TypeError, KeyError) as exc:
        report.update(status="error", error=str(exc), result=None, checks=[])
        return EXIT_BAD_INPUT, report
    passed = all(c["passed"] for c in checks)
    report.update(status="pass" if passed else "fail", result=result, checks=checks)
    return (EXIT_OK if passed else EXIT_CHECK_FAILED), report


def _read_input(source: str | None):
    if source is None or source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        text = Path(source).read_text()
    return json.loads(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pvp", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=[*COMMANDS, "selftest"])
    parser.add_argument("--input", "-i", help="JSON file, inline JSON object, or '-' for stdin")
    parser.add_argument("--output", "-o", help="write the report here instead of stdout")
    parser.add_argument("--order", type=int, help="maximum prolongation order")
    parser.add_argument("--budget", type=int, help="maximum S-polynomial reductions per Groebner basis")
    parser.add_argument("--seed", type=int, help="random seed for selftest")
    parser.add_argument("--jobs", type=int, help="worker processes for selftest")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = Settings.from_env(order=args.order, budget=args.budget, seed=args.seed, jobs=args.jobs)
    except ValueError as exc:
        print(f"pvp: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    data = None
    if args.command != "selftest":
        try:
            data = _read_input(args.input)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"pvp: cannot read input: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT
    code, report = run(args.command, data, settings)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
