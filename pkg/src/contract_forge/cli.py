"""Command-line front end.

Every command reads its JSON (or DIMACS) inputs from file paths, with ``-``
meaning standard input, and writes one JSON document to standard output.

Exit codes: 0 success, 2 costs lack increasing differences (``--method dp``),
3 malformed input or flags, 4 exhaustive-search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import dp, generators, hardness, oracle, rna
from .errors import (
    BudgetExceeded,
    InvalidCost,
    InvalidFormula,
    InvalidPayment,
    MalformedInput,
    MisalignedStep,
    NotID,
    NotNaeSatisfying,
)
from .model import (
    instance_from_json,
    instance_to_json,
    outcome_to_json,
    profile_from_json,
    profile_to_json,
    simulate,
)
from .rational import format_rational, parse_rational

EXIT_OK = 0
EXIT_NOT_ID = 2
EXIT_MALFORMED = 3
EXIT_BUDGET = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc})") from exc


def _rat_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except MalformedInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _solution_json(sol: dp.Solution) -> dict:
    return {
        "method": sol.method,
        "assignment": list(sol.assignment),
        "payments": [format_rational(t) for t in sol.profile.payments],
        "payoff": format_rational(sol.outcome.principal_payoff),
    }


def cmd_solve(args):
    inst = instance_from_json(_read_json(args.instance))
    return _solution_json(dp.solve(inst, method=args.method, budget=args.budget, jobs=args.jobs))


def cmd_simulate(args):
    inst = instance_from_json(_read_json(args.instance))
    profile = profile_from_json(_read_json(args.profile))
    try:
        return outcome_to_json(simulate(inst, profile))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def cmd_decide(args):
    inst = instance_from_json(_read_json(args.instance))
    res = oracle.oracle_solve(inst, budget=args.budget, jobs=args.jobs)
    return {
        "result": res.value >= args.r,
        "r": format_rational(args.r),
        "optimum": format_rational(res.value),
        "payments": [format_rational(t) for t in res.profile.payments],
    }


def cmd_check_id(args):
    inst = instance_from_json(_read_json(args.instance))
    try:
        order = dp.detect_ordering(inst)
    except NotID:
        return {"id": False}
    return {"id": True, "agent_order": list(order.agent_order), "action_order": list(order.action_order)}


def cmd_gen_random(args):
    if args.agents < 1 or args.actions < 1:
        raise _UsageError("--agents and --actions must be at least 1")
    if args.id:
        inst = generators.gen_random_id(
            generators.RandomIdSpec(args.agents, args.actions, args.seed, denominator=args.denominator)
        )
    else:
        inst = generators.gen_random_da(args.agents, args.actions, args.seed, denominator=args.denominator)
    return instance_to_json(inst)


def cmd_gen_nae(args):
    formula = hardness.parse_dimacs(_read_text(args.formula))
    bundle = hardness.generate_mac(formula)
    doc = instance_to_json(bundle.instance)
    doc["r"] = format_rational(bundle.r)
    doc["params"] = {
        "delta": format_rational(bundle.delta),
        "rho1": format_rational(bundle.rho1),
        "rho2": format_rational(bundle.rho2),
    }
    doc["names"] = {"agents": list(bundle.agent_names), "actions": list(bundle.action_names)}
    if args.assignment is not None:
        bits = args.assignment.upper()
        if len(bits) != formula.num_vars or set(bits) - {"T", "F"}:
            raise MalformedInput("--assignment must be a T/F string with one letter per variable")
        witness = hardness.witness_payments(bundle, [c == "T" for c in bits])
        doc["witness"] = profile_to_json(witness)
        doc["witness_payoff"] = format_rational(simulate(bundle.instance, witness).principal_payoff)
    return doc


def _summary_json(s: rna.AgentSummary) -> dict:
    return {"x_star": format_rational(s.x_star), "y": format_rational(s.y)}


def cmd_rna_approx(args):
    inst = rna.rna_instance_from_json(_read_json(args.instance))
    contract = rna.approx_contract(inst)
    realized = rna.rna_simulate(inst, contract.payment)
    return {
        "payment": rna.payment_to_json(contract.payment),
        "i_star": contract.i_star,
        "agent": contract.agent,
        "guarantee": format_rational(contract.guarantee),
        "payoff": format_rational(realized.payoff),
        "choices": [format_rational(x) for x in realized.choices],
        "summaries": [_summary_json(s) for s in contract.summaries],
    }


def cmd_rna_simulate(args):
    inst = rna.rna_instance_from_json(_read_json(args.instance))
    payment = rna.payment_from_json(_read_json(args.payment))
    out = rna.rna_simulate(inst, payment)
    return {"choices": [format_rational(x) for x in out.choices], "payoff": format_rational(out.payoff)}


def cmd_reduce(args):
    inst = instance_from_json(_read_json(args.instance))
    try:
        rinst, scale = rna.da_to_rna(inst, M=args.M)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    doc = {"rna": rna.rna_instance_to_json(rinst), "scale": rna.scale_to_json(scale)}
    if args.profile is not None:
        step = rna.rna_profile_from_da(profile_from_json(_read_json(args.profile)), scale)
        doc["payment"] = rna.payment_to_json(step)
    return doc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="contract-forge", description="Common-contract principal-agent solver.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def budget_flags(p):
        p.add_argument("--budget", type=int, default=None,
                       help="max assignments for exhaustive search (default $CONTRACT_FORGE_BUDGET or 1000000)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for exhaustive search")

    p = sub.add_parser("solve", help="optimal payment profile")
    p.add_argument("instance", nargs="?", default="-")
    p.add_argument("--method", choices=["auto", "dp", "oracle"], default="auto")
    budget_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", help="agents' responses to a payment profile")
    p.add_argument("instance")
    p.add_argument("profile")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("decide", help="is payoff >= r achievable?")
    p.add_argument("instance", nargs="?", default="-")
    p.add_argument("--r", type=_rat_arg, required=True)
    budget_flags(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("check-id", help="detect the increasing-differences ordering")
    p.add_argument("instance", nargs="?", default="-")
    p.set_defaults(func=cmd_check_id)

    p = sub.add_parser("gen-random", help="random discrete-action instance")
    p.add_argument("--agents", type=int, required=True)
    p.add_argument("--actions", type=int, required=True)
    p.add_argument("--id", action="store_true", help="obey increasing differences")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--denominator", type=int, default=1)
    p.set_defaults(func=cmd_gen_random)

    p = sub.add_parser("gen-nae", help="MAC instance from an NAE3SAT formula")
    p.add_argument("formula", nargs="?", default="-")
    p.add_argument("--assignment", help="T/F string; adds witness payments")
    p.set_defaults(func=cmd_gen_nae)

    p = sub.add_parser("rna-approx", help="threshold contract for real-number actions")
    p.add_argument("instance", nargs="?", default="-")
    p.set_defaults(func=cmd_rna_approx)

    p = sub.add_parser("rna-simulate", help="agents' outputs under an RNA payment")
    p.add_argument("instance")
    p.add_argument("payment")
    p.set_defaults(func=cmd_rna_simulate)

    p = sub.add_parser("reduce-da-to-rna", help="step-cost RNA instance from a DA instance")
    p.add_argument("instance", nargs="?", default="-")
    p.add_argument("--M", type=_rat_arg, default=None, help="grid spacing (default max cost/reward + 1)")
    p.add_argument("--profile", help="also map this DA payment profile to a step payment")
    p.set_defaults(func=cmd_reduce)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "budget", None) is not None and args.budget < 0:
            raise _UsageError("--budget must be non-negative")
        if getattr(args, "jobs", 1) < 1:
            raise _UsageError("--jobs must be at least 1")
        result = args.func(args)
    except _UsageError as exc:
        print(json.dumps({"error": f"usage: {exc}"}), file=stderr)
        return EXIT_MALFORMED
    except NotID as exc:
        print(json.dumps({"error": str(exc)}), file=stderr)
        return EXIT_NOT_ID
    except BudgetExceeded as exc:
        print(json.dumps({"error": str(exc)}), file=stderr)
        return EXIT_BUDGET
    except (MalformedInput, InvalidCost, InvalidPayment, InvalidFormula, MisalignedStep,
            NotNaeSatisfying, OSError) as exc:
        print(json.dumps({"error": str(exc)}), file=stderr)
        return EXIT_MALFORMED
    json.dump(result, stdout)
    stdout.write("\n")
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
