"""Exhaustive optimal contracts for small instances.

For every assignment of target actions to agents the least payments that make
each agent weakly prefer its target are found by longest-path relaxation over
the difference constraints; the assignment whose payments simulate to the
highest principal payoff wins. Unassigned actions always pay 0.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import kernels
from .errors import BudgetExceeded, Infeasible
from .model import DaInstance, Outcome, PaymentProfile, simulate
from .rational import common_denominator

DEFAULT_BUDGET = 1_000_000


def default_budget() -> int:
    env = os.environ.get("CONTRACT_FORGE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class OracleResult:
    profile: PaymentProfile
    outcome: Outcome
    value: Fraction
    assignment: tuple[int, ...]


def scaled(instance: DaInstance) -> tuple[int, list[int], list[list[int]]]:
    """Integer copy of the instance with the zero action stored in column 0."""
    scale = common_denominator([*instance.rewards, *(c for row in instance.costs for c in row)])
    rewards = [0] + [int(r * scale) for r in instance.rewards]
    costs = [[0] + [int(c * scale) for c in row] for row in instance.costs]
    return scale, rewards, costs


def search_size(instance: DaInstance) -> int:
    return (instance.m + 1) ** instance.n


def check_budget(instance: DaInstance, budget: int | None) -> None:
    budget = default_budget() if budget is None else budget
    size = search_size(instance)
    if size > budget:
        raise BudgetExceeded(
            f"{size} assignments for n={instance.n}, m={instance.m} exceeds budget {budget}"
        )


def minimal_payments(instance: DaInstance, target: Sequence[int], backend=None) -> PaymentProfile:
    if len(target) != instance.n:
        raise ValueError(f"assignment has {len(target)} entries, instance has {instance.n} agents")
    if any(not 0 <= a <= instance.m for a in target):
        raise ValueError("assignment contains an action index out of range")
    scale, rewards, costs = scaled(instance)
    t = kernels.minimal_payments(rewards, costs, list(target), backend=backend)
    if t is None:
        raise Infeasible(f"no payments support assignment {list(target)}")
    return PaymentProfile(tuple(Fraction(v, scale) for v in t[1:]))


def _search_chunk(args):
    rewards, costs, lo, hi, backend = args
    return kernels.oracle_search(rewards, costs, lo, hi, backend=backend)


def oracle_solve(
    instance: DaInstance, budget: int | None = None, jobs: int = 1, backend=None
) -> OracleResult:
    check_budget(instance, budget)
    scale, rewards, costs = scaled(instance)
    m = instance.m
    if jobs <= 1:
        results = [kernels.oracle_search(rewards, costs, 0, m + 1, backend=backend)]
    else:
        chunks = [(rewards, costs, a, a + 1, backend) for a in range(m + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_chunk, chunks))
    best = None
    for res in results:
        # chunks arrive in lexicographic order; strict > keeps the first maximizer
        if res is not None and (best is None or res[0] > best[0]):
            best = res
    assert best is not None, "the all-zero assignment is always feasible"
    value_scaled, target = best
    profile = minimal_payments(instance, target, backend=backend)
    outcome = simulate(instance, profile)
    value = Fraction(value_scaled, scale)
    if outcome.principal_payoff != value:
        raise AssertionError("kernel payoff disagrees with exact simulation")
    return OracleResult(profile, outcome, value, tuple(target))


def decide_mac(instance: DaInstance, r, budget: int | None = None, jobs: int = 1) -> bool:
    """Whether some payment profile yields principal payoff at least ``r``."""
    return oracle_solve(instance, budget=budget, jobs=jobs).value >= Fraction(r)
