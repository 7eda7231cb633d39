"""Optimal common contracts when costs obey increasing differences.

Agents can then be ordered weak to strong and actions ordered so that the
cost gap between any weaker and stronger agent is positive and strictly grows
along the action order. Best responses are monotone in that order, so the
optimum is a weakly increasing assignment found by dynamic programming, and
the supporting payments follow from telescoping the adjacent incentive
constraints.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import kernels
from .errors import BudgetExceeded, NotID
from .model import DaInstance, Outcome, PaymentProfile, simulate
from .oracle import check_budget, oracle_solve
from .rational import common_denominator


@dataclass(frozen=True)
class IdOrdering:
    """Agent order (weak to strong) and action order, both 0-based over the
    stored indices: ``agent_order[k]`` is an agent index, ``action_order[l]``
    is an action index in ``1..m``."""

    agent_order: tuple[int, ...]
    action_order: tuple[int, ...]


@dataclass(frozen=True)
class DpSolution:
    assignment: tuple[int, ...]  # reindexed: position k -> reindexed action 0..m
    value: Fraction
    phi: tuple[tuple[Fraction, ...], ...]
    opt_table: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Solution:
    profile: PaymentProfile
    outcome: Outcome
    method: str
    assignment: tuple[int, ...]  # per original agent, original action index


def _gaps_ok(instance: DaInstance, agents: Sequence[int], actions: Sequence[int]) -> bool:
    for weak, strong in zip(agents, agents[1:]):
        prev = Fraction(0)
        for j in actions:
            gap = instance.cost(weak, j) - instance.cost(strong, j)
            if gap <= prev:
                return False
            prev = gap
    return True


def detect_ordering(instance: DaInstance) -> IdOrdering:
    """Find the increasing-differences ordering or raise :class:`NotID`.

    Agents are sorted by descending cost of action 1 and actions by the gap
    between the first two agents; all adjacent-pair inequalities are then
    verified, which implies them for every pair.
    """
    n, m = instance.n, instance.m
    if n == 1:
        return IdOrdering((0,), tuple(range(1, m + 1)))
    agents = sorted(range(n), key=lambda i: -instance.cost(i, 1))
    a0, a1 = agents[0], agents[1]
    actions = sorted(
        range(1, m + 1), key=lambda j: instance.cost(a0, j) - instance.cost(a1, j)
    )
    if not _gaps_ok(instance, agents, actions):
        raise NotID("costs do not obey increasing differences")
    return IdOrdering(tuple(agents), tuple(actions))


def _reindexed_cost(instance: DaInstance, ordering: IdOrdering, k: int, l: int) -> Fraction:
    if l == 0:
        return Fraction(0)
    return instance.cost(ordering.agent_order[k], ordering.action_order[l - 1])


def phi(instance: DaInstance, ordering: IdOrdering, i: int, j: int) -> Fraction:
    """Principal's net gain attributed to reindexed agent ``i`` (0-based)
    taking reindexed action ``j`` once the rent paid to all stronger agents
    is charged to it."""
    if j == 0:
        return Fraction(0)
    n = instance.n
    reward = instance.reward(ordering.action_order[j - 1])
    c = _reindexed_cost(instance, ordering, i, j)
    if i == n - 1:
        return reward - c
    return reward - c - (n - 1 - i) * (c - _reindexed_cost(instance, ordering, i + 1, j))


def assignment_value(instance: DaInstance, ordering: IdOrdering, assignment: Sequence[int]) -> Fraction:
    """Upper bound on the payoff of any profile inducing ``assignment``."""
    return sum((phi(instance, ordering, i, j) for i, j in enumerate(assignment)), Fraction(0))


def solve_dp(instance: DaInstance, ordering: IdOrdering, backend=None) -> DpSolution:
    n, m = instance.n, instance.m
    table = tuple(
        tuple(phi(instance, ordering, i, j) for j in range(m + 1)) for i in range(n)
    )
    scale = common_denominator(v for row in table for v in row)
    scaled_phi = [[int(v * scale) for v in row] for row in table]
    opt, assignment = kernels.dp_table(scaled_phi, backend=backend)
    opt_table = tuple(tuple(Fraction(v, scale) for v in row) for row in opt)
    return DpSolution(tuple(assignment), opt_table[n][m], table, opt_table)


def _rent_payments(instance: DaInstance, ordering: IdOrdering, assignment: Sequence[int]) -> list[Fraction]:
    """Payment for each agent's assigned action, by reindexed agent position."""
    out = []
    rent = Fraction(0)
    for i, j in enumerate(assignment):
        out.append(rent + _reindexed_cost(instance, ordering, i, j))
        if i + 1 < len(assignment):
            rent += _reindexed_cost(instance, ordering, i, j) - _reindexed_cost(instance, ordering, i + 1, j)
    return out


def synthesize_payments(instance: DaInstance, ordering: IdOrdering, assignment: Sequence[int]) -> PaymentProfile:
    """Payments supporting a weakly increasing reindexed ``assignment``.

    Each assigned action pays the cost of the weakest agent assigned to it plus
    the accumulated information rent of all weaker agents; unassigned actions
    pay 0.
    """
    if any(a > b for a, b in zip(assignment, assignment[1:])):
        raise ValueError("assignment must be weakly increasing in agent order")
    payments = [Fraction(0)] * instance.m
    seen = set()
    for j, t in zip(assignment, _rent_payments(instance, ordering, assignment)):
        if j == 0 or j in seen:
            continue
        seen.add(j)
        payments[ordering.action_order[j - 1] - 1] = t
    return PaymentProfile(tuple(payments))


def to_original(ordering: IdOrdering, assignment: Sequence[int]) -> tuple[int, ...]:
    """Map a reindexed assignment to original action indices per original agent."""
    out = [0] * len(assignment)
    for k, j in enumerate(assignment):
        out[ordering.agent_order[k]] = 0 if j == 0 else ordering.action_order[j - 1]
    return tuple(out)


def solve(instance: DaInstance, method: str = "auto", budget: int | None = None, jobs: int = 1) -> Solution:
    """Optimal contract by DP when possible, else by exhaustive search.

    ``method`` is ``"dp"``, ``"oracle"`` or ``"auto"``. Raises :class:`NotID`
    for ``"dp"`` on unstructured costs and :class:`BudgetExceeded` when the
    search would be too large.
    """
    if method not in ("dp", "oracle", "auto"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("dp", "auto"):
        try:
            ordering = detect_ordering(instance)
        except NotID:
            if method == "dp":
                raise
        else:
            sol = solve_dp(instance, ordering)
            profile = synthesize_payments(instance, ordering, sol.assignment)
            outcome = simulate(instance, profile)
            return Solution(profile, outcome, "dp", to_original(ordering, sol.assignment))
    check_budget(instance, budget)
    res = oracle_solve(instance, budget=budget, jobs=jobs)
    return Solution(res.profile, res.outcome, "oracle", res.assignment)


__all__ = [
    "BudgetExceeded",
    "DpSolution",
    "IdOrdering",
    "NotID",
    "Solution",
    "assignment_value",
    "detect_ordering",
    "phi",
    "solve",
    "solve_dp",
    "synthesize_payments",
    "to_original",
]
