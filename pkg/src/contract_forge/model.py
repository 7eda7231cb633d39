"""Discrete-action common-contract model.

Agents are indexed ``0..n-1``. Actions are indexed ``0..m`` where ``0`` is the
implicit zero action (reward 0, cost 0 for everybody) and ``1..m`` are the
stored actions. A payment profile stores ``t_1..t_m``; the zero action always
pays 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import MalformedInput
from .rational import format_rational, parse_rational


@dataclass(frozen=True)
class DaInstance:
    rewards: tuple[Fraction, ...]
    costs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rewards = tuple(Fraction(r) for r in self.rewards)
        costs = tuple(tuple(Fraction(c) for c in row) for row in self.costs)
        object.__setattr__(self, "rewards", rewards)
        object.__setattr__(self, "costs", costs)
        if not rewards:
            raise ValueError("instance needs at least one action")
        if not costs:
            raise ValueError("instance needs at least one agent")
        m = len(rewards)
        for i, row in enumerate(costs):
            if len(row) != m:
                raise ValueError(f"agent {i} has {len(row)} costs, expected {m}")
            if any(c < 0 for c in row):
                raise ValueError(f"agent {i} has a negative cost")
        if any(r < 0 for r in rewards):
            raise ValueError("rewards must be non-negative")

    @property
    def n(self) -> int:
        return len(self.costs)

    @property
    def m(self) -> int:
        return len(self.rewards)

    def reward(self, j: int) -> Fraction:
        return Fraction(0) if j == 0 else self.rewards[j - 1]

    def cost(self, i: int, j: int) -> Fraction:
        return Fraction(0) if j == 0 else self.costs[i][j - 1]

    def restrict(self, agents: Sequence[int]) -> "DaInstance":
        """Sub-instance keeping only the given agents (same actions)."""
        return DaInstance(self.rewards, tuple(self.costs[i] for i in agents))


@dataclass(frozen=True)
class PaymentProfile:
    payments: tuple[Fraction, ...]

    def __post_init__(self):
        payments = tuple(Fraction(t) for t in self.payments)
        if any(t < 0 for t in payments):
            raise ValueError("payments must be non-negative")
        object.__setattr__(self, "payments", payments)

    @classmethod
    def zeros(cls, m: int) -> "PaymentProfile":
        return cls((Fraction(0),) * m)

    def payment(self, j: int) -> Fraction:
        return Fraction(0) if j == 0 else self.payments[j - 1]


@dataclass(frozen=True)
class Outcome:
    chosen_action: tuple[int, ...]
    agent_utility: tuple[Fraction, ...]
    principal_payoff: Fraction


def _check_profile(instance: DaInstance, profile: PaymentProfile) -> None:
    if len(profile.payments) != instance.m:
        raise ValueError(
            f"profile has {len(profile.payments)} payments, instance has {instance.m} actions"
        )


def best_response(instance: DaInstance, profile: PaymentProfile, agent: int) -> int:
    """Action chosen by ``agent`` under ``profile``.

    Maximizes the agent's utility; ties go to the action with the larger
    principal net reward, then to the smallest action index.
    """
    _check_profile(instance, profile)
    best_j = 0
    best_u = Fraction(0)
    best_p = Fraction(0)
    for j in range(1, instance.m + 1):
        t = profile.payments[j - 1]
        u = t - instance.costs[agent][j - 1]
        if u < best_u:
            continue
        p = instance.rewards[j - 1] - t
        if u > best_u or p > best_p:
            best_j, best_u, best_p = j, u, p
    return best_j


def simulate(instance: DaInstance, profile: PaymentProfile) -> Outcome:
    _check_profile(instance, profile)
    chosen = tuple(best_response(instance, profile, i) for i in range(instance.n))
    utility = tuple(
        profile.payment(j) - instance.cost(i, j) for i, j in enumerate(chosen)
    )
    payoff = sum((instance.reward(j) - profile.payment(j) for j in chosen), Fraction(0))
    return Outcome(chosen, utility, payoff)


# -- JSON wire format -------------------------------------------------------


def _rat_list(values, what: str) -> tuple[Fraction, ...]:
    if not isinstance(values, list):
        raise MalformedInput(f"{what} must be a list")
    return tuple(parse_rational(v) for v in values)


def instance_from_json(doc) -> DaInstance:
    if not isinstance(doc, dict) or "rewards" not in doc or "costs" not in doc:
        raise MalformedInput('instance must be an object with "rewards" and "costs"')
    rewards = _rat_list(doc["rewards"], "rewards")
    if not isinstance(doc["costs"], list):
        raise MalformedInput("costs must be a list of rows")
    costs = tuple(_rat_list(row, "cost row") for row in doc["costs"])
    try:
        return DaInstance(rewards, costs)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def instance_to_json(instance: DaInstance) -> dict:
    return {
        "rewards": [format_rational(r) for r in instance.rewards],
        "costs": [[format_rational(c) for c in row] for row in instance.costs],
    }


def profile_from_json(doc) -> PaymentProfile:
    if not isinstance(doc, dict) or "payments" not in doc:
        raise MalformedInput('profile must be an object with "payments"')
    try:
        return PaymentProfile(_rat_list(doc["payments"], "payments"))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def profile_to_json(profile: PaymentProfile) -> dict:
    return {"payments": [format_rational(t) for t in profile.payments]}


def outcome_to_json(outcome: Outcome) -> dict:
    return {
        "chosen_action": list(outcome.chosen_action),
        "agent_utility": [format_rational(u) for u in outcome.agent_utility],
        "principal_payoff": format_rational(outcome.principal_payoff),
    }


def outcome_from_json(doc) -> Outcome:
    try:
        return Outcome(
            tuple(int(j) for j in doc["chosen_action"]),
            _rat_list(doc["agent_utility"], "agent_utility"),
            parse_rational(doc["principal_payoff"]),
        )
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad outcome document: {exc}") from exc
