"""Seeded random instance generators for tests, benchmarks and the CLI."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidCost
from .model import DaInstance, PaymentProfile
from .rna import Piece, PiecewiseCost, RnaInstance, Step, Threshold


@dataclass(frozen=True)
class RandomIdSpec:
    n: int
    m: int
    seed: int = 0
    max_base_cost: int = 10
    max_gap_step: int = 5
    max_reward: int = 40
    denominator: int = 1


def gen_random_id(spec: RandomIdSpec) -> DaInstance:
    """Instance obeying increasing differences by construction.

    Costs are built from the strongest agent upward with strictly increasing
    positive gaps per adjacent pair; agent and action labels are then shuffled.
    """
    if spec.n < 1 or spec.m < 1:
        raise ValueError("need n, m >= 1")
    rng = random.Random(spec.seed)
    d = spec.denominator
    n, m = spec.n, spec.m
    rows = [[rng.randint(0, spec.max_base_cost) for _ in range(m)]]
    for _ in range(n - 1):
        gap = 0
        stronger = rows[0]
        row = []
        for l in range(m):
            gap += rng.randint(1, spec.max_gap_step)
            row.append(stronger[l] + gap)
        rows.insert(0, row)
    rewards = [rng.randint(0, spec.max_reward) for _ in range(m)]
    agent_perm = list(range(n))
    action_perm = list(range(m))
    rng.shuffle(agent_perm)
    rng.shuffle(action_perm)
    costs = tuple(
        tuple(Fraction(rows[agent_perm[i]][action_perm[j]], d) for j in range(m))
        for i in range(n)
    )
    return DaInstance(tuple(Fraction(rewards[action_perm[j]], d) for j in range(m)), costs)


def gen_random_da(n: int, m: int, seed: int = 0, max_value: int = 20, denominator: int = 1) -> DaInstance:
    """Unstructured instance with independent uniform costs and rewards."""
    rng = random.Random(seed)
    rewards = tuple(Fraction(rng.randint(0, max_value), denominator) for _ in range(m))
    costs = tuple(
        tuple(Fraction(rng.randint(0, max_value), denominator) for _ in range(m))
        for _ in range(n)
    )
    return DaInstance(rewards, costs)


def gen_random_profile(m: int, rng: random.Random, max_value: int = 25, denominator: int = 1) -> PaymentProfile:
    return PaymentProfile(tuple(Fraction(rng.randint(0, max_value), denominator) for _ in range(m)))


def _random_grid(rng: random.Random, k: int, den: int) -> list[Fraction]:
    inner = sorted(rng.sample(range(1, den), k - 1)) if k > 1 else []
    return [Fraction(0)] + [Fraction(x, den) for x in inner] + [Fraction(1)]


def gen_random_cost(rng: random.Random, max_pieces: int = 6, den: int = 24) -> PiecewiseCost:
    """Random valid piecewise-affine cost (rejection-sampled until valid)."""
    while True:
        k = rng.randint(1, max_pieces)
        grid = _random_grid(rng, k, den)
        first_open = rng.random() < 0.5
        # closed_right[l]: piece l owns its right endpoint
        closed_right = [rng.random() < 0.5 for _ in range(k - 1)] + [True]
        pieces = []
        for l in range(k):
            lo, hi = grid[l], grid[l + 1]
            lo_closed = (not first_open) if l == 0 else not closed_right[l - 1]
            v_lo = Fraction(rng.randint(0, 2 * den), den)
            v_hi = Fraction(rng.randint(0, 2 * den), den)
            if l == 0 and lo_closed:
                v_lo = Fraction(0)
            if rng.random() < 0.15:
                v_hi = v_lo + (hi - lo)  # flat surplus stretch
            b = (v_hi - v_lo) / (hi - lo)
            pieces.append(Piece(lo, hi, lo_closed, closed_right[l], v_lo - b * lo, b))
        try:
            return PiecewiseCost(tuple(pieces), at_zero=Fraction(0) if first_open else None)
        except InvalidCost:
            continue


def gen_random_rna(n: int, seed: int = 0, max_pieces: int = 6) -> RnaInstance:
    rng = random.Random(seed)
    return RnaInstance(tuple(gen_random_cost(rng, max_pieces) for _ in range(n)))


def gen_random_payment(rng: random.Random, den: int = 24):
    """A random threshold or step payment (validity per agent is not checked)."""
    if rng.random() < 0.5:
        return Threshold(Fraction(rng.randint(0, den), den))
    k = rng.randint(1, 5)
    grid = _random_grid(rng, k, den)
    return Step(tuple(grid[1:]), tuple(Fraction(rng.randint(0, den), den) for _ in range(k)))
