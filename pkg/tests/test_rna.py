import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import profile
from contract_forge.errors import InvalidCost, InvalidPayment, MisalignedStep
from contract_forge.generators import (
    gen_random_cost,
    gen_random_da,
    gen_random_payment,
    gen_random_profile,
    gen_random_rna,
)
from contract_forge.model import DaInstance, best_response, simulate
from contract_forge.oracle import oracle_solve
from contract_forge.rna import (
    Piece,
    PiecewiseCost,
    RnaInstance,
    Step,
    Threshold,
    approx_contract,
    da_profile_from_rna,
    da_to_rna,
    harmonic,
    linear_cost,
    rna_best_response,
    rna_profile_from_da,
    rna_simulate,
    surplus_argmax,
)

GRID = [F(k, 96) for k in range(97)]  # contains every breakpoint (1/24) and midpoint (1/48)


def step_cost(*cells):
    """Left-open right-closed constant pieces; cells are (hi, value)."""
    pieces, lo = [], F(0)
    for hi, v in cells:
        pieces.append(Piece(lo, F(hi), False, True, F(v), F(0)))
        lo = F(hi)
    return PiecewiseCost(tuple(pieces), at_zero=F(0))


def grid_key_max(cost, payment):
    """Lexicographic max of (agent utility, principal value) over GRID."""
    return max((payment(x) - cost(x), x - payment(x)) for x in GRID)


# -- surplus ---------------------------------------------------------------


def test_surplus_free_production():
    s = surplus_argmax(linear_cost(0))
    assert (s.x_star, s.y) == (1, 1)


def test_surplus_half_cost():
    s = surplus_argmax(linear_cost(F(1, 2)))
    assert (s.x_star, s.y) == (1, F(1, 2))


def test_surplus_reduction_step_cost():
    # Example-1 agent 2 with M = 10: x - c is 4/30 at 18/30 and 8/30 at 1
    cost = step_cost((F(18, 30), F(14, 30)), (1, F(22, 30)))
    s = surplus_argmax(cost)
    assert (s.x_star, s.y) == (1, F(8, 30))


def test_surplus_prefers_largest_maximizer():
    # x - c(x) = 0 everywhere
    s = surplus_argmax(linear_cost(1))
    assert (s.x_star, s.y) == (1, 0)


@pytest.mark.parametrize(
    "pieces, at_zero",
    [
        ((Piece(0, F(1, 2), True, True, 0, 0), Piece(F(1, 2), 1, True, True, 0, 0)), None),  # overlap
        ((Piece(0, F(1, 2), True, False, 0, 0), Piece(F(1, 2), 1, False, True, 0, 0)), None),  # gap
        ((Piece(0, 1, True, True, 1, 0),), None),  # c(0) != 0
        ((Piece(0, 1, False, True, 0, 0),), None),  # 0 uncovered
        ((Piece(0, 1, True, True, 0, -1),), None),  # negative
        ((Piece(0, F(1, 2), True, False, 0, 0), Piece(F(1, 2), 1, True, True, 1, 0)), None),  # sup 1/2 not attained
        ((Piece(0, F(1, 2), True, True, 0, 0),), None),  # does not reach 1
    ],
)
def test_invalid_costs(pieces, at_zero):
    with pytest.raises(InvalidCost):
        PiecewiseCost(pieces, at_zero)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_surplus_matches_grid(seed):
    cost = gen_random_cost(random.Random(seed))
    s = surplus_argmax(cost)
    assert s.y == s.x_star - cost(s.x_star)
    assert s.y == max(x - cost(x) for x in GRID)
    assert 0 <= s.y <= s.x_star <= 1


# -- best responses and simulation -----------------------------------------


def test_best_response_threshold_tie():
    # utility 0 at x = 0 and x = 1; principal gets 1/2 at x = 1
    assert rna_best_response(linear_cost(F(1, 2)), Threshold(F(1, 2))) == 1


def test_best_response_zero_payment():
    assert rna_best_response(linear_cost(F(1, 3), intercept=F(1, 5)), Threshold(1)) == 0
    assert rna_best_response(linear_cost(0), Threshold(1)) == 1


def test_simulate_two_linear_agents():
    inst = RnaInstance((linear_cost(F(1, 2)), linear_cost(F(1, 4))))
    out = rna_simulate(inst, Threshold(F(1, 2)))
    assert out.choices == (1, 1) and out.payoff == 1


def test_simulate_trivial():
    inst = RnaInstance((linear_cost(F(1, 3), intercept=F(1, 7)),) * 3)
    assert rna_simulate(inst, Threshold(1)).payoff == 0
    assert rna_simulate(RnaInstance((linear_cost(0),)), Threshold(1)).payoff == 1


def test_tie_break_supremum_not_attained():
    # zero cost on [0, 3/8), surplus 3/8 attained at 1; threshold 5/8 leaves utility 0
    # on [0, 3/8) where the principal's x has no maximum: best candidate wins
    cost = PiecewiseCost((
        Piece(0, F(3, 8), True, False, 0, 0),
        Piece(F(3, 8), 1, True, True, F(5, 8), 0),
    ))
    x = rna_best_response(cost, Threshold(F(5, 8)))
    assert x == F(3, 16)


def test_unattainable_payment_rejected():
    # utility 1/2 - x/2 on (0, 1/2]: supremum 1/2 approached as x -> 0+, but u(0) = 0
    with pytest.raises(InvalidPayment):
        rna_best_response(linear_cost(F(1, 2)), Step((F(1, 2), F(1)), (F(1, 2), F(1, 2))))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_best_response_matches_grid(seed):
    rng = random.Random(seed)
    cost = gen_random_cost(rng)
    pay = gen_random_payment(rng)
    try:
        x = rna_best_response(cost, pay)
    except InvalidPayment:
        return
    key = (pay(x) - cost(x), x - pay(x))
    assert key[0] == max(pay(g) - cost(g) for g in GRID)
    assert key <= grid_key_max(cost, pay)
    # never worse than any breakpoint of either function
    assert all(key >= (pay(g) - cost(g), g - pay(g)) for g in GRID[::4])


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_threshold_utility_value(seed):
    rng = random.Random(seed)
    c_i, c_k = gen_random_cost(rng), gen_random_cost(rng)
    y_i, y_k = surplus_argmax(c_i).y, surplus_argmax(c_k).y
    t = Threshold(y_i)
    x = rna_best_response(c_k, t)
    assert t(x) - c_k(x) == max(F(0), y_k - y_i)


# -- approximation ---------------------------------------------------------


def test_approx_single_free_agent():
    a = approx_contract(RnaInstance((linear_cost(0),)))
    assert a.payment == Threshold(1) and a.guarantee == 1


def test_approx_two_linear_agents():
    # ascending y = (1/2, 3/4): 2 * 1/2 = 1 beats 1 * 3/4
    a = approx_contract(RnaInstance((linear_cost(F(1, 2)), linear_cost(F(1, 4)))))
    assert a.payment == Threshold(F(1, 2)) and a.i_star == 0 and a.guarantee == 1


def test_approx_identical_agents():
    a = approx_contract(RnaInstance((linear_cost(F(2, 5)),) * 4))
    assert a.payment == Threshold(F(3, 5)) and a.i_star == 0 and a.guarantee == F(12, 5)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**6))
def test_approx_guarantee(n, seed):
    inst = gen_random_rna(n, seed)
    a = approx_contract(inst)
    ys = [s.y for s in a.summaries]
    realized = rna_simulate(inst, a.payment).payoff
    assert realized >= a.guarantee
    assert a.guarantee * harmonic(n) >= sum(ys)
    assert realized <= sum(ys)
    rng = random.Random(seed)
    for _ in range(5):
        pay = gen_random_payment(rng)
        try:
            assert rna_simulate(inst, pay).payoff <= sum(ys)
        except InvalidPayment:
            pass


# -- reduction -------------------------------------------------------------


def test_da_to_rna_example1_with_m10(example1):
    r, s = da_to_rna(example1, M=10)
    assert s.scale == 30 and s.z == (0, F(18, 30), 1)
    assert r.costs[0] == step_cost((F(18, 30), F(15, 30)), (1, F(29, 30)))
    assert r.costs[1] == step_cost((F(18, 30), F(14, 30)), (1, F(22, 30)))


def test_da_to_rna_default_m(example1):
    _, s = da_to_rna(example1)
    assert s.M == 11 and s.scale == 32 and s.z == (0, F(19, 32), 1)


def test_da_to_rna_single_action():
    r, s = da_to_rna(DaInstance((1,), ((0,),)))
    assert (s.M, s.scale, s.z) == (2, 3, (0, 1))
    assert r.costs[0](1) == F(2, 3)


def test_da_to_rna_rejects_small_m(example1):
    with pytest.raises(ValueError):
        da_to_rna(example1, M=1)


def test_profile_mapping_example1(example1):
    _, s = da_to_rna(example1, M=10)
    step = rna_profile_from_da(profile(5, 3), s)
    assert step.values == (F(15, 30), F(23, 30))
    assert da_profile_from_rna(step, s).payments == (5, 3)


def test_profile_mapping_zero(example1):
    _, s = da_to_rna(example1)
    step = rna_profile_from_da(profile(0, 0), s)
    assert step.values == (F(11, 32), F(22, 32))
    assert da_profile_from_rna(step, s).payments == (0, 0)


def test_profile_mapping_clamps(example1):
    _, s = da_to_rna(example1, M=10)
    step = Step(s.z[1:], (F(0), F(1, 30)))
    assert da_profile_from_rna(step, s).payments == (0, 0)


def test_profile_mapping_misaligned(example1):
    _, s = da_to_rna(example1, M=10)
    with pytest.raises(MisalignedStep):
        da_profile_from_rna(Step((F(1, 2), F(1)), (F(1, 2), F(2, 3))), s)
    # a finer step that is still constant on each cell is accepted
    fine = Step((F(1, 3), F(18, 30), 1), (F(1, 2), F(1, 2), F(23, 30)))
    assert da_profile_from_rna(fine, s).payments == (5, 3)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_scaling_identity(n, m, seed):
    rng = random.Random(seed)
    inst = gen_random_da(n, m, seed, max_value=12, denominator=rng.choice([1, 2]))
    r, s = da_to_rna(inst)
    for _ in range(5):
        p = gen_random_profile(m, rng, max_value=20)
        da = simulate(inst, p)
        out = rna_simulate(r, rna_profile_from_da(p, s))
        assert s.scale * out.payoff == da.principal_payoff
        assert out.choices == tuple(s.z[j] for j in da.chosen_action)
        for i in range(n):
            assert rna_best_response(r.costs[i], rna_profile_from_da(p, s)) == s.z[best_response(inst, p, i)]


@pytest.mark.parametrize("seed", range(15))
def test_optimality_transfer(seed):
    rng = random.Random(seed)
    inst = gen_random_da(rng.randint(1, 3), rng.randint(1, 3), seed, max_value=8)
    r, s = da_to_rna(inst)
    best = oracle_solve(inst)
    assert s.scale * rna_simulate(r, rna_profile_from_da(best.profile, s)).payoff == best.value
    for _ in range(20):
        vals = tuple(F(rng.randint(0, 60), 2) / s.scale for _ in range(inst.m))
        step = Step(s.z[1:], vals)
        assert s.scale * rna_simulate(r, step).payoff <= best.value
