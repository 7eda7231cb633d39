"""Exit criteria, one test per criterion; results are echoed in the summary."""
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from conftest import reindexed
from contract_forge.dp import detect_ordering, phi, solve, solve_dp, synthesize_payments
from contract_forge.errors import BudgetExceeded, NotID
from contract_forge.generators import (
    RandomIdSpec,
    gen_random_da,
    gen_random_id,
    gen_random_profile,
    gen_random_rna,
)
from contract_forge.hardness import check_nae, generate_mac, parse_dimacs, target_payoff, witness_payments
from contract_forge.model import DaInstance, PaymentProfile, best_response, simulate
from contract_forge.oracle import decide_mac, minimal_payments, oracle_solve
from contract_forge.rna import (
    RnaInstance,
    Threshold,
    approx_contract,
    da_to_rna,
    harmonic,
    linear_cost,
    rna_profile_from_da,
    rna_simulate,
    surplus_argmax,
)
from oracles import monotone_assignments

EXAMPLE1 = DaInstance((8, 10), ((5, 9), (4, 2)))


@pytest.fixture(scope="module")
def id_corpus():
    rng = random.Random(20240501)
    return [
        gen_random_id(RandomIdSpec(rng.randint(1, 5), rng.randint(1, 4), seed=rng.randrange(2**32),
                                   denominator=rng.choice([1, 1, 2, 3])))
        for _ in range(500)
    ]


def test_c1_example1_reproduction():
    sol = solve(EXAMPLE1, method="dp")
    assert sol.method == "dp"
    assert sol.outcome.principal_payoff == 10
    assert sol.profile.payments == (5, 3)
    assert solve(EXAMPLE1.restrict([0]), method="dp").outcome.principal_payoff == 3
    assert solve(EXAMPLE1.restrict([1]), method="dp").outcome.principal_payoff == 8
    assert decide_mac(EXAMPLE1, 11) is False
    best = min(_timed(lambda: solve(EXAMPLE1, method="dp")) for _ in range(20))
    assert best < 1e-3, f"DP solve took {best * 1e3:.3f} ms"


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def test_c2_oracle_equals_dp(id_corpus):
    start = time.perf_counter()
    for inst in id_corpus:
        assert (inst.m + 1) ** inst.n <= 6**5
        dp_sol = solve(inst, method="dp")
        orc = oracle_solve(inst)
        ordering = detect_ordering(inst)
        value = solve_dp(inst, ordering).value
        assert value == orc.value
        assert simulate(inst, dp_sol.profile).principal_payoff == value
        assert simulate(inst, orc.profile).principal_payoff == value
    elapsed = time.perf_counter() - start
    assert elapsed < 30, f"{elapsed:.1f} s"


def test_c3_monotone_responses():
    rng = random.Random(7)
    violations = 0
    for _ in range(200):
        inst = gen_random_id(RandomIdSpec(rng.randint(2, 6), rng.randint(1, 5), seed=rng.randrange(2**32)))
        o = detect_ordering(inst)
        pos = {0: 0, **{a: l + 1 for l, a in enumerate(o.action_order)}}
        for _ in range(20):
            out = simulate(inst, gen_random_profile(inst.m, rng, max_value=60, denominator=rng.choice([1, 2])))
            seq = [pos[out.chosen_action[i]] for i in o.agent_order]
            violations += seq != sorted(seq)
    assert violations == 0


def test_c4_incentive_suite(id_corpus):
    violations = 0
    for inst in id_corpus:
        o = detect_ordering(inst)
        rewards, costs = reindexed(inst, o)
        for a in monotone_assignments(inst.n, inst.m):
            pays = synthesize_payments(inst, o, a)
            t = [Fraction(0)] + [pays.payment(j) for j in o.action_order]
            for i, ji in enumerate(a):
                for j in range(inst.m + 1):
                    violations += t[j] - costs[i][j] > t[ji] - costs[i][ji]
            bound = sum(phi(inst, o, i, j) for i, j in enumerate(a))
            violations += simulate(inst, pays).principal_payoff < bound
    assert violations == 0


def test_c5_hardness_witness():
    formula = parse_dimacs("p nae3sat 4 2\n1 2 -3\n1 -2 4\n")
    bundle = generate_mac(formula)
    assert (bundle.instance.n, bundle.instance.m) == (32, 20)
    assert (bundle.delta, bundle.rho1, bundle.rho2) == (7, 112, 115)
    r = target_payoff(4, 2, 7, 112, 115)
    assert r == 3546 == bundle.r
    satisfying = [bits for bits in product([False, True], repeat=4) if check_nae(formula, bits)]
    assert satisfying
    for bits in satisfying:
        assert simulate(bundle.instance, witness_payments(bundle, bits)).principal_payoff == r


def test_c6_reduction_scaling():
    rng = random.Random(99)
    for _ in range(100):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        inst = gen_random_da(n, m, seed=rng.randrange(2**32), max_value=15, denominator=rng.choice([1, 2]))
        rinst, scale = da_to_rna(inst)
        for _ in range(10):
            p = gen_random_profile(m, rng, max_value=25, denominator=rng.choice([1, 2]))
            da = simulate(inst, p)
            out = rna_simulate(rinst, rna_profile_from_da(p, scale))
            assert scale.scale * out.payoff == da.principal_payoff
            assert out.choices == tuple(scale.z[j] for j in da.chosen_action)


def test_c7_approximation_guarantee():
    rng = random.Random(123)
    start = time.perf_counter()
    for _ in range(300):
        n = rng.randint(1, 20)
        inst = gen_random_rna(n, seed=rng.randrange(2**32), max_pieces=6)
        assert all(len(c.pieces) <= 6 for c in inst.costs)
        a = approx_contract(inst)
        total_y = sum(s.y for s in a.summaries)
        realized = rna_simulate(inst, a.payment).payoff
        assert realized >= a.guarantee
        assert a.guarantee >= total_y / harmonic(n)
        assert realized <= total_y
    elapsed = time.perf_counter() - start
    assert elapsed < 10, f"{elapsed:.1f} s"


def test_c8_degenerate_inputs():
    # n = 1: value is max(0, max_j rho_j - c_j), payment equals that action's cost
    single = DaInstance((8, 10, 3), ((5, 4, 1),))
    sol = solve(single)
    assert sol.method == "dp" and sol.outcome.principal_payoff == 6 and sol.profile.payments == (0, 4, 0)
    # m = 1
    one = DaInstance((8,), ((5,), (3,)))
    assert solve(one).outcome.principal_payoff == oracle_solve(one).value == 6
    # zero rewards
    zero = gen_random_id(RandomIdSpec(4, 3, seed=5, max_reward=0))
    zsol = solve(zero)
    assert zsol.outcome.principal_payoff == 0 and zsol.profile.payments == (0, 0, 0)
    assert solve_dp(zero, detect_ordering(zero)).assignment == (0, 0, 0, 0)
    # all-zero profile with strictly positive costs -> zero action
    assert best_response(single, PaymentProfile.zeros(3), 0) == 0
    # identical agents fall back to the oracle; too large -> budget error
    same = DaInstance((3, 4), ((1, 2), (1, 2)))
    with pytest.raises(NotID):
        detect_ordering(same)
    assert solve(same).method == "oracle"
    with pytest.raises(BudgetExceeded):
        solve(gen_random_da(30, 2, seed=1), budget=10**6)
    # minimal payments trivial cases
    assert minimal_payments(EXAMPLE1, (0, 0)).payments == (0, 0)
    assert minimal_payments(DaInstance((4, 9), ((0, 0), (0, 0))), (1, 2)).payments == (0, 0)
    # zero-cost agents: free production and free actions
    free = RnaInstance((linear_cost(0),))
    fa = approx_contract(free)
    assert fa.payment == Threshold(1) and fa.guarantee == 1
    assert rna_simulate(free, fa.payment).payoff == 1
    assert surplus_argmax(linear_cost(0)).x_star == 1
    zc = DaInstance((5, 7), ((0, 0), (0, 0), (0, 0)))
    assert solve(zc).outcome.principal_payoff == 21
    # decide at r = 0 always holds
    assert decide_mac(same, 0)
