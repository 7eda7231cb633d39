"""Compare the compiled and pure-Python kernels on oracle search and the DP."""
import argparse
import time

from contract_forge.dp import detect_ordering, solve_dp
from contract_forge.generators import RandomIdSpec, gen_random_id
from contract_forge.kernels import available_backends
from contract_forge.oracle import oracle_solve


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--agents", type=int, default=6)
    p.add_argument("--actions", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=3)
    args = p.parse_args(argv)

    inst = gen_random_id(RandomIdSpec(args.agents, args.actions, seed=args.seed))
    ordering = detect_ordering(inst)
    size = (args.actions + 1) ** args.agents
    print(f"instance: n={inst.n} m={inst.m} assignments={size}")
    results = {}
    for backend in available_backends():
        t_oracle = best_of(lambda: oracle_solve(inst, budget=size, backend=backend), args.repeats)
        t_dp = best_of(lambda: solve_dp(inst, ordering, backend=backend), args.repeats)
        results[backend] = (t_oracle, t_dp)
        print(f"{backend:>9}: oracle {t_oracle * 1e3:9.2f} ms   dp {t_dp * 1e3:7.3f} ms")
    if len(results) == 2:
        (co, cd), (po, pd) = results["compiled"], results["python"]
        print(f"speedup: oracle x{po / co:.1f}   dp x{pd / cd:.1f}")


if __name__ == "__main__":
    main()
