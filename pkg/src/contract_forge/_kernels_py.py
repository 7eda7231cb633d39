"""Pure-Python kernels operating on integer-scaled data.

Both kernels take plain lists of Python ints with the zero action stored
explicitly in column 0 (``rewards[0] == 0`` and ``costs[i][0] == 0``). The
compiled ``_kernels`` module implements the same functions with identical
results.
"""
from __future__ import annotations

from itertools import product


def minimal_payments(rewards, costs, target):
    """Least non-negative payments making every agent weakly prefer its target.

    Returns a list of length ``m + 1`` (index 0 is the zero action) or
    ``None`` when no such payments exist.
    """
    m = len(rewards) - 1
    t = [0] * (m + 1)
    assigned = sorted({a for a in target if a})
    if not assigned:
        return t
    # w[a][b]: t_a >= t_b + w[a][b]
    w = {a: {} for a in assigned}
    for i, a in enumerate(target):
        if a == 0:
            continue
        row = costs[i]
        ca = row[a]
        if ca > t[a]:
            t[a] = ca
        wa = w[a]
        for b in assigned:
            if b != a:
                d = ca - row[b]
                if b not in wa or d > wa[b]:
                    wa[b] = d
    edges = [(a, b, d) for a in assigned for b, d in w[a].items()]
    for _ in range(len(assigned)):
        changed = False
        for a, b, d in edges:
            v = t[b] + d
            if v > t[a]:
                t[a] = v
                changed = True
        if not changed:
            break
    else:
        for a, b, d in edges:
            if t[b] + d > t[a]:
                return None
    for i, a in enumerate(target):
        if a == 0:
            row = costs[i]
            for b in assigned:
                if t[b] > row[b]:
                    return None
    return t


def simulate(rewards, costs, t):
    """Principal payoff under payments ``t`` (index 0 is the zero action)."""
    m = len(rewards) - 1
    payoff = 0
    for row in costs:
        best_u = 0
        best_p = 0
        for j in range(1, m + 1):
            u = t[j] - row[j]
            if u < best_u:
                continue
            p = rewards[j] - t[j]
            if u > best_u or p > best_p:
                best_u, best_p = u, p
        payoff += best_p
    return payoff


def oracle_search(rewards, costs, first_lo, first_hi):
    """Best (payoff, assignment) over assignments whose first agent targets an
    action in ``[first_lo, first_hi)``; lexicographically first maximizer.

    Returns ``None`` when every assignment in range is infeasible.
    """
    m = len(rewards) - 1
    n = len(costs)
    best = None
    best_target = None
    ranges = [range(first_lo, first_hi)] + [range(m + 1)] * (n - 1)
    for target in product(*ranges):
        t = minimal_payments(rewards, costs, target)
        if t is None:
            continue
        value = simulate(rewards, costs, t)
        if best is None or value > best:
            best = value
            best_target = target
    if best is None:
        return None
    return best, list(best_target)


def dp_table(phi):
    """Monotone-assignment DP over an ``n x (m+1)`` table of per-agent gains.

    Returns ``(opt, assignment)`` where ``opt[i][j]`` is the best total for the
    first ``i`` agents using actions ``<= j`` and ``assignment`` is the
    canonical maximizer (smallest split index on ties).
    """
    n = len(phi)
    m = len(phi[0]) - 1
    opt = [[0] * (m + 1) for _ in range(n + 1)]
    split = [[0] * (m + 1) for _ in range(n + 1)]
    for j in range(1, m + 1):
        prefix = 0
        best = opt[0][j - 1]
        best_k = 0
        for i in range(1, n + 1):
            prefix += phi[i - 1][j]
            cand = opt[i][j - 1] - prefix
            if cand > best:
                best = cand
                best_k = i
            opt[i][j] = best + prefix
            split[i][j] = best_k
    assignment = [0] * n
    i, j = n, m
    while i > 0 and j > 0:
        k = split[i][j]
        for a in range(k, i):
            assignment[a] = j
        i = k
        j -= 1
    return opt, assignment
