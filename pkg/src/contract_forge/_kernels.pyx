# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract as ``_kernels_py`` on int64-safe data."""
from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef bint _min_pay(int n, int m, i64* R, i64* C, int* target, i64* t,
                   int* assigned, char* is_assigned, i64* w, char* has_w) noexcept nogil:
    cdef int i, a, b, k = 0, r, x, y
    cdef i64 d, v
    cdef bint changed
    for a in range(m + 1):
        t[a] = 0
        is_assigned[a] = 0
    for i in range(n):
        a = target[i]
        if a and not is_assigned[a]:
            is_assigned[a] = 1
    for a in range(1, m + 1):
        if is_assigned[a]:
            assigned[k] = a
            k += 1
    if k == 0:
        return True
    for x in range(k):
        for y in range(k):
            has_w[x * k + y] = 0
    for i in range(n):
        a = target[i]
        if a == 0:
            continue
        if C[i * (m + 1) + a] > t[a]:
            t[a] = C[i * (m + 1) + a]
        for x in range(k):
            if assigned[x] == a:
                break
        for y in range(k):
            b = assigned[y]
            if b == a:
                continue
            d = C[i * (m + 1) + a] - C[i * (m + 1) + b]
            if not has_w[x * k + y] or d > w[x * k + y]:
                w[x * k + y] = d
                has_w[x * k + y] = 1
    changed = True
    for r in range(k):
        changed = False
        for x in range(k):
            a = assigned[x]
            for y in range(k):
                if has_w[x * k + y]:
                    v = t[assigned[y]] + w[x * k + y]
                    if v > t[a]:
                        t[a] = v
                        changed = True
        if not changed:
            break
    if changed:
        for x in range(k):
            for y in range(k):
                if has_w[x * k + y] and t[assigned[y]] + w[x * k + y] > t[assigned[x]]:
                    return False
    for i in range(n):
        if target[i] == 0:
            for y in range(k):
                b = assigned[y]
                if t[b] > C[i * (m + 1) + b]:
                    return False
    return True


cdef i64 _simulate(int n, int m, i64* R, i64* C, i64* t) noexcept nogil:
    cdef int i, j
    cdef i64 payoff = 0, best_u, best_p, u, p
    for i in range(n):
        best_u = 0
        best_p = 0
        for j in range(1, m + 1):
            u = t[j] - C[i * (m + 1) + j]
            if u < best_u:
                continue
            p = R[j] - t[j]
            if u > best_u or p > best_p:
                best_u = u
                best_p = p
        payoff += best_p
    return payoff


def minimal_payments(rewards, costs, target):
    cdef int n = len(costs), m = len(rewards) - 1, i, j
    cdef i64* R = <i64*>malloc((m + 1) * sizeof(i64))
    cdef i64* C = <i64*>malloc(n * (m + 1) * sizeof(i64))
    cdef int* tg = <int*>malloc(n * sizeof(int))
    cdef i64* t = <i64*>malloc((m + 1) * sizeof(i64))
    cdef int* assigned = <int*>malloc((m + 1) * sizeof(int))
    cdef char* is_assigned = <char*>malloc((m + 1) * sizeof(char))
    cdef i64* w = <i64*>malloc((m + 1) * (m + 1) * sizeof(i64))
    cdef char* has_w = <char*>malloc((m + 1) * (m + 1) * sizeof(char))
    try:
        for j in range(m + 1):
            R[j] = rewards[j]
        for i in range(n):
            tg[i] = target[i]
            for j in range(m + 1):
                C[i * (m + 1) + j] = costs[i][j]
        if not _min_pay(n, m, R, C, tg, t, assigned, is_assigned, w, has_w):
            return None
        return [t[j] for j in range(m + 1)]
    finally:
        free(R); free(C); free(tg); free(t)
        free(assigned); free(is_assigned); free(w); free(has_w)


def simulate(rewards, costs, t):
    cdef int n = len(costs), m = len(rewards) - 1, i, j
    cdef i64* R = <i64*>malloc((m + 1) * sizeof(i64))
    cdef i64* C = <i64*>malloc(n * (m + 1) * sizeof(i64))
    cdef i64* tt = <i64*>malloc((m + 1) * sizeof(i64))
    try:
        for j in range(m + 1):
            R[j] = rewards[j]
            tt[j] = t[j]
        for i in range(n):
            for j in range(m + 1):
                C[i * (m + 1) + j] = costs[i][j]
        return _simulate(n, m, R, C, tt)
    finally:
        free(R); free(C); free(tt)


def oracle_search(rewards, costs, int first_lo, int first_hi):
    cdef int n = len(costs), m = len(rewards) - 1, i, j, pos
    cdef i64 value, best = 0
    cdef bint found = False, done
    if first_lo >= first_hi:
        return None
    cdef i64* R = <i64*>malloc((m + 1) * sizeof(i64))
    cdef i64* C = <i64*>malloc(n * (m + 1) * sizeof(i64))
    cdef int* tg = <int*>malloc(n * sizeof(int))
    cdef int* best_tg = <int*>malloc(n * sizeof(int))
    cdef i64* t = <i64*>malloc((m + 1) * sizeof(i64))
    cdef int* assigned = <int*>malloc((m + 1) * sizeof(int))
    cdef char* is_assigned = <char*>malloc((m + 1) * sizeof(char))
    cdef i64* w = <i64*>malloc((m + 1) * (m + 1) * sizeof(i64))
    cdef char* has_w = <char*>malloc((m + 1) * (m + 1) * sizeof(char))
    try:
        for j in range(m + 1):
            R[j] = rewards[j]
        for i in range(n):
            tg[i] = 0
            for j in range(m + 1):
                C[i * (m + 1) + j] = costs[i][j]
        tg[0] = first_lo
        with nogil:
            done = False
            while not done:
                if _min_pay(n, m, R, C, tg, t, assigned, is_assigned, w, has_w):
                    value = _simulate(n, m, R, C, t)
                    if not found or value > best:
                        best = value
                        found = True
                        for i in range(n):
                            best_tg[i] = tg[i]
                # odometer, last agent fastest
                pos = n - 1
                while True:
                    if pos == 0:
                        tg[0] += 1
                        if tg[0] >= first_hi:
                            done = True
                        break
                    tg[pos] += 1
                    if tg[pos] <= m:
                        break
                    tg[pos] = 0
                    pos -= 1
        if not found:
            return None
        return best, [best_tg[i] for i in range(n)]
    finally:
        free(R); free(C); free(tg); free(best_tg); free(t)
        free(assigned); free(is_assigned); free(w); free(has_w)


def dp_table(phi):
    cdef int n = len(phi), m = len(phi[0]) - 1, i, j, k, a
    cdef i64 prefix, best, cand
    cdef i64* P = <i64*>malloc(n * (m + 1) * sizeof(i64))
    cdef i64* opt = <i64*>malloc((n + 1) * (m + 1) * sizeof(i64))
    cdef int* split = <int*>malloc((n + 1) * (m + 1) * sizeof(int))
    cdef int best_k
    try:
        for i in range(n):
            for j in range(m + 1):
                P[i * (m + 1) + j] = phi[i][j]
        for i in range(n + 1):
            opt[i * (m + 1)] = 0
            split[i * (m + 1)] = 0
        for j in range(m + 1):
            opt[j] = 0
            split[j] = 0
        for j in range(1, m + 1):
            prefix = 0
            best = opt[j - 1]
            best_k = 0
            for i in range(1, n + 1):
                prefix += P[(i - 1) * (m + 1) + j]
                cand = opt[i * (m + 1) + j - 1] - prefix
                if cand > best:
                    best = cand
                    best_k = i
                opt[i * (m + 1) + j] = best + prefix
                split[i * (m + 1) + j] = best_k
        assignment = [0] * n
        i = n
        j = m
        while i > 0 and j > 0:
            k = split[i * (m + 1) + j]
            for a in range(k, i):
                assignment[a] = j
            i = k
            j -= 1
        table = [[opt[i * (m + 1) + j] for j in range(m + 1)] for i in range(n + 1)]
        return table, assignment
    finally:
        free(P); free(opt); free(split)
