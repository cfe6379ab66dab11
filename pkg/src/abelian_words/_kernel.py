"""Compiled depth-first walk over abelian-square avoiders.

The walk state lives in caller-owned arrays so that it stays consistent
between calls and can be paused, checkpointed and resumed:

    letters[:n], sums[:n+1]   current path and its prefix sums
    state = [n, nodes, best_len, last_len, status]

The walker always sits on a visited node.  Children are tried 0 then 1,
and a child is pruned when it closes an abelian square of order >= k.
"""

import numpy as np
from numba import njit

N, NODES, BEST, LAST, STATUS = range(5)
PAUSED, DONE, CAP = 0, 1, 2


@njit(cache=True)
def closes_square(sums, m, top, k):
    for r in range(k, m // 2 + 1):
        if top - 2 * sums[m - r] + sums[m - 2 * r] == 0:
            return True
    return False


@njit(cache=True)
def walk(k, cap, letters, sums, state, best_letters, stop_depth, budget):
    n = state[N]
    nodes = state[NODES]
    best = state[BEST]
    last = state[LAST]
    status = PAUSED
    visited = 0
    while visited < budget:
        moved = False
        if n < cap:
            for b in range(2):
                top = sums[n] + b
                if not closes_square(sums, n + 1, top, k):
                    letters[n] = b
                    sums[n + 1] = top
                    n += 1
                    moved = True
                    break
        if not moved:
            while True:
                if n <= stop_depth:
                    break
                b = letters[n - 1]
                n -= 1
                if b == 0:
                    top = sums[n] + 1
                    if not closes_square(sums, n + 1, top, k):
                        letters[n] = 1
                        sums[n + 1] = top
                        n += 1
                        moved = True
                        break
            if not moved:
                # park on the last visited node; backtracking never
                # overwrites letters or sums past n
                n = last
                status = DONE
                break
        visited += 1
        nodes += 1
        last = n
        if n > best:
            best = n
            best_letters[:n] = letters[:n]
        if n == cap:
            status = CAP
            break
    state[N] = n
    state[NODES] = nodes
    state[BEST] = best
    state[LAST] = last
    state[STATUS] = status


def warm_up():
    """Compile (or load from cache) before forking workers."""
    letters = np.zeros(4, np.int8)
    sums = np.zeros(5, np.int64)
    state = np.array([0, 1, 0, 0, 0], np.int64)
    walk(1, 4, letters, sums, state, np.zeros(4, np.int8), 0, 100)
