"""Compiled inner loops for the dense longest-game table.

Shelves are 1-D int8 arrays of book ids (values 1..n). Table entries are
``UNKNOWN`` (-1), ``IN_PROGRESS`` (-2, the state is on the DFS stack) or the
exact longest remaining game.
"""

import numpy as np
from numba import njit

UNKNOWN = -1
IN_PROGRESS = -2
CYCLE = -3

MAX_KERNEL_N = 12

FACT = np.array([1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800,
                 39916800, 479001600], dtype=np.int64)
POPCOUNT = np.array([bin(i).count("1") for i in range(1 << MAX_KERNEL_N)], dtype=np.int64)


@njit(cache=True)
def rank(perm, n, fact, popcount):
    seen = 0
    r = 0
    for i in range(n):
        b = perm[i] - 1
        smaller_left = popcount[seen & ((1 << b) - 1)]
        r += (b - smaller_left) * fact[n - 1 - i]
        seen |= 1 << b
    return r


@njit(cache=True)
def unrank_into(r, n, fact, out):
    used = 0
    for i in range(n):
        d = r // fact[n - 1 - i]
        r = r % fact[n - 1 - i]
        b = 0
        while True:
            if not (used >> b) & 1:
                if d == 0:
                    break
                d -= 1
            b += 1
        used |= 1 << b
        out[i] = b + 1


@njit(cache=True)
def move_into(src, n, book, dst):
    p = 0
    while src[p] != book:
        p += 1
    k = book - 1
    if p > k:
        for i in range(k):
            dst[i] = src[i]
        dst[k] = book
        for i in range(k, p):
            dst[i + 1] = src[i]
        for i in range(p + 1, n):
            dst[i] = src[i]
    else:
        for i in range(p):
            dst[i] = src[i]
        for i in range(p + 1, k + 1):
            dst[i - 1] = src[i]
        dst[k] = book
        for i in range(k + 1, n):
            dst[i] = src[i]


@njit(cache=True)
def fill_from(start, n, table, fact, popcount, max_depth):
    """Evaluate ``start`` and everything reachable from it.

    Returns the value of ``start``, or CYCLE if a move ever reaches a state
    that is still on the DFS stack.
    """
    r0 = rank(start, n, fact, popcount)
    if table[r0] >= 0:
        return table[r0]
    perms = np.empty((max_depth + 2, n), dtype=np.int8)
    ranks = np.empty(max_depth + 2, dtype=np.int64)
    nxt = np.empty(max_depth + 2, dtype=np.int64)
    best = np.empty(max_depth + 2, dtype=np.int64)
    perms[0, :] = start
    ranks[0] = r0
    nxt[0] = 1
    best[0] = 0
    table[r0] = IN_PROGRESS
    sp = 1
    while sp > 0:
        top = sp - 1
        pushed = False
        while nxt[top] <= n:
            b = nxt[top]
            nxt[top] += 1
            if perms[top, b - 1] == b:
                continue
            move_into(perms[top], n, b, perms[sp])
            rc = rank(perms[sp], n, fact, popcount)
            v = table[rc]
            if v >= 0:
                if v + 1 > best[top]:
                    best[top] = v + 1
                continue
            if v == IN_PROGRESS or sp > max_depth:
                return CYCLE
            table[rc] = IN_PROGRESS
            ranks[sp] = rc
            nxt[sp] = 1
            best[sp] = 0
            sp += 1
            pushed = True
            break
        if not pushed:
            val = best[top]
            table[ranks[top]] = val
            sp -= 1
            if sp > 0 and val + 1 > best[sp - 1]:
                best[sp - 1] = val + 1
    return table[r0]


@njit(cache=True)
def fill_all(n, table, fact, popcount, max_depth):
    """Evaluate every state in rank order; returns CYCLE on failure, else 0."""
    perm = np.empty(n, dtype=np.int8)
    for r in range(fact[n]):
        if table[r] >= 0:
            continue
        unrank_into(r, n, fact, perm)
        if fill_from(perm, n, table, fact, popcount, max_depth) == CYCLE:
            return CYCLE
    return 0


@njit(cache=True)
def best_move(perm, n, table, fact, popcount):
    """Smallest book whose move keeps the longest game optimal (-1 if none)."""
    r = rank(perm, n, fact, popcount)
    target = table[r] - 1
    if target < 0:
        return -1
    child = np.empty(n, dtype=np.int8)
    for b in range(1, n + 1):
        if perm[b - 1] == b:
            continue
        move_into(perm, n, b, child)
        if table[rank(child, n, fact, popcount)] == target:
            return b
    return -1


@njit(cache=True)
def potential_sum(perm, n):
    L = 0
    R = 0
    for i in range(n):
        p = i + 1
        b = perm[i]
        if b < n and p <= b:
            L |= 1 << (n - 1 - b)
        if b > 1 and p >= b:
            R |= 1 << (b - 2)
    return L + R


@njit(cache=True)
def greedy_move(perm, n):
    """Misplaced book whose move gives the smallest L + R; smallest id on ties."""
    child = np.empty(n, dtype=np.int8)
    best = -1
    best_sum = 0
    for b in range(1, n + 1):
        # book b is misplaced iff perm[b-1] != b
        if perm[b - 1] == b:
            continue
        move_into(perm, n, b, child)
        total = potential_sum(child, n)
        if best < 0 or total < best_sum:
            best = b
            best_sum = total
    return best
