# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Mirrors _enumeration_py.enumerate_best on int64 data.  The caller is
responsible for keeping magnitudes inside int64 (scaled prices and the
total-budget bound); oversized inputs must go to the pure backend.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.stdint cimport int64_t, uint64_t


def enumerate_best(int num_items, cand_counts, cand_prices,
                   consumer_masks, budgets, int model_flag):
    cdef int n = num_items
    cdef int m = len(consumer_masks)
    cdef int i, j, k, t
    cdef int total = 0
    cdef int nbits = 0
    cdef uint64_t mask
    cdef int *counts = NULL
    cdef int *offsets = NULL
    cdef int64_t *prices = NULL
    cdef int64_t *cur = NULL
    cdef int *choice = NULL
    cdef int *best_choice = NULL
    cdef int64_t *buds = NULL
    cdef int *cons_off = NULL
    cdef int *cons_idx = NULL
    cdef int64_t best_rev = -1
    cdef int64_t rev, cheapest, bundle, p
    cdef bint running = True

    if len(cand_counts) != n:
        raise ValueError("cand_counts length mismatch")
    if len(budgets) != m:
        raise ValueError("consumer_masks and budgets length mismatch")
    if n == 0:
        return 0, []
    if n > 64:
        raise ValueError("compiled kernel handles at most 64 items")

    for i in range(n):
        if cand_counts[i] < 1:
            raise ValueError("every item needs at least one candidate price")
        total += cand_counts[i]
    if total != len(cand_prices):
        raise ValueError("cand_prices length mismatch")

    for j in range(m):
        mask = consumer_masks[j]
        while mask:
            nbits += 1
            mask &= mask - 1

    try:
        counts = <int *> PyMem_Malloc(n * sizeof(int))
        offsets = <int *> PyMem_Malloc(n * sizeof(int))
        prices = <int64_t *> PyMem_Malloc(total * sizeof(int64_t))
        cur = <int64_t *> PyMem_Malloc(n * sizeof(int64_t))
        choice = <int *> PyMem_Malloc(n * sizeof(int))
        best_choice = <int *> PyMem_Malloc(n * sizeof(int))
        buds = <int64_t *> PyMem_Malloc((m if m > 0 else 1) * sizeof(int64_t))
        cons_off = <int *> PyMem_Malloc((m + 1) * sizeof(int))
        cons_idx = <int *> PyMem_Malloc((nbits if nbits > 0 else 1) * sizeof(int))
        if (counts == NULL or offsets == NULL or prices == NULL or cur == NULL
                or choice == NULL or best_choice == NULL or buds == NULL
                or cons_off == NULL or cons_idx == NULL):
            raise MemoryError()

        t = 0
        for i in range(n):
            counts[i] = cand_counts[i]
            offsets[i] = t
            t += counts[i]
        for k in range(total):
            prices[k] = cand_prices[k]
        for j in range(m):
            buds[j] = budgets[j]
        t = 0
        for j in range(m):
            cons_off[j] = t
            mask = consumer_masks[j]
            for i in range(n):
                if (mask >> i) & 1:
                    cons_idx[t] = i
                    t += 1
        cons_off[m] = t

        for i in range(n):
            choice[i] = 0
            best_choice[i] = 0
            cur[i] = prices[offsets[i]]

        while running:
            rev = 0
            for j in range(m):
                if model_flag == 0:
                    cheapest = -1
                    for k in range(cons_off[j], cons_off[j + 1]):
                        p = cur[cons_idx[k]]
                        if cheapest < 0 or p < cheapest:
                            cheapest = p
                    if 0 <= cheapest <= buds[j]:
                        rev += cheapest
                else:
                    if cons_off[j] == cons_off[j + 1]:
                        continue
                    bundle = 0
                    for k in range(cons_off[j], cons_off[j + 1]):
                        bundle += cur[cons_idx[k]]
                    if bundle <= buds[j]:
                        rev += bundle
            if rev > best_rev:
                best_rev = rev
                for i in range(n):
                    best_choice[i] = choice[i]

            i = n - 1
            while i >= 0:
                choice[i] += 1
                if choice[i] < counts[i]:
                    cur[i] = prices[offsets[i] + choice[i]]
                    break
                choice[i] = 0
                cur[i] = prices[offsets[i]]
                i -= 1
            if i < 0:
                running = False

        return best_rev, [best_choice[i] for i in range(n)]
    finally:
        PyMem_Free(counts)
        PyMem_Free(offsets)
        PyMem_Free(prices)
        PyMem_Free(cur)
        PyMem_Free(choice)
        PyMem_Free(best_choice)
        PyMem_Free(buds)
        PyMem_Free(cons_off)
        PyMem_Free(cons_idx)
