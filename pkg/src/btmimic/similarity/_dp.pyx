# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel for the best trend-series dynamic program.

Mirrors _dp_py.trend_kernel exactly: same recurrences, same per-cell
arithmetic order, same tie-breaking, so both backends agree bit for
bit. See _dp_py for the state definitions.
"""

import numpy as np


def trend_kernel(double[:, ::1] s):
    cdef Py_ssize_t m = s.shape[0]
    cdef Py_ssize_t n = s.shape[1]
    if m < 1 or n < 1:
        raise ValueError("matrix must be non-empty")

    P_arr = np.empty((m, n), dtype=np.float64)
    A_arr = np.full((n + 1, m), -np.inf, dtype=np.float64)
    PRED_arr = np.full((n + 1, m), -1, dtype=np.int32)
    BL_arr = np.zeros((n, m), dtype=np.int32)
    bc_arr = np.empty(m, dtype=np.float64)

    cdef double[:, ::1] P = P_arr
    cdef double[:, ::1] A = A_arr
    cdef int[:, ::1] PRED = PRED_arr
    cdef int[:, ::1] BL = BL_arr
    cdef double[::1] bc = bc_arr

    cdef Py_ssize_t i, j, L, max_len, i1, i2, best_i
    cdef double seg, cand, best, m1, m2, neg_inf, L2

    neg_inf = float("-inf")

    # diagonal prefix sums
    for j in range(n):
        P[0, j] = s[0, j]
    for i in range(1, m):
        P[i, 0] = s[i, 0]
        for j in range(1, n):
            P[i, j] = s[i, j] + P[i - 1, j - 1]

    for i in range(m):
        A[0, i] = 0.0

    for j in range(n):
        for i in range(m):
            bc[i] = neg_inf
        for i in range(m):
            max_len = i + 1
            if j + 1 < max_len:
                max_len = j + 1
            for L in range(1, max_len + 1):
                seg = P[i, j]
                if L <= i and L <= j:
                    seg = seg - P[i - L, j - L]
                L2 = <double> (L * L)
                cand = A[j - L + 1, i - L + 1] + seg * L2
                if cand >= bc[i]:
                    bc[i] = cand
                    BL[j, i] = <int> L
        # top-2 maxima; strict > keeps the smallest row on ties
        i1 = 0
        m1 = bc[0]
        i2 = -1
        m2 = neg_inf
        for i in range(1, m):
            if bc[i] > m1:
                m2 = m1
                i2 = i1
                m1 = bc[i]
                i1 = i
            elif bc[i] > m2:
                m2 = bc[i]
                i2 = i
        for i in range(m):
            A[j + 1, i] = m1
            PRED[j + 1, i] = <int> i1
        if i1 + 1 < m:
            A[j + 1, i1 + 1] = m2
            PRED[j + 1, i1 + 1] = <int> i2

    best = bc[0]
    best_i = 0
    for i in range(1, m):
        if bc[i] > best:
            best = bc[i]
            best_i = i
        elif bc[i] == best and BL[n - 1, i] > BL[n - 1, best_i]:
            best_i = i
    return best, best_i, BL_arr, PRED_arr
