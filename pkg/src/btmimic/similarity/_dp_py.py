"""Pure-python (numpy) kernel for the best trend-series dynamic program.

Drop-in fallback for the compiled extension; selected at import time by
``metric`` when the extension is unavailable. Arithmetic is performed in
the same per-cell order as the compiled kernel, so both backends return
bit-identical values.

State, for an m x n cell matrix s:

  P[i, j]   diagonal prefix sum ending at (i, j)
  A[j, i]   best value of all completed trends over columns < j, given
            the next trend starts at row i of column j
  bc[i]     best value with the last trend ending at (i, j), over all
            lengths L; the no-merge rule forbids starting a new trend at
            row (prev end + 1), handled with the top-2 maxima of bc.

Tie-breaking is pinned: longer closing trends win (>= while scanning L
upward), smaller rows win inside the top-2 scan, and the final pick
prefers (value, longer last trend, smaller end row).
"""

from __future__ import annotations

import numpy as np


def trend_kernel(s: np.ndarray):
    """Returns (best_raw_value, end_row, BL, PRED).

    best_raw_value is the undivided sum of trend values; BL[j, i] is the
    arg-max closing length at (i, j); PRED[j, i] the chosen end row of
    the previous trend for a trend starting at (i, j) (column j >= 1).
    """
    m, n = s.shape
    if m < 1 or n < 1:
        raise ValueError("matrix must be non-empty")

    P = s.astype(np.float64).copy()
    for i in range(1, m):
        P[i, 1:] += P[i - 1, :-1]

    A = np.full((n + 1, m), -np.inf)
    A[0, :] = 0.0
    PRED = np.full((n + 1, m), -1, dtype=np.int32)
    BL = np.zeros((n, m), dtype=np.int32)
    bc = np.empty(m)

    for j in range(n):
        bc.fill(-np.inf)
        bl = BL[j]
        max_len = min(j + 1, m)
        for L in range(1, max_len + 1):
            i0 = L - 1
            seg = P[i0:m, j].copy()
            if L <= j:
                seg[1:] -= P[0:m - L, j - L]
            cand = A[j - L + 1, 0:m - L + 1] + seg * float(L * L)
            view = bc[i0:m]
            upd = cand >= view
            view[upd] = cand[upd]
            bl[i0:m][upd] = L
        # top-2 maxima of bc feed the no-merge exclusion
        i1 = int(np.argmax(bc))
        m1 = bc[i1]
        if m > 1:
            rest = bc.copy()
            rest[i1] = -np.inf
            i2 = int(np.argmax(rest))
            m2 = rest[i2]
        else:
            i2, m2 = -1, -np.inf
        A[j + 1, :] = m1
        PRED[j + 1, :] = i1
        if 0 <= i1 + 1 < m:
            A[j + 1, i1 + 1] = m2
            PRED[j + 1, i1 + 1] = i2

    best = float(bc.max())
    ties = np.nonzero(bc == best)[0]
    end_row = int(min(ties, key=lambda i: (-BL[n - 1, i], i)))
    return best, end_row, BL, PRED
