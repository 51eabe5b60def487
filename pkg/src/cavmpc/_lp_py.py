"""Dense two-phase simplex kernel for small linear programs.

Pure-Python reference implementation.  A compiled twin with identical
semantics lives in ``cavmpc._lp_cy``; :mod:`cavmpc.lp` picks whichever is
available at import time.  Every polyhedral predicate in
:mod:`cavmpc.geometry` routes through this kernel, so it favours
determinism over generality: dense tableaus, Dantzig pricing with a
Bland's-rule switchover for anti-cycling, and fixed tie-breaking by
lowest index.

Problems are stated as

    minimize    c @ x
    subject to  G @ x <= h        (x free)

and solved on the standard-form tableau after an x = x+ - x- split.
"""

from __future__ import annotations

import numpy as np

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2
MAXITER = 3

_PIVOT_TOL = 1e-9
_FEAS_TOL = 1e-9


def _pivot(T, basis, row, col):
    piv = T[row, col]
    T[row] /= piv
    for r in range(T.shape[0]):
        if r != row and abs(T[r, col]) > 0.0:
            T[r] -= T[r, col] * T[row]
    basis[row] = col


def _choose_entering(obj_row, ncols, bland):
    """Column with negative reduced cost, or -1 if none."""
    if bland:
        for j in range(ncols):
            if obj_row[j] < -_PIVOT_TOL:
                return j
        return -1
    best, best_j = -_PIVOT_TOL, -1
    for j in range(ncols):
        if obj_row[j] < best:
            best, best_j = obj_row[j], j
    return best_j


def _choose_leaving(T, basis, col, m, bland):
    """Min-ratio row; ties by lowest basis index (Bland) or row index."""
    best_ratio = np.inf
    best_row = -1
    for r in range(m):
        a = T[r, col]
        if a > _PIVOT_TOL:
            ratio = T[r, -1] / a
            if ratio < best_ratio - _PIVOT_TOL:
                best_ratio, best_row = ratio, r
            elif ratio < best_ratio + _PIVOT_TOL and best_row >= 0:
                if bland and basis[r] < basis[best_row]:
                    best_row = r
    return best_row


def _run_simplex(T, basis, ncols, max_pivots):
    """Pivot T to optimality over its first `ncols` columns.

    Returns OPTIMAL/UNBOUNDED/MAXITER.  Switches from Dantzig to Bland
    pricing after `bland_after` pivots so cycling cannot occur.
    """
    m = T.shape[0] - 1
    bland_after = max(64, 8 * (m + ncols))
    for it in range(max_pivots):
        bland = it >= bland_after
        col = _choose_entering(T[-1], ncols, bland)
        if col < 0:
            return OPTIMAL
        row = _choose_leaving(T, basis, col, m, bland)
        if row < 0:
            return UNBOUNDED
        _pivot(T, basis, row, col)
    return MAXITER


def solve_lp(c, G, h, max_pivots=0):
    """Minimize ``c @ x`` subject to ``G @ x <= h`` with ``x`` free.

    Returns ``(status, x, objective)``.  ``x`` is meaningful only when
    status is OPTIMAL; on UNBOUNDED the objective is ``-inf``.
    """
    c = np.asarray(c, dtype=np.float64)
    G = np.asarray(G, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    m, d = G.shape
    if max_pivots <= 0:
        max_pivots = 200 * (m + d + 10)

    # Standard form: columns are [x+ (d) | x- (d) | slack (m) | artificial].
    flip = h < 0.0
    Gs = np.where(flip[:, None], -G, G)
    hs = np.where(flip, -h, h)
    art_rows = np.flatnonzero(flip)
    n_art = art_rows.size
    ncols = 2 * d + m
    T = np.zeros((m + 1, ncols + n_art + 1))
    T[:m, :d] = Gs
    T[:m, d : 2 * d] = -Gs
    T[:m, 2 * d : 2 * d + m] = np.diag(np.where(flip, -1.0, 1.0))
    for k, r in enumerate(art_rows):
        T[r, ncols + k] = 1.0
    T[:m, -1] = hs

    basis = np.empty(m, dtype=np.intp)
    for r in range(m):
        basis[r] = 2 * d + r
    for k, r in enumerate(art_rows):
        basis[r] = ncols + k

    if n_art:
        # Phase 1: minimize the sum of artificials.
        T[-1, :] = 0.0
        for r in art_rows:
            T[-1] -= T[r]
        T[-1, ncols:-1] = 0.0
        status = _run_simplex(T, basis, ncols + n_art, max_pivots)
        if status != OPTIMAL:
            # Phase 1 is bounded below by zero, so anything but OPTIMAL
            # is a numerical failure; report the iteration cap.
            return MAXITER, np.zeros(d), np.nan
        if -T[-1, -1] > 1e-7:
            return INFEASIBLE, np.zeros(d), np.nan
        # Drive any artificial still basic (at zero level) out of the basis.
        for r in range(m):
            if basis[r] >= ncols:
                for j in range(ncols):
                    if abs(T[r, j]) > _PIVOT_TOL:
                        _pivot(T, basis, r, j)
                        break
        T = np.delete(T, np.s_[ncols:-1], axis=1)

    # Phase 2 objective row: reduced costs of the original objective.
    cost = np.zeros(ncols + 1)
    cost[:d] = c
    cost[d : 2 * d] = -c
    T[-1, :] = cost
    for r in range(m):
        b = basis[r]
        if b < ncols and abs(T[-1, b]) > 0.0:
            T[-1] -= T[-1, b] * T[r]

    status = _run_simplex(T, basis, ncols, max_pivots)
    if status != OPTIMAL:
        obj = -np.inf if status == UNBOUNDED else np.nan
        return status, np.zeros(d), obj

    z = np.zeros(ncols)
    for r in range(m):
        if basis[r] < ncols:
            z[basis[r]] = T[r, -1]
    x = z[:d] - z[d : 2 * d]
    return OPTIMAL, x, float(c @ x)


def redundancy_filter(A, b, tol):
    """Mask of facets of {x : A x <= b} that are not implied by the rest.

    Rows are tested in order; a row found redundant is excluded from all
    later tests, so the result depends only on the input ordering (the
    classic sequential LP filter).  Rows are assumed unit-normalized.
    """
    A = np.asarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    m = A.shape[0]
    keep = np.ones(m, dtype=bool)
    for i in range(m):
        idx = np.flatnonzero(keep)
        if idx.size <= 1:
            break
        # Relax row i by one unit so the test LP stays bounded along a_i.
        brel = b[idx].copy()
        pos = int(np.flatnonzero(idx == i)[0])
        brel[pos] += 1.0
        status, _, obj = solve_lp(-A[i], A[idx], brel)
        if status == OPTIMAL and -obj <= b[i] + tol:
            keep[i] = False
    return keep
