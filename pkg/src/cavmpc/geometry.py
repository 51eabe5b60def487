"""Polyhedral sets in halfspace form and the operations the controller needs.

A :class:`Polytope` is ``{x : A x <= b}`` with unit-normalized facet rows.
Every predicate (emptiness, containment, redundancy, projection, set
equality) is decided by linear programs through :mod:`cavmpc.lp`, with a
single geometric tolerance applied to unit-normalized rows.  Degenerate
(lower-dimensional or empty) sets are ordinary values: operations keep
working on them and emptiness is always decidable.

Vertex enumeration is combinatorial and intended for low dimension
(oracles and small input sets); the production path for projection is
successive single-variable elimination with LP redundancy removal after
each step.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from . import lp

#: Geometric tolerance on unit-normalized facet rows.
TOL = 1e-7

_VERTEX_CAP = 200_000


class Polytope:
    """Convex polyhedron ``{x : A x <= b}`` in halfspace representation."""

    __slots__ = ("A", "b", "_bounded")

    def __init__(self, A, b, normalize=True):
        A = np.atleast_2d(np.asarray(A, dtype=np.float64))
        b = np.asarray(b, dtype=np.float64).ravel()
        if A.shape[0] != b.shape[0]:
            raise ValueError("A and b row counts differ")
        if normalize:
            norms = np.linalg.norm(A, axis=1)
            degenerate = norms <= TOL
            if degenerate.any():
                if (b[degenerate] < -TOL).any():
                    # 0*x <= negative: the set is empty.
                    A, b = _empty_rows(A.shape[1])
                    norms = np.ones(A.shape[0])
                    degenerate = np.zeros(A.shape[0], dtype=bool)
                else:
                    A, b, norms = A[~degenerate], b[~degenerate], norms[~degenerate]
            if A.shape[0]:
                A = A / norms[:, None]
                b = b / norms
        self.A = A
        self.b = b
        self._bounded = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_bounds(cls, lower, upper):
        """Axis-aligned box: identity rows for the upper bounds, negated
        identity rows for the lower bounds (in that order)."""
        lower = np.asarray(lower, dtype=np.float64).ravel()
        upper = np.asarray(upper, dtype=np.float64).ravel()
        if lower.shape != upper.shape:
            raise ValueError("bound shapes differ")
        if (lower > upper).any():
            raise ValueError("lower bound exceeds upper bound")
        d = lower.size
        eye = np.eye(d)
        return cls(np.vstack([eye, -eye]), np.concatenate([upper, -lower]))

    @classmethod
    def from_vertices(cls, points):
        """Convex hull of a point cloud; handles flat (rank-deficient) sets."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return _hull(pts)

    @classmethod
    def empty(cls, dim):
        """A canonically infeasible set in ``dim`` dimensions."""
        A, b = _empty_rows(dim)
        return cls(A, b, normalize=False)

    # -- basic queries ---------------------------------------------------

    @property
    def dim(self):
        return self.A.shape[1]

    @property
    def nfacets(self):
        return self.A.shape[0]

    def contains_point(self, x, tol=TOL):
        x = np.asarray(x, dtype=np.float64).ravel()
        return bool((self.A @ x - self.b <= tol).all())

    def contains_points(self, X, tol=TOL):
        """Vectorized membership over the rows of ``X``."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return (X @ self.A.T - self.b <= tol).all(axis=1)

    def support(self, direction):
        """``max d @ x`` over the set; (status, value, argmax)."""
        d = np.asarray(direction, dtype=np.float64).ravel()
        status, x, val = lp.maximize(d, self.A, self.b)
        return status, val, x

    def is_empty(self):
        status, _, _ = lp.solve(np.zeros(self.dim), self.A, self.b)
        return status == lp.INFEASIBLE

    def is_bounded(self):
        if self._bounded is None:
            bounded = True
            for j in range(self.dim):
                for sgn in (1.0, -1.0):
                    e = np.zeros(self.dim)
                    e[j] = sgn
                    status, _, _ = self.support(e)
                    if status == lp.UNBOUNDED:
                        bounded = False
                        break
                if not bounded:
                    break
            self._bounded = bounded
        return self._bounded

    def chebyshev_center(self):
        """Center and radius of the largest inscribed ball.

        Radius 0 signals a degenerate set, negative-infinite radius an
        empty one.
        """
        d = self.dim
        G = np.hstack([self.A, np.ones((self.nfacets, 1))])
        c = np.zeros(d + 1)
        c[-1] = -1.0
        status, z, _ = lp.solve(c, G, self.b)
        if status == lp.INFEASIBLE:
            return np.full(d, np.nan), -np.inf
        if status == lp.UNBOUNDED:
            # Radius unbounded: pick any feasible center.
            status, z, _ = lp.solve(np.zeros(d + 1), G, self.b)
            return z[:d], np.inf
        return z[:d], float(z[-1])

    # -- set algebra -----------------------------------------------------

    def intersect(self, other, prune=True):
        _check_same_dim(self, other)
        P = Polytope(np.vstack([self.A, other.A]), np.concatenate([self.b, other.b]))
        return P.remove_redundancy() if prune else P

    __and__ = intersect

    def remove_redundancy(self, tol=TOL):
        """Irredundant halfspace representation of the same set."""
        if self.nfacets <= 1:
            return self
        if self.is_empty():
            return Polytope.empty(self.dim)
        A, b = _dedupe_rows(self.A, self.b, tol)
        keep = lp.redundancy_filter(A, b, tol)
        return Polytope(A[keep], b[keep], normalize=False)

    def contains(self, other, tol=TOL):
        """True when ``other`` is a subset of this set."""
        _check_same_dim(self, other)
        if other.is_empty():
            return True
        return self.containment_slack(other) <= tol

    def containment_slack(self, other):
        """Max violation of this set's facets over ``other`` (<=0 inside).

        Infinity when ``other`` is unbounded along some facet normal.
        """
        worst = -np.inf
        for a, bi in zip(self.A, self.b):
            status, val, _ = lp.maximize(a, other.A, other.b)
            if status == lp.UNBOUNDED:
                return np.inf
            if status != lp.OPTIMAL:
                continue
            worst = max(worst, val - bi)
        return worst

    def equals(self, other, tol=TOL):
        return self.contains(other, tol) and other.contains(self, tol)

    def affine_preimage(self, R):
        """``{x : R x in self}`` for a matrix ``R`` (columns = new dim)."""
        R = np.asarray(R, dtype=np.float64)
        if R.shape[0] != self.dim:
            raise ValueError("map output dimension mismatch")
        return Polytope(self.A @ R, self.b)

    def project(self, keep, tol=TOL):
        """Orthogonal projection onto the coordinates in ``keep``.

        Fourier-Motzkin elimination of the remaining coordinates one at a
        time, pruning redundant rows after each elimination.  ``keep``
        must be strictly increasing; the result's coordinate ``i`` is the
        original coordinate ``keep[i]``.
        """
        keep = list(keep)
        if keep != sorted(set(keep)):
            raise ValueError("keep must be strictly increasing")
        if any(k < 0 or k >= self.dim for k in keep):
            raise ValueError("keep index out of range")
        drop = [j for j in range(self.dim) if j not in keep]
        A, b = self.A.copy(), self.b.copy()
        cols = list(range(self.dim))
        while drop:
            # Eliminate the variable with the fewest pairwise combinations.
            best, best_j = None, None
            for j in drop:
                col = A[:, cols.index(j)]
                npos = int((col > TOL).sum())
                nneg = int((col < -TOL).sum())
                score = npos * nneg
                if best is None or score < best:
                    best, best_j = score, j
            A, b = _eliminate(A, b, cols.index(best_j), tol)
            cols.remove(best_j)
            drop.remove(best_j)
            P = Polytope(A, b).remove_redundancy(tol)
            A, b = P.A, P.b
        return Polytope(A, b, normalize=False)

    def minkowski_sum(self, other, tol=TOL):
        """``{p + q : p in self, q in other}`` for bounded operands."""
        _check_same_dim(self, other)
        if not (self.is_bounded() and other.is_bounded()):
            raise ValueError("minkowski_sum requires bounded operands")
        d = self.dim
        # Lift to (x, y) with x - y in self and y in other, then project.
        A = np.block(
            [
                [self.A, -self.A],
                [np.zeros((other.nfacets, d)), other.A],
            ]
        )
        b = np.concatenate([self.b, other.b])
        return Polytope(A, b, normalize=False).project(range(d), tol)

    __add__ = minkowski_sum

    # -- vertex representation -------------------------------------------

    def vertices(self, tol=1e-6):
        """Vertex enumeration by facet-subset solves (low dimension only)."""
        m, d = self.nfacets, self.dim
        if m < d:
            raise ValueError("unbounded or trivial set has no vertex list")
        if comb(m, d) > _VERTEX_CAP:
            raise ValueError("facet count too large for combinatorial vertices")
        out = []
        for rows in combinations(range(m), d):
            M = self.A[list(rows)]
            if abs(np.linalg.det(M)) <= 1e-10:
                continue
            v = np.linalg.solve(M, self.b[list(rows)])
            if (self.A @ v - self.b <= tol).all():
                out.append(v)
        if not out:
            return np.empty((0, d))
        V = np.array(out)
        keep = []
        for i, v in enumerate(V):
            if not any(np.linalg.norm(v - V[j]) <= 1e-6 for j in keep):
                keep.append(i)
        V = V[keep]
        order = np.lexsort(V.T[::-1])
        return V[order]

    # -- diagnostics -----------------------------------------------------

    def dumps(self):
        """Plain-text matrix block: one facet per line, normal components
        then offset, space-separated, 17 significant digits."""
        lines = []
        for a, bi in zip(self.A, self.b):
            parts = [format(v, ".17g") for v in a] + [format(bi, ".17g")]
            lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"

    def key(self, decimals=9):
        """Hashable fingerprint of the H-representation (for caching)."""
        return (
            self.A.shape,
            np.round(self.A, decimals).tobytes(),
            np.round(self.b, decimals).tobytes(),
        )

    def __repr__(self):
        return f"Polytope(dim={self.dim}, nfacets={self.nfacets})"


# -- module-level helpers ------------------------------------------------


def set_equal(P, Q, tol=TOL):
    """Mutual containment within ``tol``."""
    return P.equals(Q, tol)


def linear_image(R, P):
    """Image ``{R x : x in P}`` of a bounded set under a linear map."""
    R = np.asarray(R, dtype=np.float64)
    if R.shape[1] != P.dim:
        raise ValueError("map input dimension mismatch")
    if not P.is_bounded():
        raise ValueError("linear_image requires a bounded operand")
    V = P.vertices()
    if V.shape[0] == 0:
        return Polytope.empty(R.shape[0])
    return Polytope.from_vertices(V @ R.T)


def _check_same_dim(P, Q):
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")


def _empty_rows(dim):
    A = np.zeros((2, max(dim, 1)))
    A[0, 0] = 1.0
    A[1, 0] = -1.0
    return A[:, :dim] if dim >= 1 else A, np.array([-1.0, -1.0])


def _dedupe_rows(A, b, tol):
    """Drop duplicate facets, keeping the tightest offset per normal."""
    order = np.lexsort(np.vstack([b[None, :], A.T[::-1]]))
    keep = []
    for i in order:
        dup = False
        for j in keep:
            if np.linalg.norm(A[i] - A[j]) <= tol:
                if b[i] >= b[j] - tol:
                    dup = True
                    break
        if not dup:
            keep.append(i)
    keep = sorted(keep)
    return A[keep], b[keep]


def _eliminate(A, b, col, tol):
    """One Fourier-Motzkin step removing column ``col``."""
    c = A[:, col]
    pos = np.flatnonzero(c > TOL)
    neg = np.flatnonzero(c < -TOL)
    zero = np.flatnonzero(np.abs(c) <= TOL)
    rows = [np.delete(A[zero], col, axis=1)]
    offs = [b[zero]]
    if pos.size and neg.size:
        Ap = A[pos] / c[pos, None]
        bp = b[pos] / c[pos]
        An = A[neg] / (-c[neg, None])
        bn = b[neg] / (-c[neg])
        comboA = Ap[:, None, :] + An[None, :, :]
        combob = bp[:, None] + bn[None, :]
        comboA = np.delete(comboA.reshape(-1, A.shape[1]), col, axis=1)
        rows.append(comboA)
        offs.append(combob.ravel())
    A2 = np.vstack(rows)
    b2 = np.concatenate(offs)
    if A2.shape[0] == 0:
        # No constraints left: the whole space.
        return np.zeros((0, A.shape[1] - 1)), np.zeros(0)
    return A2, b2


def _hull(pts):
    """H-representation of conv(pts), degenerate clouds included."""
    n, d = pts.shape
    uniq = np.unique(np.round(pts, 12), axis=0)
    if d == 0:
        raise ValueError("zero-dimensional points")
    if uniq.shape[0] == 1:
        v = uniq[0]
        eye = np.eye(d)
        return Polytope(np.vstack([eye, -eye]), np.concatenate([v, -v]))
    if d == 1:
        lo, hi = float(pts.min()), float(pts.max())
        return Polytope(np.array([[1.0], [-1.0]]), np.array([hi, -lo]))
    p0 = uniq[0]
    U, s, Vt = np.linalg.svd(uniq - p0, full_matrices=True)
    rank = int((s > 1e-9 * max(1.0, s[0])).sum())
    if rank == d:
        from scipy.spatial import ConvexHull

        hull = ConvexHull(uniq)
        eq = hull.equations
        P = Polytope(eq[:, :-1], -eq[:, -1])
        A, b = _dedupe_rows(P.A, P.b, TOL)
        return Polytope(A, b, normalize=False)
    # Flat cloud: solve in the affine hull, then lift and pin the normals.
    basis = Vt[:rank].T
    coords = (uniq - p0) @ basis
    inner = _hull(coords)
    A_lift = inner.A @ basis.T
    b_lift = inner.b + A_lift @ p0
    normals = Vt[rank:]
    A_eq = np.vstack([normals, -normals])
    b_eq = np.concatenate([normals @ p0, -(normals @ p0)])
    return Polytope(np.vstack([A_lift, A_eq]), np.concatenate([b_lift, b_eq]))
