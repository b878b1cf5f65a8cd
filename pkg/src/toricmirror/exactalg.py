"""Exact integer and rational linear algebra.

Matrices are numpy arrays with ``dtype=object`` holding Python ints (or
``Fraction`` for rational data), so no value ever passes through floating
point.  Everything here is small-scale: the charge matrices we deal with have
at most a dozen rows.
"""
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DimensionMismatch, NotUnimodular, RankDeficient


def as_int_matrix(M, ncols=None):
    """Coerce ``M`` to a 2d object array of Python ints.

    ``ncols`` fixes the column count for empty inputs, which numpy would
    otherwise collapse to shape ``(0,)``.
    """
    if isinstance(M, np.ndarray) and M.ndim == 2:
        rows = [[int(x) for x in row] for row in M.tolist()]
        ncols = M.shape[1]
    else:
        rows = [[int(x) for x in row] for row in M]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionMismatch("matrix rows have different lengths")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = x
    return out


def _frozen(A):
    A.flags.writeable = False
    return A


def bareiss_det(M):
    """Determinant of a square integer matrix by fraction-free elimination."""
    A = [[int(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]
    n = len(A)
    if n == 0:
        return 1
    if any(len(r) != n for r in A):
        raise DimensionMismatch("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(M):
    """Rank over the rationals."""
    A = [[Fraction(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, rows):
            if A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def solve_rational(A, b):
    """Solve the square system ``A x = b`` exactly; returns a tuple of Fractions.

    Raises ``RankDeficient`` if ``A`` is singular.
    """
    A = [[Fraction(x) for x in row] for row in np.asarray(A, dtype=object).tolist()]
    n = len(A)
    if len(b) != n or any(len(r) != n for r in A):
        raise DimensionMismatch("solve_rational needs a square system")
    aug = [row + [Fraction(v)] for row, v in zip(A, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise RankDeficient("singular system")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(row[n] for row in aug)


def maximal_minors(M):
    """All maximal minors of a tall matrix, row subsets in lexicographic order."""
    A = as_int_matrix(M)
    rows, cols = A.shape
    if rows < cols:
        raise DimensionMismatch("maximal_minors expects rows >= cols")
    return [bareiss_det(A[list(s), :]) for s in combinations(range(rows), cols)]


def is_totally_unimodular(M):
    """True iff ``M`` has full column rank and every maximal minor is in {-1, 0, 1}."""
    minors = maximal_minors(M)
    return all(m in (-1, 0, 1) for m in minors) and any(m != 0 for m in minors)


def invert_unimodular(P):
    """Exact integer inverse of a square matrix with determinant +-1."""
    P = as_int_matrix(P)
    n, m = P.shape
    if n != m:
        raise DimensionMismatch("invert_unimodular needs a square matrix")
    det = bareiss_det(P)
    if det not in (1, -1):
        raise NotUnimodular(f"determinant {det} is not +-1")
    cols = [solve_rational(P, [int(i == j) for i in range(n)]) for j in range(n)]
    inv = np.empty((n, n), dtype=object)
    for j, col in enumerate(cols):
        for i, x in enumerate(col):
            assert x.denominator == 1
            inv[i, j] = int(x)
    return inv


def smith_normal_form(M):
    """Smith normal form with transforms.

    Returns ``(U, D, V)`` with ``U @ M @ V == D``, ``U`` and ``V`` unimodular,
    and ``D`` diagonal with nonnegative entries ``d_1 | d_2 | ...``.
    """
    A = [list(r) for r in as_int_matrix(M).tolist()]
    m = len(A)
    n = np.asarray(M).shape[1] if m == 0 else len(A[0])
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in A:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(dst, src, f):
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for R in A:
            R[dst] += f * R[src]
        for R in V:
            R[dst] += f * R[src]

    for t in range(min(m, n)):
        while True:
            cands = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not cands:
                break
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return as_int_matrix(U, m), as_int_matrix(A, n), as_int_matrix(V, n)


def invariant_factors(M):
    """Nonzero diagonal entries of the Smith normal form."""
    _, D, _ = smith_normal_form(M)
    return [D[i, i] for i in range(min(D.shape)) if D[i, i] != 0]


def hermite_basis(M):
    """Row-style Hermite normal form of the lattice spanned by the rows of ``M``.

    Zero rows are dropped; pivots are positive and the entries above each
    pivot are reduced into ``[0, pivot)``.
    """
    A = [list(r) for r in as_int_matrix(M).tolist()]
    if not A:
        return as_int_matrix([], np.asarray(M).shape[1])
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [(abs(A[i][c]), i) for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            _, i = min(nz)
            A[r], A[i] = A[i], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    f = A[i][c] // A[r][c]
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
                    done = done and A[i][c] == 0
            if done:
                break
        if r < len(A) and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                f = A[i][c] // A[r][c]
                if f:
                    A[i] = [a - f * b for a, b in zip(A[i], A[r])]
            r += 1
            if r == len(A):
                break
    return as_int_matrix(A[:r], ncols)


def integer_kernel(M):
    """Z-basis (as columns) of ``ker(M)`` intersected with the integer lattice.

    The basis is saturated and put in a canonical form: its transpose is in
    row Hermite normal form, so each basis vector's first nonzero entry is
    positive.
    """
    M = as_int_matrix(M)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return _frozen(as_int_matrix(np.eye(ncols, dtype=int).astype(object), ncols))
    _, D, V = smith_normal_form(M)
    r = sum(1 for i in range(min(D.shape)) if D[i, i] != 0)
    basis = V[:, r:]
    if basis.shape[1] == 0:
        return _frozen(np.zeros((ncols, 0), dtype=object))
    H = hermite_basis(basis.T)
    return _frozen(H.T.copy())


def cokernel_map(iota):
    """A matrix ``beta`` completing ``0 -> Z^k -> Z^n -> Z^d -> 0``.

    The rows of ``beta`` span ``ker(iota^T)`` and are returned in row Hermite
    normal form, which makes the choice deterministic.
    """
    iota = as_int_matrix(iota)
    n, k = iota.shape
    if rank(iota) < k:
        raise RankDeficient(f"iota has rank {rank(iota)} < {k}")
    K = integer_kernel(iota.T)
    beta = K.T.copy()
    if beta.shape[0] == 0:
        beta = np.zeros((0, n), dtype=object)
    return _frozen(beta)
