"""Toric data ``0 -> Z^k -(iota)-> Z^n -(beta)-> Z^d -> 0`` and their combinatorics.

Index conventions: internally every index is 0-based.  Fixed points print
1-based (``{1,3}``) because that is how they are usually written down.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import gcd
from typing import NamedTuple, Optional

import numpy as np

from . import exactalg as ea
from .errors import (
    DimensionMismatch,
    NonGeneric,
    NotTotallyUnimodular,
    OnWall,
    RankDeficient,
    Unsupported,
)


@dataclass(frozen=True, eq=False)
class ToricDatum:
    iota: np.ndarray
    beta: np.ndarray
    name: Optional[str] = None

    @property
    def n(self) -> int:
        return self.iota.shape[0]

    @property
    def k(self) -> int:
        return self.iota.shape[1]

    @property
    def d(self) -> int:
        return self.n - self.k

    def __eq__(self, other):
        if not isinstance(other, ToricDatum):
            return NotImplemented
        return (self.iota.shape == other.iota.shape and self.beta.shape == other.beta.shape
                and (self.iota == other.iota).all() and (self.beta == other.beta).all())

    def __hash__(self):
        return hash((tuple(map(tuple, self.iota.tolist())), tuple(map(tuple, self.beta.tolist()))))

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"ToricDatum({label}iota={self.iota.tolist()}, beta={self.beta.tolist()})"

    def to_dict(self) -> dict:
        out = {"iota": [[int(x) for x in r] for r in self.iota.tolist()],
               "beta": [[int(x) for x in r] for r in self.beta.tolist()]}
        if self.name:
            out["name"] = self.name
        return out


def _label(subset) -> str:
    return "{" + ",".join(str(i + 1) for i in subset) + "}"


def validate(iota, beta=None, name=None) -> ToricDatum:
    """Check ``iota`` (and ``beta`` if given) and return the datum.

    Without ``beta`` the cokernel map is computed.  A supplied ``beta`` must
    satisfy ``beta @ iota == 0``, have rank ``n - k`` and be surjective over
    the integers.
    """
    iota = ea.as_int_matrix(iota)
    n, k = iota.shape
    if k == 0 or n < k:
        raise DimensionMismatch(f"iota must be n x k with n >= k >= 1, got {n} x {k}")
    r = ea.rank(iota)
    if r < k:
        raise RankDeficient(f"iota has rank {r} < {k}")
    for s in combinations(range(n), k):
        m = ea.bareiss_det(iota[list(s), :])
        if m not in (-1, 0, 1):
            raise NotTotallyUnimodular(f"minor on rows {_label(s)} equals {m}", subset=tuple(i + 1 for i in s))
    if beta is None:
        beta = ea.cokernel_map(iota)
    else:
        beta = ea.as_int_matrix(beta, n)
        d = n - k
        if beta.shape != (d, n):
            raise DimensionMismatch(f"beta must be {d} x {n}, got {beta.shape[0]} x {beta.shape[1]}")
        if d and (beta.dot(iota) != 0).any():
            raise DimensionMismatch("beta @ iota is not zero")
        if d and ea.rank(beta) < d:
            raise RankDeficient(f"beta has rank {ea.rank(beta)} < {d}")
        if d:
            g = 0
            for m in ea.maximal_minors(beta.T):
                g = gcd(g, m)
            if g != 1:
                raise DimensionMismatch(f"beta is not surjective onto Z^{d} (gcd of maximal minors {g})")
    iota.flags.writeable = False
    beta = np.array(beta, dtype=object)
    beta.flags.writeable = False
    return ToricDatum(iota, beta, name)


def gale_dual(X: ToricDatum) -> ToricDatum:
    """The dual sequence: ``iota^! = beta^T`` and ``beta^! = iota^T``."""
    name = f"{X.name}^!" if X.name else None
    if X.d == 0:
        raise RankDeficient("the dual of a datum with n = k has no torus")
    return validate(X.beta.T.copy(), X.iota.T.copy(), name=name)


@dataclass(frozen=True, order=True)
class FixedPoint:
    """A k-subset of ``{0..n-1}`` whose iota rows form a unimodular matrix."""

    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(int(i) for i in self.indices)))

    @classmethod
    def from_labels(cls, labels) -> "FixedPoint":
        return cls(tuple(int(i) - 1 for i in labels))

    @property
    def labels(self) -> tuple:
        return tuple(i + 1 for i in self.indices)

    def complement(self, n: int) -> "FixedPoint":
        inside = set(self.indices)
        return FixedPoint(tuple(i for i in range(n) if i not in inside))

    def __contains__(self, i):
        return i in self.indices

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __str__(self):
        return _label(self.indices)


def _as_point(p) -> FixedPoint:
    return p if isinstance(p, FixedPoint) else FixedPoint(tuple(p))


def fixed_points(X: ToricDatum) -> list:
    """All fixed points, in lexicographic order."""
    return [FixedPoint(s) for s in combinations(range(X.n), X.k)
            if ea.bareiss_det(X.iota[list(s), :]) != 0]


def _require_fixed(X, p):
    p = _as_point(p)
    if len(p) != X.k or ea.bareiss_det(X.iota[list(p.indices), :]) == 0:
        raise NonGeneric(f"{p} is not a fixed point")
    return p


def mirror_fixed_point(p, n: int) -> FixedPoint:
    return _as_point(p).complement(n)


# cones

def _frac_vec(v) -> tuple:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class RationalCone:
    """Cone spanned by ``generators``; ``open`` selects the interior.

    ``inequalities`` optionally records rows ``a`` with ``a . v >= 0``
    describing the same closed cone.
    """

    generators: tuple
    open: bool = False
    inequalities: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(_frac_vec(g) for g in self.generators)
        if not gens:
            raise DimensionMismatch("a cone needs at least one generator")
        dim = len(gens[0])
        if any(len(g) != dim for g in gens):
            raise DimensionMismatch("generators live in different dimensions")
        if any(not any(g) for g in gens):
            raise DimensionMismatch("zero generator")
        object.__setattr__(self, "generators", gens)
        if self.inequalities is not None:
            object.__setattr__(self, "inequalities", tuple(_frac_vec(a) for a in self.inequalities))

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    def integer_generators(self) -> list:
        """Generators scaled to primitive integer vectors."""
        out = []
        for g in self.generators:
            den = 1
            for x in g:
                den = den * x.denominator // gcd(den, x.denominator)
            v = [int(x * den) for x in g]
            c = 0
            for x in v:
                c = gcd(c, x)
            out.append(tuple(x // c for x in v))
        return out

    def __str__(self):
        kind = "open" if self.open else "closed"
        return f"{kind} cone{self.integer_generators()}"


def _in_simplicial(gens, v, strict):
    """Membership in the cone on linearly independent ``gens``."""
    m = len(gens)
    dim = len(v)
    G = np.empty((dim, m), dtype=object)
    for j, g in enumerate(gens):
        for i in range(dim):
            G[i, j] = g[i]
    # pick m independent coordinates to solve, then verify the rest
    rows = next(s for s in combinations(range(dim), m) if ea.rank(G[list(s), :]) == m)
    coeffs = ea.solve_rational(G[list(rows), :], [v[i] for i in rows])
    for i in range(dim):
        if sum((G[i, j] * coeffs[j] for j in range(m)), Fraction(0)) != v[i]:
            return False
    return all(c > 0 for c in coeffs) if strict else all(c >= 0 for c in coeffs)


def cone_contains(c: RationalCone, v, strict: bool = None) -> bool:
    """Exact membership test; ``strict`` defaults to the cone's ``open`` flag.

    ``strict=True`` asks for the interior in the ambient space, which is
    empty unless the cone is full-dimensional.
    """
    v = _frac_vec(v)
    if len(v) != c.dim:
        raise DimensionMismatch(f"vector of length {len(v)} vs cone in R^{c.dim}")
    strict = c.open if strict is None else strict
    gens = c.generators
    r = ea.rank(np.array(gens, dtype=object))
    if strict and r < c.dim:
        return False
    if not strict:
        if not any(v):
            return True
        # Caratheodory: v lies in the cone iff it lies in a simplicial subcone
        for size in range(1, r + 1):
            for s in combinations(gens, size):
                if ea.rank(np.array(s, dtype=object)) == size and _in_simplicial(s, v, False):
                    return True
        return False
    if len(gens) == c.dim:
        return _in_simplicial(gens, v, True)
    return all(_dot(a, v) > 0 for a in _facet_normals(gens))


def _dot(a, v):
    return sum((x * y for x, y in zip(a, v)), Fraction(0))


def _facet_normals(gens) -> list:
    """Inward facet normals of a full-dimensional cone given by generators."""
    dim = len(gens[0])
    normals = set()
    for s in combinations(gens, dim - 1):
        M = np.array(s, dtype=object)
        if ea.rank(M) != dim - 1:
            continue
        den = 1
        for row in s:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        K = ea.integer_kernel(ea.as_int_matrix([[int(x * den) for x in row] for row in s]))
        a = tuple(int(x) for x in K[:, 0])
        vals = [_dot(a, g) for g in gens]
        if all(x >= 0 for x in vals):
            normals.add(a)
        elif all(x <= 0 for x in vals):
            normals.add(tuple(-x for x in a))
    return sorted(normals)


def same_cone(c1: RationalCone, c2: RationalCone) -> bool:
    """Equality of closed cones by mutual generator containment."""
    return (all(cone_contains(c2, g, False) for g in c1.generators)
            and all(cone_contains(c1, g, False) for g in c2.generators))


def _rows(M, idx):
    return [tuple(M[i, :].tolist()) for i in idx]


def kahler_cone(X: ToricDatum, p) -> RationalCone:
    """Open cone on the iota rows indexed by ``p``."""
    p = _require_fixed(X, p)
    return RationalCone(tuple(_rows(X.iota, p.indices)), open=True)


def attracting_cone(X: ToricDatum, p) -> RationalCone:
    """Open cone on the beta columns outside ``p``."""
    p = _require_fixed(X, p)
    outside = p.complement(X.n).indices
    return RationalCone(tuple(_rows(X.beta.T, outside)), open=True)


def effective_cone(X: ToricDatum, p) -> RationalCone:
    """Closed dual of the Kahler cone: ``{d : (iota d)_i >= 0, i in p}``.

    Generators are the columns of ``P^{-1}`` where ``P`` is the iota block on ``p``.
    """
    p = _require_fixed(X, p)
    P = X.iota[list(p.indices), :]
    Pinv = ea.invert_unimodular(P)
    gens = tuple(tuple(Pinv[:, j].tolist()) for j in range(X.k))
    return RationalCone(gens, open=False, inequalities=tuple(_rows(P, range(X.k))))


def kahler_coordinates(X: ToricDatum, p, theta) -> tuple:
    """Coefficients ``lam`` with ``theta = sum lam_j iota_{p_j}``."""
    p = _as_point(p)
    P = X.iota[list(p.indices), :]
    return ea.solve_rational(P.T, list(theta))


def quotient_fixed_points(X: ToricDatum, theta) -> list:
    """Fixed points surviving in the GIT quotient at a generic ``theta``.

    ``theta`` is generic when it avoids the boundary of every Kahler cone.
    """
    theta = _frac_vec(theta)
    if len(theta) != X.k:
        raise DimensionMismatch(f"theta must have length {X.k}")
    out = []
    for p in fixed_points(X):
        lam = kahler_coordinates(X, p, theta)
        if any(x == 0 for x in lam) and all(x >= 0 for x in lam):
            raise OnWall(f"theta = {list(map(str, theta))} lies on a wall of K({p})")
        if all(x > 0 for x in lam):
            out.append(p)
    return out


class Chamber(NamedTuple):
    cone: RationalCone
    points: list


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return tuple(int(x) // g for x in v)


def _angle_cmp(u, v):
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def chambers(X: ToricDatum) -> list:
    """Chambers with nonempty quotient, with their fixed points.

    Only ``k <= 2`` is supported.  For ``k = 2`` the walls are rays and the
    chambers are ordered counterclockwise starting from the positive first
    axis; for ``k = 1`` the positive half-line comes first.
    """
    if X.k > 2:
        raise Unsupported("chamber enumeration is implemented for k <= 2; query points with quotient_fixed_points")
    if X.k == 1:
        out = []
        for sign in (1, -1):
            pts = quotient_fixed_points(X, (sign,))
            if pts:
                out.append(Chamber(RationalCone(((sign,),), open=True), pts))
        return out
    rays = set()
    for p in fixed_points(X):
        for row in _rows(X.iota, p.indices):
            rays.add(_primitive(row))
    rays = sorted(rays, key=cmp_to_key(_angle_cmp))
    out = []
    for i, u in enumerate(rays):
        v = rays[(i + 1) % len(rays)]
        cross = u[0] * v[1] - u[1] * v[0]
        if cross <= 0:
            # sector of angle >= pi; it cannot be a chamber of a nonempty quotient
            continue
        sample = (u[0] + v[0], u[1] + v[1])
        pts = quotient_fixed_points(X, sample)
        if pts:
            out.append(Chamber(RationalCone((u, v), open=True), pts))
    return out


# cocharacters and restrictions

def lift_cocharacter(X: ToricDatum, p, sigma) -> tuple:
    """The unique ``sigma~`` in ``R^n`` with ``beta sigma~ = sigma`` vanishing on ``p``."""
    p = _require_fixed(X, p)
    sigma = _frac_vec(sigma)
    if len(sigma) != X.d:
        raise DimensionMismatch(f"sigma must have length {X.d}")
    outside = p.complement(X.n).indices
    B = X.beta[:, list(outside)]
    sol = ea.solve_rational(B, list(sigma))
    out = [Fraction(0)] * X.n
    for i, x in zip(outside, sol):
        if x == 0:
            raise NonGeneric(f"lift of sigma vanishes at index {i + 1} outside {p}")
        out[i] = x
    return tuple(out)


def is_minimal(X: ToricDatum, p, sigma) -> bool:
    lift = lift_cocharacter(X, p, sigma)
    p = _as_point(p)
    return all(lift[i] > 0 for i in range(X.n) if i not in p)


@dataclass(frozen=True)
class RestrictionTable:
    """``C = Q P^{-1}`` and the a-exponents of ``U_i|_p`` for ``i`` outside ``p``.

    ``C`` rows follow ``outside`` (increasing), columns follow ``point``.
    """

    point: FixedPoint
    outside: tuple
    C: tuple
    exponents: dict

    def exponent(self, i: int) -> tuple:
        """a-exponent vector of ``U_i|_p`` (all zeros for ``i`` in ``p``)."""
        if i in self.exponents:
            return self.exponents[i]
        return (0,) * len(next(iter(self.exponents.values()))) if self.exponents else ()


def u_restriction(X: ToricDatum, p) -> RestrictionTable:
    p = _require_fixed(X, p)
    outside = p.complement(X.n).indices
    P = X.iota[list(p.indices), :]
    Q = X.iota[list(outside), :] if outside else np.zeros((0, X.k), dtype=object)
    C = Q.dot(ea.invert_unimodular(P)) if outside else np.zeros((0, X.k), dtype=object)
    exps = {}
    for r, i in enumerate(outside):
        e = [0] * X.n
        e[i] = 1
        for c, j in enumerate(p.indices):
            e[j] -= int(C[r, c])
        exps[i] = tuple(e)
    Ct = tuple(tuple(int(x) for x in C[r, :].tolist()) for r in range(len(outside)))
    return RestrictionTable(p, tuple(outside), Ct, exps)


def effective_levels(X: ToricDatum) -> list:
    """``(1/2) (sum_a iota_{ja})^2`` for each ``j``."""
    return [Fraction(sum(int(x) for x in X.iota[j, :].tolist()) ** 2, 2) for j in range(X.n)]
