from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from toricmirror import exactalg as ea
from toricmirror import toric
from toricmirror.errors import (
    DimensionMismatch,
    NonGeneric,
    NotTotallyUnimodular,
    OnWall,
    Unsupported,
)
from toricmirror.toric import FixedPoint

from conftest import BL, BL_DUAL


def labels(points):
    return {"".join(str(i) for i in p.labels) for p in points}


def brute_fixed_points(iota):
    M = sympy.Matrix(iota)
    n, k = M.shape
    return {"".join(str(i + 1) for i in s) for s in combinations(range(n), k)
            if M.extract(list(s), list(range(k))).det() != 0}


def in_open_cone_lp(gens, v):
    """Interior membership by LP: v = sum c_j g_j with every c_j >= 1 after rescaling."""
    G = np.array(gens, dtype=float).T
    # v = G c, c >= eps; scale-invariant so test c >= 1 for t*v with t free
    m = G.shape[1]
    A_eq = np.hstack([G, -np.array(v, dtype=float).reshape(-1, 1)])
    res = linprog(np.zeros(m + 1), A_eq=A_eq, b_eq=np.zeros(G.shape[0]),
                  bounds=[(1, None)] * m + [(0, None)], method="highs")
    if res.status != 0:
        return False
    return res.x[-1] > 1e-9


# random totally unimodular data: edge-vertex incidence of a connected digraph
@st.composite
def graph_data(draw):
    nv = draw(st.integers(2, 4))
    edges = []
    for v in range(1, nv):           # spanning tree keeps the graph connected
        u = draw(st.integers(0, v - 1))
        edges.append((u, v) if draw(st.booleans()) else (v, u))
    extra = draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)), max_size=3))
    edges += [(a, b) for a, b in extra if a != b]
    if len(edges) < nv:
        edges.append((0, nv - 1))
    iota = []
    for a, b in edges:
        row = [0] * nv
        row[a], row[b] = 1, -1
        iota.append(row[1:])
    return iota


def test_blowup_fixed_points(bl, bl_dual):
    assert labels(toric.fixed_points(bl)) == {"12", "13", "14", "23", "34"}
    assert labels(toric.fixed_points(bl_dual)) == {"12", "14", "23", "24", "34"}
    assert labels(toric.fixed_points(bl)) == brute_fixed_points(BL)
    assert labels(toric.fixed_points(bl_dual)) == brute_fixed_points(BL_DUAL)


def test_blowup_kahler_cones(bl):
    C1 = toric.RationalCone(((1, 0), (1, 1)), open=True)
    C2 = toric.RationalCone(((1, 1), (0, 1)), open=True)
    quad = toric.RationalCone(((1, 0), (0, 1)), open=True)
    expect = {"12": C2, "13": C1, "14": C2, "23": quad, "34": quad}
    for p in toric.fixed_points(bl):
        assert toric.same_cone(toric.kahler_cone(bl, p), expect["".join(map(str, p.labels))])


def test_dual_kahler_cones(bl_dual):
    expect = {"34": ((-1, 0), (-1, -1)), "24": ((0, 1), (-1, -1)), "23": ((-1, 0), (0, 1)),
              "14": ((-1, -1), (1, 0)), "12": ((1, 0), (0, 1))}
    for p in toric.fixed_points(bl_dual):
        cone = toric.RationalCone(expect["".join(map(str, p.labels))], open=True)
        assert toric.same_cone(toric.kahler_cone(bl_dual, p), cone)


def test_blowup_chambers(bl):
    chs = toric.chambers(bl)
    assert [c.cone.integer_generators() for c in chs] == [[(1, 0), (1, 1)], [(1, 1), (0, 1)]]
    assert [labels(c.points) for c in chs] == [{"13", "23", "34"}, {"12", "14", "23", "34"}]


def test_dual_chambers(bl_dual):
    chs = toric.chambers(bl_dual)
    assert [labels(c.points) for c in chs] == [{"12"}, {"23", "24"}, {"24", "34"}, {"14"}]


def _brute_chamber_sets(X, radius=4):
    sets = set()
    for theta in product(range(-radius, radius + 1), repeat=X.k):
        if not any(theta):
            continue
        inside = set()
        generic = True
        for p in toric.fixed_points(X):
            lam = sympy.Matrix(X.iota[list(p.indices), :].tolist()).T.solve(sympy.Matrix(theta))
            if any(x == 0 for x in lam):
                if all(x >= 0 for x in lam):
                    generic = False
                continue
            if all(x > 0 for x in lam):
                inside.add(p)
        if generic and inside:
            sets.add(frozenset(inside))
    return sets


@pytest.mark.parametrize("iota", [BL, BL_DUAL, [[1], [1], [1]], [[1], [-1]], [[1, 0], [0, 1], [1, 1]]])
def test_chambers_match_lattice_scan(iota):
    X = toric.validate(iota)
    ours = {frozenset(c.points) for c in toric.chambers(X)}
    assert ours == _brute_chamber_sets(X)


def test_on_wall(bl):
    with pytest.raises(OnWall):
        toric.quotient_fixed_points(bl, (1, 1))
    # theta on the line through a generator but outside the cone is not a wall of it
    assert labels(toric.quotient_fixed_points(bl, (2, 1))) == {"13", "23", "34"}


def test_chambers_unsupported_for_k3():
    X = toric.validate([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    with pytest.raises(Unsupported):
        toric.chambers(X)
    assert labels(toric.quotient_fixed_points(X, (1, 2, 3))) == {"123", "234"}


def test_validate_errors():
    with pytest.raises(NotTotallyUnimodular) as info:
        toric.validate([[1, 0], [0, 2], [1, 1]])
    assert info.value.subset == (1, 2)
    with pytest.raises(DimensionMismatch):
        toric.validate([[1], [1]], [[1, 1]])
    with pytest.raises(DimensionMismatch):
        toric.validate([[1, 0], [1]])


def test_blowup_restrictions(bl):
    t = toric.u_restriction(bl, FixedPoint.from_labels([2, 3]))
    assert t.exponent(0) == (1, -1, -1, 0)
    assert t.exponent(3) == (0, -1, 0, 1)
    assert toric.effective_levels(bl) == [2, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)]


def test_minimal_point_p1(p1):
    assert toric.is_minimal(p1, FixedPoint.from_labels([2]), (1,))
    assert not toric.is_minimal(p1, FixedPoint.from_labels([1]), (1,))
    with pytest.raises(NonGeneric):
        toric.lift_cocharacter(toric.validate([[1, 0], [0, 1], [1, 1]]), FixedPoint.from_labels([1, 2]), (0,))


def test_cone_membership_against_lp(bl):
    pts = list(product(range(-3, 4), repeat=2))
    for p in toric.fixed_points(bl):
        cone = toric.kahler_cone(bl, p)
        gens = [list(map(int, r)) for r in bl.iota[list(p.indices), :].tolist()]
        for v in pts:
            if any(v):
                assert toric.cone_contains(cone, v) == in_open_cone_lp(gens, v), (p, v)


def test_effective_cone_is_dual(bl):
    for p in toric.fixed_points(bl):
        K = toric.kahler_cone(bl, p)
        E = toric.effective_cone(bl, p)
        for d in product(range(-3, 4), repeat=2):
            pairing_ok = all(sum(Fraction(a) * b for a, b in zip(g, d)) >= 0 for g in K.generators)
            assert toric.cone_contains(E, d, strict=False) == pairing_ok


@settings(max_examples=40, deadline=None)
@given(graph_data())
def test_gale_duality_properties(iota):
    X = toric.validate(iota)
    D = toric.gale_dual(X)
    DD = toric.gale_dual(D)
    assert (DD.iota == X.iota).all()
    assert ea.hermite_basis(DD.beta).tolist() == ea.hermite_basis(X.beta).tolist()
    fps = toric.fixed_points(X)
    assert labels(fps) == brute_fixed_points(iota)
    assert {p.complement(X.n) for p in fps} == set(toric.fixed_points(D))
    for p in fps:
        q = p.complement(X.n)
        assert toric.same_cone(toric.kahler_cone(D, q), toric.attracting_cone(X, p))
        assert toric.same_cone(toric.attracting_cone(D, q), toric.kahler_cone(X, p))


@settings(max_examples=40, deadline=None)
@given(graph_data())
def test_restriction_exponents_are_characters(iota):
    # U_i|_p has trivial K-weight: its exponent vector lies in ker(iota^T)
    X = toric.validate(iota)
    for p in toric.fixed_points(X):
        t = toric.u_restriction(X, p)
        for i in t.outside:
            e = np.array(t.exponent(i), dtype=object)
            assert not e.dot(X.iota).any()
