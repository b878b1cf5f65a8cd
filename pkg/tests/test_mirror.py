from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings

from toricmirror import ifunction, mirror, toric
from toricmirror.errors import HypothesisViolated, TruncationUnderflow
from toricmirror.mirror import Circuit, ShiftOperator
from toricmirror.qseries import ONE, QRat, TruncatedSeries, TruncationSpec, shift, unit_key

from test_toric import graph_data


def brute_circuits(M):
    M = np.array(M, dtype=object)
    found = set()
    for v in product((-1, 0, 1), repeat=M.shape[1]):
        if any(v) and not M.dot(np.array(v, dtype=object)).any():
            first = next(x for x in v if x)
            found.add(v if first > 0 else tuple(-x for x in v))
    return found


def test_blowup_circuits(bl):
    ks = {c.mu for c in mirror.kahler_circuits(bl)}
    assert ks == {(1, 1, 0, 1), (1, 0, 1, 0), (0, 1, -1, 1)}
    assert ks == brute_circuits(bl.beta)
    assert {c.mu for c in mirror.equivariant_circuits(bl)} == brute_circuits(bl.iota.T)


def test_p1_equivariant_circuit(p1):
    assert [c.mu for c in mirror.equivariant_circuits(p1)] == [(1, -1)]
    c = Circuit((1, -1, 0))
    assert c.s_plus == (0,) and c.s_minus == (1,)


@settings(max_examples=30, deadline=None)
@given(graph_data())
def test_circuits_match_brute_force(iota):
    X = toric.validate(iota)
    assert {c.mu for c in mirror.kahler_circuits(X)} == brute_circuits(X.beta)
    assert {c.mu for c in mirror.equivariant_circuits(X)} == brute_circuits(X.iota.T)


@settings(max_examples=30, deadline=None)
@given(graph_data())
def test_circuits_swap_under_duality(iota):
    X = toric.validate(iota)
    D = toric.gale_dual(X)
    assert {c.mu for c in mirror.kahler_circuits(D)} == {c.mu for c in mirror.equivariant_circuits(X)}
    for c in mirror.kahler_circuits(X):
        assert mirror.kahler_operator(c, X.n).tau() == mirror.equivariant_operator(c, X.n)


def test_operator_algebra():
    n = 2
    T = ShiftOperator.shift(n, unit_key(n, "z", 0))
    z = ShiftOperator.monomial(n, unit_key(n, "z", 0))
    # T z = q z T
    assert T * z == ShiftOperator.monomial(n, unit_key(n, "z", 0), QRat.q_power(1)) * T
    op = mirror.linear_relation_operator(1, n)
    assert op.tau().tau() == op
    assert (op * T) * z == op * (T * z)
    assert op - op == ShiftOperator(n)


def test_composition_matches_sequential_application():
    n = 1
    spec = TruncationSpec((1,), (1,), 6, 6)
    f = ifunction.i_eff_modified(toric.validate([[1], [1]]), toric.FixedPoint((0,)), orders=(6, 6)).series
    f = TruncatedSeries(spec, {k[:1] + k[2:3]: c for k, c in f.terms.items() if k[1] == k[0]})
    A = ShiftOperator.shift(n, (1, 0)) + ShiftOperator.monomial(n, (1, 0))
    B = ShiftOperator.monomial(n, (0, 1)) * ShiftOperator.shift(n, (0, -1))
    lhs = mirror.apply(A * B, f).series
    rhs = mirror.apply(A, mirror.apply(B, f)).series
    window = TruncationSpec((1,), (1,), 5, 5)
    assert lhs.truncate(window) == rhs.truncate(window)
    assert mirror.apply(ShiftOperator.shift(n, (2, -1)), f).series == shift(f, (2, -1))


def test_linear_relation_holds_and_detects_damage(p1):
    p = toric.FixedPoint((0,))
    c = ifunction.i_eff_modified(p1, p, orders=(4, 4))
    for i in range(2):
        assert mirror.linear_relation_check(c, i, window=(3, 3))
    key = (1, 1, 0, 0)
    bad = c.series.terms.copy()
    bad[key] = bad[key] + ONE
    broken = type(c)(c.prefactor, TruncatedSeries(c.spec, bad), point=p)
    assert not all(mirror.linear_relation_check(broken, i, window=(3, 3)) for i in range(2))


def test_window_underflow(p1):
    c = ifunction.i_eff_modified(p1, toric.FixedPoint((0,)), orders=(2, 2))
    with pytest.raises(TruncationUnderflow):
        mirror.annihilates(mirror.kahler_operator(Circuit((1, 1)), 2), c, window=(2, 2))


def test_diffeq_report_p1(p1):
    rep = mirror.diffeq_check(p1, (4, 4))
    assert rep.verdict and len(rep.results) == 8
    d = rep.to_dict()
    assert d["verdict"] and {e["kind"] for e in d["equations"]} == {"linear", "kahler", "equivariant"}


def test_recursion_is_linear_in_the_constant(bl):
    p = toric.FixedPoint.from_labels([2, 3])
    assert mirror.uniqueness_recursion_check(bl, p, (3, 3))
    assert mirror.uniqueness_recursion_check(bl, p, (3, 3), constant=QRat.q_power(2))
    assert mirror.uniqueness_recursion_check(bl, p, (2, 2), circuits=mirror.kahler_circuits(bl))


def test_recursion_needs_chart_circuits(bl):
    p = toric.FixedPoint.from_labels([2, 3])
    with pytest.raises(HypothesisViolated):
        mirror.uniqueness_recursion_check(bl, p, (2, 2), circuits=[Circuit((1, 0, 1, 0))])


def test_mirror_negative_control(p2):
    ok = mirror.mirror_verify(p2, (2, 2))
    assert ok.verdict
    # pair {j} with the complement of a different point
    rot = mirror.mirror_verify(p2, (2, 2), pairing=lambda p: [i for i in range(3) if i != (p.indices[0] + 1) % 3])
    assert not rot.verdict
    assert all(v.diffs or not v.prefactor_ok for v in rot.points)
    d = rot.to_dict()
    assert not d["verdict"] and "firstDiff" in d["points"][0] or not d["points"][0]["prefactorOk"]


def test_mirror_pairing_outside_dual(bl):
    rep = mirror.mirror_verify(bl, (1, 1), pairing=lambda p: [0, 2])
    assert not rep.verdict
    assert any(v.note for v in rep.points)


def test_mirror_sign_convention(p1):
    # only exp(-sum ln z ln a / ln q) makes the prefactors agree
    from toricmirror.qseries import apply_tau
    D = toric.gale_dual(p1)
    for p in toric.fixed_points(p1):
        lhs = ifunction.i_eff_modified(p1, p, orders=(3, 3))
        dual = apply_tau(ifunction.i_eff_modified(D, p.complement(2), orders=(3, 3)))
        assert mirror.compare_contributions(lhs, mirror.with_mirror_prefactor(dual, sign=-1)) == (True, [])
        pref_ok, diffs = mirror.compare_contributions(lhs, mirror.with_mirror_prefactor(dual, sign=1))
        assert not pref_ok and not diffs
