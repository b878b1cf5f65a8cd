"""Acceptance criteria 1-7, each with its runtime budget."""
import random
import time
from contextlib import contextmanager

import pytest
import sympy

from toricmirror import ifunction, mirror, toric
from toricmirror.qseries import (
    ONE,
    QRat,
    TruncatedSeries,
    TruncationSpec,
    apply_tau,
    infinite_pochhammer,
    inv_infinite_pochhammer,
    pochhammer_finite,
    q_pochhammer_number,
    unit_key,
)

from conftest import corpus
from test_ifunction import closed_form_projective
from test_qseries import to_sympy


@contextmanager
def criterion(capsys, number, title, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < limit
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.2f} s, limit {limit} s)")
    assert elapsed < limit, f"criterion {number} took {elapsed:.1f} s"


def _labels(points):
    return {"".join(map(str, p.labels)) for p in points}


def test_criterion_1_combinatorics(capsys, bl, bl_dual):
    with criterion(capsys, 1, "combinatorics regression", 1.0):
        assert _labels(toric.fixed_points(bl)) == {"12", "13", "14", "23", "34"}
        assert _labels(toric.fixed_points(bl_dual)) == {"12", "14", "23", "24", "34"}
        C1, C2, quad = ((1, 0), (1, 1)), ((1, 1), (0, 1)), ((1, 0), (0, 1))
        kahler = {"12": C2, "13": C1, "14": C2, "23": quad, "34": quad}
        for p in toric.fixed_points(bl):
            want = toric.RationalCone(kahler["".join(map(str, p.labels))], open=True)
            assert toric.same_cone(toric.kahler_cone(bl, p), want)
        dual_kahler = {"34": ((-1, 0), (-1, -1)), "24": ((0, 1), (-1, -1)), "23": ((-1, 0), (0, 1)),
                       "14": ((-1, -1), (1, 0)), "12": ((1, 0), (0, 1))}
        for p in toric.fixed_points(bl_dual):
            want = toric.RationalCone(dual_kahler["".join(map(str, p.labels))], open=True)
            assert toric.same_cone(toric.kahler_cone(bl_dual, p), want)
        chs = toric.chambers(bl)
        assert [_labels(c.points) for c in chs] == [{"13", "23", "34"}, {"12", "14", "23", "34"}]
        assert [len(c.points) for c in chs] == [3, 4]
        assert [_labels(c.points) for c in toric.chambers(bl_dual)] == [{"12"}, {"23", "24"}, {"24", "34"}, {"14"}]


def test_criterion_2_qseries(capsys):
    with criterion(capsys, 2, "q-series property suite", 10.0):
        x = unit_key(1, "z", 0)
        for d in range(-6, 7):
            assert pochhammer_finite(1, x, -d) == pochhammer_finite(1, x, d, scale=QRat.q_power(-d)).inv()
            c = QRat([2, 1], [1, 0, 3])
            assert q_pochhammer_number(c, -d) == ONE / q_pochhammer_number(c * QRat.q_power(-d), d)
            # (x; q)_d (q^-1 x; q^-1)_{-d} = 1 with x = 3 q^2 z
            s = QRat.q_power(2) * 3
            prod = pochhammer_finite(1, x, d, scale=s) * pochhammer_finite(1, x, -d, base=-1, scale=s * QRat.q_power(-1))
            assert prod == pochhammer_finite(1, x, 0)
        spec = TruncationSpec((1,), (1,), 8, 8)
        z, a = unit_key(1, "z", 0), unit_key(1, "a", 0)
        rhs = infinite_pochhammer((1, 1), spec) * inv_infinite_pochhammer(z, spec)
        lhs = TruncatedSeries.zero(spec)
        for m in range(9):
            coef = pochhammer_finite(1, a, m).expand(spec).scale(ONE / q_pochhammer_number(QRat.q_power(1), m))
            lhs = lhs + coef.mul_monomial((m, 0))
        assert lhs == rhs
        tau_lhs = apply_tau(inv_infinite_pochhammer(z, spec))
        assert tau_lhs == infinite_pochhammer(a, spec.swap(), scale=QRat.q_power(1))
        rng = random.Random(20260101)
        for _ in range(1000):
            num = [rng.randint(-9, 9) for _ in range(rng.randint(1, 5))]
            den = [rng.randint(-9, 9) for _ in range(rng.randint(1, 5))]
            if not any(den):
                den = [1]
            r = QRat(num, den)
            assert r.invert_q().invert_q() == r


def test_criterion_3_projective_closed_form(capsys):
    with criterion(capsys, 3, "P^N closed-form cross-check", 10.0):
        for N in (1, 2):
            X = toric.validate([[1]] * (N + 1))
            for p in toric.fixed_points(X):
                ours = ifunction.i_eff(X, p, orders=(3, 3))
                theirs = closed_form_projective(N, p.indices[0], 3, 3)
                for key in set(ours.terms) | set(theirs):
                    c = ours.terms.get(key, QRat())
                    assert sympy.cancel(to_sympy(c) - theirs.get(key, 0)) == 0, key


def test_criterion_4_difference_equations(capsys):
    with criterion(capsys, 4, "difference-equation suite", 120.0):
        for name, X, orders in corpus():
            rep = mirror.diffeq_check(X, orders)
            kinds = {r.kind for r in rep.results}
            assert kinds == {"linear", "kahler", "equivariant"}, name
            assert rep.verdict, (name, [(str(r.point), r.label) for r in rep.results if not r.ok])


def test_criterion_5_recursion(capsys):
    with criterion(capsys, 5, "uniqueness recursion", 60.0):
        for name, X, orders in corpus():
            for p in toric.fixed_points(X):
                assert mirror.uniqueness_recursion_check(X, p, orders), (name, str(p))


def test_criterion_6_mirror(capsys, p1, p2, bl):
    with criterion(capsys, 6, "mirror verification", 300.0):
        for X, orders in ((p1, (4, 4)), (p2, (3, 3)), (bl, (3, 3))):
            rep = mirror.mirror_verify(X, orders)
            assert rep.verdict, [(str(v.point), v.prefactor_ok, len(v.diffs)) for v in rep.points]
            assert all(v.prefactor_ok for v in rep.points)
        wrong = lambda p: [i for i in range(3) if i != (p.indices[0] + 1) % 3]
        neg = mirror.mirror_verify(p2, (3, 3), pairing=wrong)
        assert not neg.verdict
        assert all(v.diffs or not v.prefactor_ok for v in neg.points)


def test_criterion_7_level_identity(capsys, p2):
    with criterion(capsys, 7, "level identity", 60.0):
        ukey = (0, 0, 0, -1, 1, 0)
        zero = (0,) * 6
        for D in range(-6, 7):
            lhs = ifunction.level_factor(p2, ukey, D, 1)
            assert lhs == pochhammer_finite(3, ukey, D, base=-1, scale=QRat.q_power(-1)).inv()
            if D >= 0:
                assert (ifunction.level_factor(p2, zero, D, 1).as_qrat()
                        == ONE / q_pochhammer_number(QRat.q_power(-1), D, base=-1))
        for name, X, orders in corpus():
            for p in toric.fixed_points(X):
                lev = ifunction.i_function(X, p, 1, orders=orders)
                assert lev.series == ifunction.i_eff(X, p, orders=orders), (name, str(p))
