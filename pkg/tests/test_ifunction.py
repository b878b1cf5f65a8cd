import pytest
import sympy

from toricmirror import ifunction, toric
from toricmirror.qseries import ONE, QRat, TruncatedSeries, pochhammer_finite

from conftest import corpus
from test_qseries import to_sympy

q = sympy.Symbol("q")


def closed_form_projective(N, j, Nz, Na):
    """Coefficients of sum_d (z_1..z_{N+1})^d / prod_i (q^-1 a_i/a_j; q^-1)_d.

    Built directly from the product formula with sympy: each factor
    1/(1 - q^-l x) is a geometric series in x = a_i/a_j cut at degree Na.
    Returns {key: sympy expression}.
    """
    n = N + 1
    out = {}
    for d in range(Nz + 1):
        # polynomial in the a-exponents of the U_i, as {exponent tuple: expr}
        poly = {(0,) * n: sympy.Integer(1) / sympy.prod([1 - q**(-l) for l in range(1, d + 1)])}
        for i in range(n):
            if i == j:
                continue
            for l in range(1, d + 1):
                new = {}
                for e, c in poly.items():
                    for m in range(Na + 1 - sum(e)):
                        e2 = list(e)
                        e2[i] += m
                        e2 = tuple(e2)
                        new[e2] = new.get(e2, 0) + c * q**(-l * m)
                poly = new
        for e, c in poly.items():
            a = list(e)
            a[j] = -sum(e)
            out[(d,) * n + tuple(a)] = c
    return out


@pytest.mark.parametrize("N", [1, 2])
def test_projective_closed_form(N):
    X = toric.validate([[1]] * (N + 1))
    for p in toric.fixed_points(X):
        j = p.indices[0]
        ours = ifunction.i_eff(X, p, orders=(3, 3))
        theirs = closed_form_projective(N, j, 3, 3)
        assert set(ours.terms) == {k for k, v in theirs.items() if sympy.cancel(v) != 0}
        for key, c in ours.terms.items():
            assert sympy.cancel(to_sympy(c) - theirs[key]) == 0, key


def test_p1_known_coefficients(p1):
    p = toric.FixedPoint.from_labels([1])
    s = ifunction.i_eff(p1, p, orders=(2, 2))
    assert s.constant_term() == ONE
    # z1 z2 / ((1 - q^-1)(1 - q^-1 a2/a1)) at a-order 0 and 1
    assert s.coefficient((1, 1, 0, 0)) == ONE / (ONE - QRat.q_power(-1))
    assert s.coefficient((1, 1, -1, 1)) == QRat.q_power(-1) / (ONE - QRat.q_power(-1))


@pytest.mark.parametrize("D", range(-6, 7))
def test_level_one_factor_identity(p2, D):
    # level-one factor with its sign convention equals 1/(q^-1 U; q^-1)_D exactly
    ukey = (0, 0, 0, 1, -1, 0)
    lhs = ifunction.level_factor(p2, ukey, D, 1)
    rhs = pochhammer_finite(3, ukey, D, base=-1, scale=QRat.q_power(-1)).inv()
    assert lhs == rhs
    zero = (0,) * 6
    if D >= 0:
        assert ifunction.level_factor(p2, zero, D, 1) == pochhammer_finite(3, zero, D, base=-1, scale=QRat.q_power(-1)).inv()


@pytest.mark.parametrize("name,X,orders", corpus(), ids=[c[0] for c in corpus()])
def test_level_one_equals_effective(name, X, orders):
    for p in toric.fixed_points(X):
        assert ifunction.i_function(X, p, 1, orders=orders).series == ifunction.i_eff(X, p, orders=orders)


def test_level_zero_differs(bl):
    p = toric.fixed_points(bl)[0]
    assert ifunction.i_function(bl, p, 0).series != ifunction.i_eff(bl, p)


def test_degrees_lie_in_effective_cone(bl):
    for p in toric.fixed_points(bl):
        E = toric.effective_cone(bl, p)
        degs = ifunction.enumerate_degrees(bl, p, 3)
        assert len(degs) == 10
        for deg in degs:
            assert toric.cone_contains(E, deg.d, strict=False)
            assert all(deg.D[i] >= 0 for i in p.indices)


def test_modified_conventions(bl):
    # 1/(q U; q)_inf = (1 - U) / (U; q)_inf
    p = toric.FixedPoint.from_labels([2, 3])
    standard = ifunction.i_eff_modified(bl, p, orders=(2, 3))
    shifted = ifunction.i_eff_modified(bl, p, orders=(2, 3), convention="shifted")
    assert standard.prefactor == shifted.prefactor
    spec = standard.spec
    corr = TruncatedSeries.one(spec)
    for f in shifted.infinite_part["factors"]:
        key = (0,) * 4 + tuple(f["aExp"])
        corr = corr * (TruncatedSeries.one(spec) - TruncatedSeries.monomial(spec, key))
    assert standard.series * corr == shifted.series
    with pytest.raises(ValueError):
        ifunction.i_eff_modified(bl, p, convention="other")


def test_modified_prefactor_p1(p1):
    p = toric.FixedPoint.from_labels([1])
    pref = ifunction.modified_prefactor(p1, p)
    # -ln z2 ln(a2/a1)
    assert sorted(pref.terms()) == [(1, 2, 1), (1, 3, -1)]


def test_stack_covers_all_points(bl):
    stack = ifunction.i_eff_stack(bl, orders=(1, 1))
    assert [c.point for c in stack] == toric.fixed_points(bl)


def test_unknown_point_rejected(bl):
    with pytest.raises(Exception):
        ifunction.i_eff(bl, toric.FixedPoint((1, 3)))
