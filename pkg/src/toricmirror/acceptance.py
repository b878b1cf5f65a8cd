"""Self-contained acceptance runs behind ``toricmirror acceptance``.

Each ``criterion_N`` returns a list of failure messages (empty on success).
The test suite checks the same criteria against sympy oracles.
"""
import random
import time

from . import ifunction, mirror, toric
from .qseries import (
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

BL = [[1, 1], [0, 1], [1, 0], [0, 1]]
BL_BETA = [[1, 0, -1, -1], [0, 1, 0, -1]]


def corpus():
    return [
        ("P1", toric.validate([[1], [1]], name="P1"), (4, 4)),
        ("P2", toric.validate([[1], [1], [1]], name="P2"), (3, 3)),
        ("Bl(P2)", toric.validate(BL, BL_BETA, name="Bl(P2)"), (3, 3)),
        ("Bl(P2)^!", toric.validate([[1, 0], [0, 1], [-1, 0], [-1, -1]], [[1, 0, 1, 0], [1, 1, 0, 1]]), (3, 3)),
    ]


def _labels(points):
    return [str(p) for p in points]


def criterion_1():
    bad = []
    X = toric.validate(BL, BL_BETA)
    D = toric.gale_dual(X)
    if _labels(toric.fixed_points(X)) != ["{1,2}", "{1,3}", "{1,4}", "{2,3}", "{3,4}"]:
        bad.append("primal fixed points")
    if _labels(toric.fixed_points(D)) != ["{1,2}", "{1,4}", "{2,3}", "{2,4}", "{3,4}"]:
        bad.append("dual fixed points")
    C1, C2, quad = ((1, 0), (1, 1)), ((1, 1), (0, 1)), ((1, 0), (0, 1))
    want = {"{1,2}": C2, "{1,3}": C1, "{1,4}": C2, "{2,3}": quad, "{3,4}": quad}
    for p in toric.fixed_points(X):
        if not toric.same_cone(toric.kahler_cone(X, p), toric.RationalCone(want[str(p)], open=True)):
            bad.append(f"Kahler cone of {p}")
    if [_labels(c.points) for c in toric.chambers(X)] != [["{1,3}", "{2,3}", "{3,4}"],
                                                           ["{1,2}", "{1,4}", "{2,3}", "{3,4}"]]:
        bad.append("primal chambers")
    if [_labels(c.points) for c in toric.chambers(D)] != [["{1,2}"], ["{2,3}", "{2,4}"],
                                                           ["{2,4}", "{3,4}"], ["{1,4}"]]:
        bad.append("dual chambers")
    return bad


def criterion_2():
    bad = []
    x = unit_key(1, "z", 0)
    for d in range(-6, 7):
        if pochhammer_finite(1, x, -d) != pochhammer_finite(1, x, d, scale=QRat.q_power(-d)).inv():
            bad.append(f"negative index d={d}")
        s = QRat.q_power(2) * 3
        prod = pochhammer_finite(1, x, d, scale=s) * pochhammer_finite(1, x, -d, base=-1, scale=s * QRat.q_power(-1))
        if prod != pochhammer_finite(1, x, 0):
            bad.append(f"(x)_d (x/q; 1/q)_-d != 1 at d={d}")
    spec = TruncationSpec((1,), (1,), 8, 8)
    a = unit_key(1, "a", 0)
    rhs = infinite_pochhammer((1, 1), spec) * inv_infinite_pochhammer(x, spec)
    lhs = TruncatedSeries.zero(spec)
    for m in range(9):
        coef = pochhammer_finite(1, a, m).expand(spec).scale(ONE / q_pochhammer_number(QRat.q_power(1), m))
        lhs = lhs + coef.mul_monomial((m, 0))
    if lhs != rhs:
        bad.append("q-binomial theorem")
    if apply_tau(inv_infinite_pochhammer(x, spec)) != infinite_pochhammer(a, spec.swap(), scale=QRat.q_power(1)):
        bad.append("tau of 1/(x)_inf")
    rng = random.Random(7)
    for _ in range(1000):
        num = [rng.randint(-9, 9) for _ in range(rng.randint(1, 5))]
        den = [rng.randint(1, 9)] + [rng.randint(-9, 9) for _ in range(rng.randint(0, 4))]
        r = QRat(num, den)
        if r.invert_q().invert_q() != r:
            bad.append(f"invert_q on {r}")
            break
    return bad


def projective_closed_form(N: int, j: int, Nz: int, Na: int) -> dict:
    """``sum_d (z_1..z_{N+1})^d / prod_i (q^-1 a_i/a_j; q^-1)_d`` as ``{key: QRat}``,
    from geometric series in ``a_i/a_j`` without the general machinery."""
    n = N + 1
    out = {}
    for d in range(Nz + 1):
        c0 = ONE
        for l in range(1, d + 1):
            c0 = c0 / (ONE - QRat.q_power(-l))
        poly = {(0,) * n: c0}
        for i in range(n):
            if i == j:
                continue
            for l in range(1, d + 1):
                new = {}
                for e, c in poly.items():
                    for m in range(Na + 1 - sum(e)):
                        e2 = e[:i] + (e[i] + m,) + e[i + 1:]
                        new[e2] = new.get(e2, QRat()) + c * QRat.q_power(-l * m)
                poly = new
        for e, c in poly.items():
            a = list(e)
            a[j] = -sum(e)
            if not c.is_zero():
                out[(d,) * n + tuple(a)] = c
    return out


def criterion_3():
    bad = []
    for N in (1, 2):
        X = toric.validate([[1]] * (N + 1))
        for p in toric.fixed_points(X):
            if ifunction.i_eff(X, p, orders=(3, 3)).terms != projective_closed_form(N, p.indices[0], 3, 3):
                bad.append(f"P{N} at {p}")
    return bad


def criterion_4():
    bad = []
    for name, X, orders in corpus():
        rep = mirror.diffeq_check(X, orders)
        bad += [f"{name} {r.point} {r.kind} {r.label}" for r in rep.results if not r.ok]
    return bad


def criterion_5():
    return [f"{name} {p}" for name, X, orders in corpus() for p in toric.fixed_points(X)
            if not mirror.uniqueness_recursion_check(X, p, orders)]


def criterion_6():
    bad = []
    for name, X, orders in corpus()[:3]:
        rep = mirror.mirror_verify(X, orders)
        bad += [f"{name} {v.point}" for v in rep.points if not v.ok]
    X = corpus()[1][1]
    neg = mirror.mirror_verify(X, (3, 3), pairing=lambda p: [i for i in range(3) if i != (p.indices[0] + 1) % 3])
    if neg.verdict:
        bad.append("negative control passed")
    return bad


def criterion_7():
    bad = []
    X = corpus()[1][1]
    ukey = (0, 0, 0, -1, 1, 0)
    for D in range(-6, 7):
        if ifunction.level_factor(X, ukey, D, 1) != pochhammer_finite(3, ukey, D, base=-1, scale=QRat.q_power(-1)).inv():
            bad.append(f"level factor D={D}")
    for name, Y, orders in corpus():
        for p in toric.fixed_points(Y):
            if ifunction.i_function(Y, p, 1, orders=orders).series != ifunction.i_eff(Y, p, orders=orders):
                bad.append(f"{name} {p}")
    return bad


CRITERIA = {
    1: ("combinatorics regression", criterion_1, 1.0),
    2: ("q-series property suite", criterion_2, 10.0),
    3: ("P^N closed-form cross-check", criterion_3, 10.0),
    4: ("difference-equation suite", criterion_4, 120.0),
    5: ("uniqueness recursion", criterion_5, 60.0),
    6: ("mirror verification", criterion_6, 300.0),
    7: ("level identity", criterion_7, 60.0),
}


def run(numbers=None) -> list:
    """``[(number, title, ok, seconds, failures)]`` for the chosen criteria."""
    out = []
    for k in numbers or sorted(CRITERIA):
        title, fn, limit = CRITERIA[k]
        t0 = time.perf_counter()
        failures = fn()
        dt = time.perf_counter() - t0
        if dt >= limit:
            failures = failures + [f"took {dt:.1f} s, limit {limit} s"]
        out.append((k, title, not failures, dt, failures))
    return out
