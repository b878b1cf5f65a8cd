"""q-difference operators from circuits, and the mirror comparison.

Operators are finite sums ``c(q) * x^m * T^s`` where ``T^s`` rescales the
variables by ``q^s`` (``s`` indexes ``z`` then ``a``).  Composition uses
``T^s x^m = q^{s.m} x^m T^s``.

Applying an operator to a truncated series loses exactness near the top
of the window whenever it multiplies by a monomial of negative grade
(``z_i^{-1}`` inside ``p``, say).  ``operator_deficit`` measures that loss,
callers compute their input on a window enlarged by it, and ``apply``
returns its result on the window where every coefficient is exact.
"""
import dataclasses
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

from . import exactalg as ea
from .errors import HypothesisViolated, TruncationMismatch, TruncationUnderflow
from .ifunction import (
    DEFAULT_ORDERS,
    FixedPointContribution,
    enumerate_degrees,
    i_eff,
    i_eff_modified,
    point_spec,
)
from .qseries import (
    ONE,
    LogPrefactor,
    PrefactoredSeries,
    QRat,
    TruncatedSeries,
    add_keys,
    apply_tau,
    expand_inverse_linear,
    scale_by_q_shift,
    swap_key,
    unit_key,
)
from .toric import FixedPoint, ToricDatum, _require_fixed, fixed_points, gale_dual, u_restriction

KAHLER = "kahler"
EQUIVARIANT = "equivariant"


@dataclass(frozen=True)
class Circuit:
    mu: tuple
    side: str = KAHLER

    @property
    def s_plus(self) -> tuple:
        return tuple(i for i, x in enumerate(self.mu) if x == 1)

    @property
    def s_minus(self) -> tuple:
        return tuple(i for i, x in enumerate(self.mu) if x == -1)

    def __str__(self):
        return f"{self.side}{list(self.mu)}"


def _canonical_sign(v):
    v = tuple(v)
    first = next(x for x in v if x)
    return tuple(v) if first > 0 else tuple(-x for x in v)


def circuits(M, side: str = KAHLER) -> list:
    """Nonzero vectors of ``ker M`` with entries in {-1, 0, 1}, up to sign.

    A kernel vector is determined by its entries on any set of rows where
    the kernel basis is invertible, so it suffices to try the ``3^r``
    sign patterns there.
    """
    M = ea.as_int_matrix(M)
    K = ea.integer_kernel(M)
    n, r = K.shape
    if r == 0:
        return []
    rows = next(s for s in combinations(range(n), r) if ea.bareiss_det(K[list(s), :]) != 0)
    KR = K[list(rows), :]
    found = set()
    for pattern in product((-1, 0, 1), repeat=r):
        if not any(pattern):
            continue
        c = ea.solve_rational(KR, list(pattern))
        v = [sum((K[i, j] * c[j] for j in range(r)), 0) for i in range(n)]
        if all(x in (-1, 0, 1) for x in v):
            found.add(_canonical_sign(int(x) for x in v))
    return [Circuit(mu, side) for mu in sorted(found, reverse=True)]


def kahler_circuits(X: ToricDatum) -> list:
    return circuits(X.beta, KAHLER)


def equivariant_circuits(X: ToricDatum) -> list:
    return circuits(X.iota.T, EQUIVARIANT)


class ShiftOperator:
    """``sum c * x^m * T^s`` over ``(m, s)``, immutable."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        for (m, s), c in (terms or {}).items():
            c = QRat.coerce(c)
            key = (tuple(m), tuple(s))
            total = clean.get(key, QRat()) + c
            if total.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = total
        self.terms = clean

    @classmethod
    def identity(cls, n):
        z = (0,) * (2 * n)
        return cls(n, {(z, z): ONE})

    @classmethod
    def monomial(cls, n, m, c=ONE):
        return cls(n, {(tuple(m), (0,) * (2 * n)): c})

    @classmethod
    def shift(cls, n, s):
        return cls(n, {((0,) * (2 * n), tuple(s)): ONE})

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, QRat()) + c
        return ShiftOperator(self.n, terms)

    def __neg__(self):
        return ShiftOperator(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Composition: ``(self * other) f = self(other(f))``."""
        out = {}
        for (m1, s1), c1 in self.terms.items():
            for (m2, s2), c2 in other.terms.items():
                e = sum(a * b for a, b in zip(s1, m2))
                key = (add_keys(m1, m2), add_keys(s1, s2))
                out[key] = out.get(key, QRat()) + c1 * c2 * QRat.q_power(e)
        return ShiftOperator(self.n, out)

    def __eq__(self, other):
        if not isinstance(other, ShiftOperator):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def tau(self) -> "ShiftOperator":
        """Conjugate by the mirror map: swap blocks, invert shifts, ``q -> 1/q``."""
        return ShiftOperator(self.n, {(swap_key(m), tuple(-x for x in swap_key(s))): c.invert_q()
                                      for (m, s), c in self.terms.items()})

    def __repr__(self):
        return f"ShiftOperator({len(self.terms)} terms)"


def _factor(n, block, i, direction):
    """``x_i^{-1} (1 - T_i^{direction})`` for ``x`` in the given block."""
    inv = ShiftOperator.monomial(n, unit_key(n, block, i, -1))
    return inv * (ShiftOperator.identity(n) - ShiftOperator.shift(n, unit_key(n, block, i, direction)))


def _circuit_operator(c: Circuit, n: int, block: str, direction: int) -> ShiftOperator:
    plus = ShiftOperator.identity(n)
    for i in c.s_plus:
        plus = plus * _factor(n, block, i, direction)
    minus = ShiftOperator.identity(n)
    for i in c.s_minus:
        minus = minus * _factor(n, block, i, direction)
    return plus - minus


def kahler_operator(c: Circuit, n: int) -> ShiftOperator:
    """``prod_{S+} z_i^{-1}(1 - q^{-z_i d_i}) - prod_{S-} (same)``."""
    return _circuit_operator(c, n, "z", -1)


def equivariant_operator(c: Circuit, n: int) -> ShiftOperator:
    """``prod_{R+} a_i^{-1}(1 - q^{a_i d_i}) - prod_{R-} (same)``; apply it after
    ``with_mirror_prefactor``."""
    return _circuit_operator(c, n, "a", 1)


def linear_relation_operator(i: int, n: int) -> ShiftOperator:
    """``q^{-z_i d_{z_i}} + z_i q^{a_i d_{a_i}} - 1``."""
    return (ShiftOperator.shift(n, unit_key(n, "z", i, -1))
            + ShiftOperator.monomial(n, unit_key(n, "z", i)) * ShiftOperator.shift(n, unit_key(n, "a", i, 1))
            - ShiftOperator.identity(n))


def with_mirror_prefactor(obj: PrefactoredSeries, sign: int = 1):
    """Multiply by ``exp(sign * sum ln z_i ln a_i / ln q)``."""
    coupling = LogPrefactor.diagonal_coupling(obj.spec.n)
    pref = obj.prefactor + coupling if sign > 0 else obj.prefactor - coupling
    return dataclasses.replace(obj, prefactor=pref)


def _as_prefactored(obj):
    if isinstance(obj, TruncatedSeries):
        return PrefactoredSeries(LogPrefactor.zero(obj.spec.n), obj)
    return obj


def operator_deficit(op: ShiftOperator, prefactor: LogPrefactor, spec) -> tuple:
    """How far ``(dz, da)`` the exact window shrinks when ``op`` is applied."""
    dz = da = 0
    for (m, s), _ in op.terms.items():
        key, _e = prefactor.multiplier(s)
        gz, ga = spec.grade(add_keys(m, key))
        dz = max(dz, -gz)
        da = max(da, -ga)
    return dz, da


def apply(op: ShiftOperator, obj):
    """Apply ``op``; the result lives on the window where it is exact."""
    obj = _as_prefactored(obj)
    series = obj.series
    spec = series.spec
    out = TruncatedSeries.zero(spec)
    for (m, s), c in op.terms.items():
        key, e = obj.prefactor.multiplier(s)
        piece = scale_by_q_shift(series, s).mul_monomial(add_keys(m, key), c * QRat.q_power(e))
        out = out + piece
    dz, da = operator_deficit(op, obj.prefactor, spec)
    return dataclasses.replace(obj, series=out.truncate(spec.widen(-dz, -da)))


def annihilates(op: ShiftOperator, obj, window=None) -> list:
    """Monomials on ``window`` where ``op(obj)`` is nonzero.

    ``window`` is an ``(Nz, Na)`` pair and defaults to the exact window.
    Raises TruncationUnderflow if ``obj`` was computed on too small a window.
    """
    obj = _as_prefactored(obj)
    spec = obj.spec
    dz, da = operator_deficit(op, obj.prefactor, spec)
    exact = (spec.z_bound - dz, spec.a_bound - da)
    if window is None:
        window = exact
    if window[0] > exact[0] or window[1] > exact[1]:
        raise TruncationUnderflow(f"window {tuple(window)} needs the input on at least "
                                  f"{(window[0] + dz, window[1] + da)}, got {(spec.z_bound, spec.a_bound)}")
    res = apply(op, obj).series.truncate(spec.with_bounds(*window))
    return sorted(res.terms)


def linear_relation_check(contribution, i: int, window=None) -> bool:
    """Does ``q^{-z_i d} + z_i q^{a_i d} - 1`` kill the contribution on ``window``?"""
    op = linear_relation_operator(i, contribution.spec.n)
    return not annihilates(op, contribution, window)


# difference-equation suite

@dataclass
class EquationResult:
    point: FixedPoint
    kind: str          # "linear", "kahler" or "equivariant"
    label: str
    nonzero: list      # offending monomials (empty on success)

    @property
    def ok(self) -> bool:
        return not self.nonzero


@dataclass
class DiffEqReport:
    orders: tuple
    results: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(r.ok for r in self.results)

    def to_dict(self) -> dict:
        return {"orders": list(self.orders), "verdict": self.verdict,
                "equations": [{"point": str(r.point), "kind": r.kind, "label": r.label, "ok": r.ok,
                               "nonzero": [list(k) for k in r.nonzero[:5]]} for r in self.results]}


def diffeq_check(X: ToricDatum, orders=DEFAULT_ORDERS, points=None) -> DiffEqReport:
    """Check every linear relation, Kahler circuit equation and equivariant
    circuit equation at every fixed point, exactly on the ``orders`` window."""
    n = X.n
    ops = [("linear", f"i={i + 1}", linear_relation_operator(i, n), False) for i in range(n)]
    ops += [("kahler", str(list(c.mu)), kahler_operator(c, n), False) for c in kahler_circuits(X)]
    ops += [("equivariant", str(list(c.mu)), equivariant_operator(c, n), True) for c in equivariant_circuits(X)]
    report = DiffEqReport(tuple(orders))
    for p in (points or fixed_points(X)):
        spec = point_spec(X, p, orders)
        base_pref = i_eff_modified(X, p, orders=(0, 0)).prefactor
        coupled = base_pref + LogPrefactor.diagonal_coupling(n)
        dz = da = 0
        for _, _, op, eq in ops:
            z, a = operator_deficit(op, coupled if eq else base_pref, spec)
            dz, da = max(dz, z), max(da, a)
        contrib = i_eff_modified(X, p, orders=(orders[0] + dz, orders[1] + da))
        for kind, label, op, eq in ops:
            obj = with_mirror_prefactor(contrib) if eq else contrib
            report.results.append(EquationResult(p, kind, label, annihilates(op, obj, orders)))
    return report


# recursion from the constant term

def chart_circuits(X: ToricDatum, p) -> dict:
    """For each position ``c`` in ``p``, the Kahler circuit ``iota P^{-1} e_c``."""
    p = _require_fixed(X, p)
    table = u_restriction(X, p)
    out = {}
    for c, j in enumerate(p.indices):
        mu = [0] * X.n
        mu[j] = 1
        for r, i in enumerate(table.outside):
            mu[i] = table.C[r][c]
        out[c] = Circuit(tuple(mu), KAHLER)
    return out


def uniqueness_recursion_check(X: ToricDatum, p, orders=DEFAULT_ORDERS, circuits=None, constant=1) -> bool:
    """Rebuild the effective-level series at ``p`` from its constant term.

    Writing the series as ``sum_m f_m Q^m`` over ``m = iota_p d``, the
    circuit with a single entry ``+1`` at position ``j`` of ``p`` gives

        prod_{i in S+} (1 - U_i q^{-D_i(m)}) f_m
            = prod_{i in S-} (1 - U_i q^{-D_i(m - e_j)}) f_{m - e_j},

    with ``U_j = 1``.  Each ``f_m`` is computed from the first admissible
    ``j`` and cross-checked against every other one; the result is compared
    with the directly computed series scaled by ``constant``.
    """
    p = _require_fixed(X, p)
    spec = point_spec(X, p, orders)
    table = u_restriction(X, p)
    n, k = X.n, X.k
    ukeys = {i: (0,) * n + table.exponent(i) for i in table.outside}
    for i, key in ukeys.items():
        if not any(key):
            raise HypothesisViolated(f"U_{i + 1}|_p = 1 for an index outside p")
    chart = chart_circuits(X, p)
    if circuits is not None:
        chosen = {}
        for circ in circuits:
            mu = list(circ.mu)
            hits = [c for c, j in enumerate(p.indices) if mu[j]]
            if len(hits) != 1:
                continue
            c = hits[0]
            sign = mu[p.indices[c]]
            mu = tuple(sign * x for x in mu)
            if mu != chart[c].mu:
                raise HypothesisViolated(f"circuit {list(circ.mu)} is not in the kernel of beta")
            chosen[c] = chart[c]
        missing = [c for c in range(k) if c not in chosen]
        if missing:
            raise HypothesisViolated(f"no circuit with a single entry at position {missing[0] + 1} of {p}")
        chart = chosen

    degrees = {deg.m: deg for deg in enumerate_degrees(X, p, orders[0])}

    def lin(i, D):
        # 1 - U_i q^{-D}
        return (TruncatedSeries.one(spec)
                - TruncatedSeries.monomial(spec, ukeys[i], QRat.q_power(-D)))

    def step(m, c):
        circ = chart[c]
        prev = tuple(x - (1 if t == c else 0) for t, x in enumerate(m))
        Dm, Dprev = degrees[m].D, degrees[prev].D
        rhs = f[prev]
        for i in circ.s_minus:
            rhs = rhs * lin(i, Dprev[i])
        j = p.indices[c]
        lead = ONE - QRat.q_power(-Dm[j])
        if lead.is_zero():
            raise HypothesisViolated(f"leading coefficient vanishes at m = {m}")
        out = rhs.scale(lead.inv())
        for i in circ.s_plus:
            if i == j:
                continue
            out = out * expand_inverse_linear(ukeys[i], QRat.q_power(-Dm[i]), spec)
        return out

    f = {}
    for m in sorted(degrees, key=lambda t: (sum(t), t)):
        if not any(m):
            f[m] = TruncatedSeries.one(spec).scale(constant)
            continue
        routes = [c for c in range(k) if m[c] > 0]
        f[m] = step(m, routes[0])
        for c in routes[1:]:
            if step(m, c) != f[m]:
                return False
    rebuilt = TruncatedSeries.zero(spec)
    for m, fm in f.items():
        rebuilt = rebuilt + fm.mul_monomial(tuple(degrees[m].D) + (0,) * n)
    return rebuilt == i_eff(X, p, spec).scale(constant)


# mirror comparison

@dataclass
class PointVerdict:
    point: FixedPoint
    dual_point: FixedPoint
    prefactor_ok: bool
    diffs: list           # (key, lhs, rhs) triples
    spec: object
    note: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.prefactor_ok and not self.diffs and self.note is None


@dataclass
class MirrorReport:
    datum: ToricDatum
    orders: tuple
    points: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(v.ok for v in self.points)

    def to_dict(self) -> dict:
        n = self.datum.n
        out = {"datum": self.datum.to_dict(), "orders": list(self.orders), "verdict": self.verdict, "points": []}
        for v in self.points:
            entry = {"point": str(v.point), "dualPoint": str(v.dual_point), "ok": v.ok,
                     "prefactorOk": v.prefactor_ok, "diffCount": len(v.diffs),
                     "spec": v.spec.to_dict() if v.spec is not None else None}
            if v.note:
                entry["note"] = v.note
            if v.diffs:
                key, lhs, rhs = v.diffs[0]
                entry["firstDiff"] = {"zExp": list(key[:n]), "aExp": list(key[n:]),
                                      "lhs": {"num": lhs.num_coeffs(), "den": lhs.den_coeffs()},
                                      "rhs": {"num": rhs.num_coeffs(), "den": rhs.den_coeffs()}}
            out["points"].append(entry)
        return out


def mirror_image(X_dual: ToricDatum, p_dual, orders) -> FixedPointContribution:
    """``exp(-sum ln z ln a / ln q) * tau(I~(p^!))`` computed on the dual datum.

    ``orders`` are the primal orders; the dual side runs at the swapped pair.
    """
    Nz, Na = orders
    dual = i_eff_modified(X_dual, p_dual, orders=(Na, Nz))
    return with_mirror_prefactor(apply_tau(dual), sign=-1)


def compare_contributions(lhs: PrefactoredSeries, rhs: PrefactoredSeries) -> tuple:
    """``(prefactor_equal, diffs)`` on the monomials both windows admit."""
    if lhs.spec.n != rhs.spec.n:
        raise TruncationMismatch("contributions over different numbers of variables")
    s1, s2 = lhs.spec, rhs.spec
    keys = {k for k in lhs.series.terms if s2.admits(k)} | {k for k in rhs.series.terms if s1.admits(k)}
    diffs = []
    for key in sorted(keys):
        a = lhs.series.terms.get(key, QRat())
        b = rhs.series.terms.get(key, QRat())
        if a != b:
            diffs.append((key, a, b))
    return lhs.prefactor == rhs.prefactor, diffs


def mirror_verify(X: ToricDatum, orders=DEFAULT_ORDERS, pairing=None) -> MirrorReport:
    """Compare ``I~(p)`` with ``exp(-sum ln z ln a/ln q) tau(I~(p^!))`` at every ``p``.

    ``pairing`` maps a primal fixed point to a subset of indices on the dual
    side; it defaults to the complement and exists for negative controls.
    """
    Nz, Na = orders
    if Nz < 0 or Na < 0:
        raise TruncationMismatch(f"orders must be nonnegative, got {tuple(orders)}")
    dual = gale_dual(X)
    dual_points = set(fixed_points(dual))
    report = MirrorReport(X, (Nz, Na))
    for p in fixed_points(X):
        q = FixedPoint(tuple(pairing(p))) if pairing else p.complement(X.n)
        lhs = i_eff_modified(X, p, orders=(Nz, Na))
        if q not in dual_points:
            report.points.append(PointVerdict(p, q, False, [], lhs.spec, note=f"{q} is not a fixed point of the dual"))
            continue
        rhs = mirror_image(dual, q, (Nz, Na))
        pref_ok, diffs = compare_contributions(lhs, rhs)
        report.points.append(PointVerdict(p, q, pref_ok, diffs, lhs.spec))
    return report
