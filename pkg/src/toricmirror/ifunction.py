"""Fixed-point I-functions as truncated series.

For a fixed point ``p`` the effective-level series is

    sum_{d} z^D / prod_i (q^{-1} U_i|_p ; q^{-1})_{D_i},   D = iota d,

summed over the effective cone, where ``U_i|_p = 1`` for ``i`` in ``p``.
Each ``U_i|_p`` with ``i`` outside ``p`` is expanded as a power series, so
coefficients are QRats.  The modified version multiplies by
``prod_{i not in p} 1/(U_i|_p; q)_inf`` and carries the log prefactor
``-sum_{i not in p} ln z_i ln U_i|_p``.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Optional

import numpy as np

from . import exactalg as ea
from .errors import NonGenericSpecialization, PoleAtTruncation
from .qseries import (
    ONE,
    FactoredProduct,
    LogPrefactor,
    PrefactoredSeries,
    QRat,
    TruncatedSeries,
    TruncationSpec,
    inv_infinite_pochhammer,
    pochhammer_finite,
    q_pochhammer_number,
)
from .toric import FixedPoint, ToricDatum, _require_fixed, fixed_points, u_restriction

DEFAULT_ORDERS = (3, 3)


@dataclass(frozen=True)
class DegreeVector:
    m: tuple   # iota_p d, the coordinates on the effective cone
    d: tuple
    D: tuple   # iota d


@dataclass(frozen=True)
class FixedPointContribution(PrefactoredSeries):
    point: Optional[FixedPoint] = None
    level: int = 1
    infinite_part: Any = field(default=None, compare=False)
    standing: Optional[FactoredProduct] = field(default=None, compare=False)


def point_spec(X: ToricDatum, p, orders=DEFAULT_ORDERS) -> TruncationSpec:
    """Window for ``p``: z-degree inside ``p`` at most ``Nz``, U-degree at most ``Na``."""
    Nz, Na = orders
    return TruncationSpec.for_point(X.n, _require_fixed(X, p).indices, Nz, Na)


def _compositions(k: int, total: int):
    """All ``m`` in ``Z_{>=0}^k`` with ``|m| <= total``, lexicographically."""
    return [m for m in product(range(total + 1), repeat=k) if sum(m) <= total]


def enumerate_degrees(X: ToricDatum, p, Nz: int) -> list:
    """Degrees ``d`` in ``Eff(p)`` with ``sum_{i in p} (iota d)_i <= Nz``."""
    p = _require_fixed(X, p)
    P = X.iota[list(p.indices), :]
    Pinv = ea.invert_unimodular(P)
    out = []
    for m in _compositions(X.k, Nz):
        d = tuple(int(x) for x in Pinv.dot(np.array(m, dtype=object)).tolist())
        D = tuple(int(x) for x in X.iota.dot(np.array(d, dtype=object)).tolist())
        out.append(DegreeVector(tuple(m), d, D))
    return out


def _u_keys(X, p):
    table = u_restriction(X, p)
    n = X.n
    return {i: (0,) * n + table.exponent(i) for i in table.outside}


def _z_key(X, D):
    return tuple(D) + (0,) * X.n


def _spec_for(X, p, spec, orders):
    if spec is None:
        return point_spec(X, p, orders)
    return spec


def i_eff(X: ToricDatum, p, spec: TruncationSpec = None, orders=DEFAULT_ORDERS) -> TruncatedSeries:
    """The effective-level series at ``p``, with every ``U_i|_p`` expanded."""
    p = _require_fixed(X, p)
    spec = _spec_for(X, p, spec, orders)
    ukeys = _u_keys(X, p)
    cache = {}

    def factor(i, D):
        # 1 / (q^{-1} U_i ; q^{-1})_D as a series
        if (i, D) not in cache:
            try:
                fp = pochhammer_finite(X.n, ukeys[i], D, base=-1, scale=QRat.q_power(-1)).inv()
            except PoleAtTruncation as exc:
                raise NonGenericSpecialization(str(exc)) from exc
            cache[i, D] = fp.expand(spec)
        return cache[i, D]

    total = TruncatedSeries.zero(spec)
    for deg in enumerate_degrees(X, p, spec.z_bound):
        if not spec.admits(_z_key(X, deg.D)):
            continue
        c = ONE
        for i in p.indices:
            c = c / q_pochhammer_number(QRat.q_power(-1), deg.D[i], base=-1)
        term = TruncatedSeries.one(spec).scale(c)
        for i in sorted(ukeys):
            term = term * factor(i, deg.D[i])
        total = total + term.mul_monomial(_z_key(X, deg.D))
    return total


def level_factor(X: ToricDatum, ukey, D: int, level: int) -> FactoredProduct:
    """``[(-1)^D U^{-D} q^{D(D+1)/2}]^level / (q U^{-1}; q)_D`` as a product."""
    n = X.n
    sign = -1 if (D * level) % 2 else 1
    scalar = QRat.q_power(level * D * (D + 1) // 2) * sign
    inv_u = tuple(-x for x in ukey)
    lev = FactoredProduct(n, scalar, tuple(level * D * x for x in inv_u))
    try:
        poch = pochhammer_finite(n, inv_u, D, base=1, scale=QRat.q_power(1))
    except PoleAtTruncation as exc:
        raise NonGenericSpecialization(str(exc)) from exc
    return lev / poch


def i_function(X: ToricDatum, p, level: int = 0, spec: TruncationSpec = None,
               orders=DEFAULT_ORDERS) -> FixedPointContribution:
    """Level-``l`` I-function at ``p``.

    ``series`` holds ``sum_d z^D prod_i [level factor]^l / (q U_i^{-1}; q)_{D_i}``.
    The standing factor ``1 / prod_{i not in p} (1 - U_i^{-1})`` is not a
    power series in the ``U_i``; it is kept symbolically in ``standing``.
    """
    p = _require_fixed(X, p)
    spec = _spec_for(X, p, spec, orders)
    ukeys = _u_keys(X, p)
    zero_key = (0,) * (2 * X.n)
    cache = {}

    def factor(i, D):
        if (i, D) not in cache:
            cache[i, D] = level_factor(X, ukeys[i], D, level).expand(spec)
        return cache[i, D]

    total = TruncatedSeries.zero(spec)
    for deg in enumerate_degrees(X, p, spec.z_bound):
        if not spec.admits(_z_key(X, deg.D)):
            continue
        c = ONE
        for i in p.indices:
            c = c * level_factor(X, zero_key, deg.D[i], level).as_qrat()
        term = TruncatedSeries.one(spec).scale(c)
        for i in sorted(ukeys):
            term = term * factor(i, deg.D[i])
        total = total + term.mul_monomial(_z_key(X, deg.D))
    standing = FactoredProduct(X.n)
    for i in sorted(ukeys):
        standing = standing * FactoredProduct(X.n, factors={(ONE, tuple(-x for x in ukeys[i])): -1})
    return FixedPointContribution(LogPrefactor.zero(X.n), total, point=p, level=level, standing=standing)


def modified_prefactor(X: ToricDatum, p) -> LogPrefactor:
    """``-sum_{i not in p} ln z_i ln U_i|_p``."""
    table = u_restriction(X, p)
    return LogPrefactor.z_times_a_monomials(X.n, [(i, table.exponent(i)) for i in table.outside], sign=-1)


def i_eff_modified(X: ToricDatum, p, spec: TruncationSpec = None, orders=DEFAULT_ORDERS,
                   convention: str = "standard") -> FixedPointContribution:
    """Modified effective-level I-function at ``p``.

    ``convention="standard"`` uses ``1/(U_i|_p; q)_inf``; ``"shifted"`` uses the
    variant ``1/(q U_i|_p; q)_inf`` for side-by-side comparison.
    """
    if convention not in ("standard", "shifted"):
        raise ValueError(f"unknown convention {convention!r}")
    p = _require_fixed(X, p)
    spec = _spec_for(X, p, spec, orders)
    ukeys = _u_keys(X, p)
    scale = ONE if convention == "standard" else QRat.q_power(1)
    inf = TruncatedSeries.one(spec)
    for i in sorted(ukeys):
        inf = inf * inv_infinite_pochhammer(ukeys[i], spec, scale=scale)
    series = inf * i_eff(X, p, spec)
    record = {"factors": [{"index": i, "aExp": list(ukeys[i][X.n:]), "shift": 0 if convention == "standard" else 1}
                          for i in sorted(ukeys)],
              "series": inf}
    return FixedPointContribution(modified_prefactor(X, p), series, point=p, level=1, infinite_part=record)


def i_eff_stack(X: ToricDatum, orders=DEFAULT_ORDERS) -> list:
    """One modified contribution per fixed point, lexicographically."""
    return [i_eff_modified(X, p, orders=orders) for p in fixed_points(X)]
