"""q-Pochhammer symbols as symbolic factored products and as truncated series.

Convention: ``(x; b)_d = prod_{l=0}^{d-1} (1 - x b^l)`` for ``d >= 0`` and
``(x; b)_d = 1 / prod_{l=1}^{-d} (1 - x b^{-l})`` for ``d < 0``, with the base
``b`` a power of ``q``.  With it ``(x; q)_d * (x/q; 1/q)_{-d} = 1`` holds for
every integer ``d``.
"""
from math import comb

from ..errors import NonPositiveGrading, PoleAtTruncation
from .qrat import ONE, QRat
from .series import TruncatedSeries, TruncationSpec, add_keys


def _neg_key(key):
    return tuple(-x for x in key)


def _scaled_key(key, s):
    return tuple(s * x for x in key)


class FactoredProduct:
    """``scalar * x^monomial * prod (1 - c x^m)^e`` with QRat ``c`` and integer ``e``.

    Factors are kept in a canonical orientation (first nonzero entry of ``m``
    positive) so that two products are equal iff their data coincide.
    Factors with ``m = 0`` are folded into the scalar.
    """

    __slots__ = ("n", "scalar", "monomial", "factors")

    def __init__(self, n: int, scalar=ONE, monomial=None, factors=None):
        self.n = n
        self.scalar = QRat.coerce(scalar)
        self.monomial = tuple(monomial) if monomial is not None else (0,) * (2 * n)
        self.factors = {}
        for (c, m), e in (factors or {}).items():
            self._absorb(QRat.coerce(c), tuple(m), e)

    def _absorb(self, c: QRat, m: tuple, e: int):
        if e == 0 or self.scalar.is_zero():
            return
        if c.is_zero():
            return
        if not any(m):
            base = ONE - c
            if base.is_zero():
                if e < 0:
                    raise PoleAtTruncation(f"factor (1 - {c}) vanishes in a denominator")
                self.scalar = QRat()
                self.factors = {}
                return
            self.scalar = self.scalar * base ** e
            return
        first = next(x for x in m if x)
        if first < 0:
            # 1 - c x^m = (-c x^m) (1 - c^{-1} x^{-m})
            self.scalar = self.scalar * (-c) ** e
            self.monomial = add_keys(self.monomial, _scaled_key(m, e))
            c, m = c.inv(), _neg_key(m)
        key = (c, m)
        total = self.factors.get(key, 0) + e
        if total:
            self.factors[key] = total
        else:
            self.factors.pop(key, None)

    @classmethod
    def constant(cls, n: int, c) -> "FactoredProduct":
        return cls(n, c)

    def is_zero(self) -> bool:
        return self.scalar.is_zero()

    def is_constant(self) -> bool:
        return not self.factors and not any(self.monomial)

    def as_qrat(self) -> QRat:
        if not self.is_constant():
            raise ValueError("product still depends on the variables")
        return self.scalar

    def __mul__(self, other: "FactoredProduct") -> "FactoredProduct":
        out = FactoredProduct(self.n, self.scalar * other.scalar,
                              add_keys(self.monomial, other.monomial), self.factors)
        for (c, m), e in other.factors.items():
            out._absorb(c, m, e)
        return out

    def inv(self) -> "FactoredProduct":
        return FactoredProduct(self.n, self.scalar.inv(), _neg_key(self.monomial),
                               {k: -e for k, e in self.factors.items()})

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        out = FactoredProduct(self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, FactoredProduct):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (self.scalar == other.scalar and self.monomial == other.monomial
                and self.factors == other.factors)

    def __repr__(self):
        fs = " ".join(f"(1 - ({c}) x^{m})^{e}" for (c, m), e in sorted(self.factors.items(), key=lambda t: t[0][1]))
        return f"FactoredProduct({self.scalar} x^{self.monomial} {fs})"

    def expand(self, spec: TruncationSpec) -> TruncatedSeries:
        """Expand as a series admitted by ``spec``.

        Each factor is oriented so that its monomial has nonnegative grade;
        the overall monomial may have negative grade, in which case the
        factors are expanded on a correspondingly enlarged window.
        """
        if self.is_zero():
            return TruncatedSeries.zero(spec)
        scalar, mono = self.scalar, self.monomial
        oriented = []
        for (c, m), e in self.factors.items():
            gz, ga = spec.grade(m)
            if gz >= 0 and ga >= 0 and (gz, ga) != (0, 0):
                oriented.append((c, m, e))
            elif gz <= 0 and ga <= 0 and (gz, ga) != (0, 0):
                scalar = scalar * (-c) ** e
                mono = add_keys(mono, _scaled_key(m, e))
                oriented.append((c.inv(), _neg_key(m), e))
            else:
                raise NonPositiveGrading(f"factor monomial {m} has grade {(gz, ga)}")
        gz0, ga0 = spec.grade(mono)
        inner = spec.with_bounds(spec.z_bound - gz0, spec.a_bound - ga0)
        if inner.z_bound < 0 or inner.a_bound < 0:
            return TruncatedSeries.zero(spec)
        acc = TruncatedSeries.one(inner)
        for c, m, e in oriented:
            acc = acc * _binomial_series(c, m, e, inner)
        out = {}
        for k, v in acc.terms.items():
            out[add_keys(k, mono)] = v * scalar
        return TruncatedSeries(spec, out)


def _binomial_series(c: QRat, m: tuple, e: int, spec: TruncationSpec) -> TruncatedSeries:
    """``(1 - c x^m)^e`` truncated; ``m`` must have nonnegative, nonzero grade."""
    terms = {}
    j = 0
    power = ONE
    key = (0,) * len(m)
    while spec.admits(key):
        coeff = comb(e, j) * (-1) ** j if e >= 0 else comb(-e + j - 1, j)
        if e >= 0 and j > e:
            break
        terms[key] = power * coeff
        j += 1
        power = power * c
        key = add_keys(key, m)
    return TruncatedSeries(spec, terms)


def pochhammer_finite(n: int, x, d: int, base: int = 1, scale=ONE) -> FactoredProduct:
    """``(scale * x^x; q^base)_d`` as a FactoredProduct over ``n`` variable pairs.

    ``x`` is a monomial key (length ``2n``); pass the zero key for a pure
    q-number, in which case the result is constant (see ``as_qrat``).
    Raises PoleAtTruncation when a reciprocal factor vanishes identically.
    """
    x = tuple(x)
    scale = QRat.coerce(scale)
    out = FactoredProduct(n)
    if d >= 0:
        for l in range(d):
            out._absorb(scale * QRat.q_power(base * l), x, 1)
    else:
        for l in range(1, -d + 1):
            out._absorb(scale * QRat.q_power(-base * l), x, -1)
    return out


def q_pochhammer_number(c, d: int, base: int = 1) -> QRat:
    """``(c; q^base)_d`` for a QRat ``c``."""
    return pochhammer_finite(0, (), d, base, c).as_qrat()


def _check_positive(spec, x):
    gz, ga = spec.grade(x)
    if gz < 0 or ga < 0 or (gz, ga) == (0, 0):
        raise NonPositiveGrading(f"monomial {x} has grade {(gz, ga)}; expansion would not terminate")


def expand_inverse_linear(x, c, spec: TruncationSpec) -> TruncatedSeries:
    """``1 / (1 - c x)`` as a geometric series."""
    x = tuple(x)
    _check_positive(spec, x)
    return _binomial_series(QRat.coerce(c), x, -1, spec)


def inv_infinite_pochhammer(x, spec: TruncationSpec, scale=ONE) -> TruncatedSeries:
    """``1 / (scale * x; q)_inf = sum_m (scale x)^m / (q; q)_m``."""
    x = tuple(x)
    _check_positive(spec, x)
    scale = QRat.coerce(scale)
    terms = {}
    key = (0,) * len(x)
    m, coeff = 0, ONE
    while spec.admits(key):
        terms[key] = coeff
        m += 1
        coeff = coeff * scale / (ONE - QRat.q_power(m))
        key = add_keys(key, x)
    return TruncatedSeries(spec, terms)


def infinite_pochhammer(x, spec: TruncationSpec, scale=ONE) -> TruncatedSeries:
    """``(scale * x; q)_inf = sum_m (scale x / q)^m / (1/q; 1/q)_m``."""
    x = tuple(x)
    _check_positive(spec, x)
    step = QRat.coerce(scale) * QRat.q_power(-1)
    terms = {}
    key = (0,) * len(x)
    m, coeff = 0, ONE
    while spec.admits(key):
        terms[key] = coeff
        m += 1
        coeff = coeff * step / (ONE - QRat.q_power(-m))
        key = add_keys(key, x)
    return TruncatedSeries(spec, terms)
