"""Log-bilinear prefactors ``exp(v^T B v / ln q)`` and the shift/tau operations.

Here ``v = (ln z_1, .., ln z_n, ln a_1, .., ln a_n)``.  Such a prefactor is
never expanded; it only matters through what it contributes when a
variable is rescaled by a power of ``q``:

    v -> v + s ln q   turns   exp(v^T B v / ln q)   into
    exp(v^T B v / ln q) * x^(2 B s) * q^(s^T B s),

which is an honest monomial as long as ``2 B s`` and ``s^T B s`` are
integral.
"""
import dataclasses
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DimensionMismatch, NonIntegralShift
from .qrat import QRat
from .series import TruncatedSeries, swap_key, unit_key


class LogPrefactor:
    """Symmetric rational ``2n x 2n`` matrix ``B``; immutable."""

    __slots__ = ("n", "B")

    def __init__(self, n: int, B=None):
        self.n = n
        size = 2 * n
        if B is None:
            rows = [[Fraction(0)] * size for _ in range(size)]
        else:
            rows = [[Fraction(x) for x in row] for row in B]
            if len(rows) != size or any(len(r) != size for r in rows):
                raise DimensionMismatch(f"prefactor matrix must be {size}x{size}")
            for i in range(size):
                for j in range(i):
                    if rows[i][j] != rows[j][i]:
                        raise ValueError("prefactor matrix must be symmetric")
        self.B = tuple(tuple(r) for r in rows)

    @classmethod
    def zero(cls, n: int) -> "LogPrefactor":
        return cls(n)

    @classmethod
    def from_products(cls, n: int, products) -> "LogPrefactor":
        """Build ``sum c * ln(v_u) * ln(v_w)`` from ``(u, w, c)`` triples.

        Indices address the ``2n`` log-variables (z block first).
        """
        rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for u, w, c in products:
            c = Fraction(c)
            if u == w:
                rows[u][u] += c
            else:
                rows[u][w] += c / 2
                rows[w][u] += c / 2
        return cls(n, rows)

    @classmethod
    def diagonal_coupling(cls, n: int) -> "LogPrefactor":
        """``sum_i ln z_i ln a_i``."""
        return cls.from_products(n, [(i, n + i, 1) for i in range(n)])

    @classmethod
    def z_times_a_monomials(cls, n: int, pairs, sign: int = 1) -> "LogPrefactor":
        """``sign * sum ln z_i * ln(a^e)`` over ``(i, e)`` pairs, ``e`` an a-exponent vector."""
        prods = []
        for i, e in pairs:
            for j, ej in enumerate(e):
                if ej:
                    prods.append((i, n + j, sign * ej))
        return cls.from_products(n, prods)

    def __add__(self, other):
        if other.n != self.n:
            raise DimensionMismatch("prefactors over different variable counts")
        return LogPrefactor(self.n, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.B, other.B)])

    def __neg__(self):
        return LogPrefactor(self.n, [[-a for a in r] for r in self.B])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, LogPrefactor):
            return NotImplemented
        return self.n == other.n and self.B == other.B

    def __hash__(self):
        return hash(self.B)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.B for x in r)

    def swap_blocks(self) -> "LogPrefactor":
        n = self.n
        perm = list(range(n, 2 * n)) + list(range(n))
        return LogPrefactor(n, [[self.B[perm[i]][perm[j]] for j in range(2 * n)] for i in range(2 * n)])

    def multiplier(self, s) -> tuple:
        """``(key, e)`` such that shifting by ``s`` multiplies by ``x^key * q^e``."""
        s = [int(x) for x in s]
        if len(s) != 2 * self.n:
            raise DimensionMismatch("shift vector has the wrong length")
        Bs = [sum((row[j] * s[j] for j in range(len(s)) if s[j]), Fraction(0)) for row in self.B]
        key = []
        for x in Bs:
            y = 2 * x
            if y.denominator != 1:
                raise NonIntegralShift(f"shift {s} needs a fractional exponent {y}")
            key.append(int(y))
        e = sum((s[i] * Bs[i] for i in range(len(s)) if s[i]), Fraction(0))
        if e.denominator != 1:
            raise NonIntegralShift(f"shift {s} needs the power q^{e}")
        return tuple(key), int(e)

    def to_rows(self) -> list:
        """Row-major entries as ``"p/q"`` strings."""
        return [[str(x) for x in r] for r in self.B]

    def terms(self) -> list:
        """Nonzero ``(u, w, c)`` with ``u <= w`` such that the form is ``sum c ln v_u ln v_w``."""
        out = []
        for u in range(2 * self.n):
            for w in range(u, 2 * self.n):
                c = self.B[u][w] if u == w else 2 * self.B[u][w]
                if c:
                    out.append((u, w, c))
        return out

    def __repr__(self):
        n = self.n
        names = [f"ln z{i + 1}" for i in range(n)] + [f"ln a{i + 1}" for i in range(n)]
        body = " + ".join(f"({c})*{names[u]}*{names[w]}" for u, w, c in self.terms()) or "0"
        return f"LogPrefactor[{body}]"


@dataclass(frozen=True)
class PrefactoredSeries:
    """``exp(prefactor / ln q) * series``."""

    prefactor: LogPrefactor
    series: TruncatedSeries

    @property
    def spec(self):
        return self.series.spec

    def same_prefactor(self, other) -> bool:
        return self.prefactor == other.prefactor


def scale_by_q_shift(series: TruncatedSeries, s) -> TruncatedSeries:
    """Substitute ``x -> q^s x`` in a bare series (no prefactor)."""
    s = tuple(int(x) for x in s)

    def f(k, c):
        e = sum(a * b for a, b in zip(s, k) if a)
        return c * QRat.q_power(e) if e else c

    return series.map_coefficients(f)


def shift(obj, s):
    """Rescale the log-variables by ``s`` (a length-``2n`` integer vector).

    On a bare series only the coefficients change.  On a prefactored series
    the prefactor is left as it is and its multiplier is pushed into the
    series; if that multiplier has negative grade the window shrinks so
    that every stored coefficient remains exact.
    """
    if isinstance(obj, TruncatedSeries):
        return scale_by_q_shift(obj, s)
    series = scale_by_q_shift(obj.series, s)
    key, e = obj.prefactor.multiplier(s)
    spec = series.spec
    gz, ga = spec.grade(key)
    out = series.mul_monomial(key, QRat.q_power(e))
    if gz < 0 or ga < 0:
        out = out.truncate(spec.widen(min(gz, 0), min(ga, 0)))
    return dataclasses.replace(obj, series=out)


def shift_variable(obj, which: str, i: int, power: int = 1):
    """``x_i -> q^power x_i`` for ``x`` in ``{"z", "a"}`` and 0-based ``i``."""
    return shift(obj, unit_key(obj.spec.n, which, i, power))


def apply_tau(obj):
    """Exchange ``z`` and ``a`` and send ``q -> 1/q``.

    On coefficients this is ``invert_q``; the prefactor swaps blocks and
    changes sign because ``ln q`` does.
    """
    if isinstance(obj, TruncatedSeries):
        return _tau_series(obj)
    return dataclasses.replace(obj, prefactor=-obj.prefactor.swap_blocks(), series=_tau_series(obj.series))


def _tau_series(series: TruncatedSeries) -> TruncatedSeries:
    terms = {swap_key(k): c.invert_q() for k, c in series.terms.items()}
    return TruncatedSeries(series.spec.swap(), terms, _trusted=True)
