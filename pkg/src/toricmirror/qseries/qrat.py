"""Exact rational functions of one variable ``q`` with integer coefficients."""
from fractions import Fraction

from flint import fmpz_poly

from ..errors import DivisionByZero

_ONE = fmpz_poly([1])
_ZERO = fmpz_poly([])


def _poly(x) -> fmpz_poly:
    if isinstance(x, fmpz_poly):
        return x
    if isinstance(x, int):
        return fmpz_poly([x])
    return fmpz_poly([int(c) for c in x])


class QRat:
    """A reduced fraction ``num/den`` of integer polynomials in ``q``.

    The representation is canonical: ``gcd(num, den) = 1`` (including the
    integer content) and the leading coefficient of ``den`` is positive.
    Two QRats are equal iff their numerators and denominators coincide.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, _reduced=False):
        num = _poly(num)
        den = _poly(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = _ONE
            else:
                g = num.gcd(den)
                if g != _ONE:
                    num = num // g
                    den = den // g
                # fmpz_poly.gcd already strips content, but keep the sign fixed
                if den.coeffs()[-1] < 0:
                    num, den = -num, -den
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_int(cls, n: int) -> "QRat":
        return cls(fmpz_poly([n]), _ONE, _reduced=True)

    @classmethod
    def from_fraction(cls, f: Fraction) -> "QRat":
        return cls(f.numerator, f.denominator)

    @classmethod
    def q_power(cls, e: int) -> "QRat":
        """``q**e`` for any integer ``e``."""
        mono = fmpz_poly([0] * abs(e) + [1])
        if e >= 0:
            return cls(mono, _ONE, _reduced=True)
        return cls(_ONE, mono, _reduced=True)

    @classmethod
    def coerce(cls, x) -> "QRat":
        if isinstance(x, QRat):
            return x
        if isinstance(x, int):
            return cls.from_int(x)
        if isinstance(x, Fraction):
            return cls.from_fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QRat")

    # arithmetic

    def __add__(self, other):
        other = QRat.coerce(other)
        if self.den == other.den:
            return QRat(self.num + other.num, self.den)
        return QRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QRat(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-QRat.coerce(other))

    def __rsub__(self, other):
        return QRat.coerce(other) - self

    def __mul__(self, other):
        other = QRat.coerce(other)
        if self.is_zero() or other.is_zero():
            return QRat()
        if other.den == _ONE and other.num == _ONE:
            return self
        if self.den == _ONE and self.num == _ONE:
            return other
        return QRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "QRat":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return QRat(self.den, self.num)

    def __truediv__(self, other):
        return self * QRat.coerce(other).inv()

    def __rtruediv__(self, other):
        return QRat.coerce(other) * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return QRat(self.num ** e, self.den ** e, _reduced=True)

    def invert_q(self) -> "QRat":
        """Substitute ``q -> 1/q`` and clear the resulting powers of ``q``."""
        n = self.num.coeffs()
        d = self.den.coeffs()
        if not n:
            return self
        # p(1/q) = q^{-deg p} * reversed(p)(q)
        shift = (len(d) - 1) - (len(n) - 1)
        rn = fmpz_poly(n[::-1])
        rd = fmpz_poly(d[::-1])
        if shift >= 0:
            rn = rn * fmpz_poly([0] * shift + [1])
        else:
            rd = rd * fmpz_poly([0] * (-shift) + [1])
        return QRat(rn, rd)

    # predicates and views

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == _ONE and self.den == _ONE

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRat.coerce(other)
        if not isinstance(other, QRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    def num_coeffs(self) -> list[int]:
        """Ascending integer coefficients of the numerator (``[]`` for zero)."""
        return [int(c) for c in self.num.coeffs()]

    def den_coeffs(self) -> list[int]:
        return [int(c) for c in self.den.coeffs()]

    def evaluate(self, q):
        """Evaluate at a number, using exact ``Fraction`` arithmetic for rationals."""
        q = Fraction(q)
        num = sum((Fraction(c) * q ** i for i, c in enumerate(self.num_coeffs())), Fraction(0))
        den = sum((Fraction(c) * q ** i for i, c in enumerate(self.den_coeffs())), Fraction(0))
        if den == 0:
            raise DivisionByZero(f"pole at q = {q}")
        return num / den

    def __repr__(self):
        return f"QRat({self})"

    def __str__(self):
        num = _fmt(self.num_coeffs())
        if self.den == _ONE:
            return num
        den = _fmt(self.den_coeffs())
        if len([c for c in self.num_coeffs() if c]) > 1:
            num = f"({num})"
        if len([c for c in self.den_coeffs() if c]) > 1 or self.den_coeffs()[-1] != 1:
            den = f"({den})"
        return f"{num}/{den}"


def _fmt(coeffs):
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            mono = str(abs(c))
        else:
            power = "q" if i == 1 else f"q^{i}"
            mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
        parts.append(("-" if c < 0 else "+", mono))
    if not parts:
        return "0"
    sign, first = parts[0]
    out = ("-" if sign == "-" else "") + first
    for sign, mono in parts[1:]:
        out += f" {sign} {mono}"
    return out


ZERO = QRat()
ONE = QRat.from_int(1)
