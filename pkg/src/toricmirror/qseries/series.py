"""Truncated multivariate Laurent series in ``z_1..z_n, a_1..a_n`` over QRat.

A monomial is stored as a single tuple of ``2n`` integers: the ``z``
exponents followed by the ``a`` exponents.  Two linear gradings, one on each
block, decide which monomials are kept.
"""
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from ..errors import DimensionMismatch, OutOfTruncationRange, SpecMismatch
from .qrat import QRat


class ExponentMonomial(NamedTuple):
    zExp: tuple
    aExp: tuple

    @classmethod
    def from_key(cls, key, n=None) -> "ExponentMonomial":
        n = len(key) // 2 if n is None else n
        return cls(tuple(key[:n]), tuple(key[n:]))

    def key(self) -> tuple:
        return tuple(self.zExp) + tuple(self.aExp)


def monomial_key(zExp, aExp) -> tuple:
    if len(zExp) != len(aExp):
        raise DimensionMismatch("z and a exponent vectors differ in length")
    return tuple(int(x) for x in zExp) + tuple(int(x) for x in aExp)


def unit_key(n: int, block: str, i: int, power: int = 1) -> tuple:
    """Key of ``z_i**power`` or ``a_i**power`` (``i`` 0-based)."""
    key = [0] * (2 * n)
    key[i if block == "z" else n + i] = power
    return tuple(key)


def add_keys(k1, k2) -> tuple:
    return tuple(x + y for x, y in zip(k1, k2))


def swap_key(key) -> tuple:
    n = len(key) // 2
    return tuple(key[n:]) + tuple(key[:n])


@dataclass(frozen=True)
class TruncationSpec:
    """Two gradings ``l_z(zExp) = z_weights . zExp`` and ``l_a`` likewise, with bounds.

    A monomial is admitted when ``l_z <= z_bound`` and ``l_a <= a_bound``.
    There is no lower bound: operators may produce negative grades.
    """

    z_weights: tuple
    a_weights: tuple
    z_bound: int
    a_bound: int

    def __post_init__(self):
        if len(self.z_weights) != len(self.a_weights):
            raise DimensionMismatch("weight vectors differ in length")
        object.__setattr__(self, "z_weights", tuple(int(w) for w in self.z_weights))
        object.__setattr__(self, "a_weights", tuple(int(w) for w in self.a_weights))

    @property
    def n(self) -> int:
        return len(self.z_weights)

    @classmethod
    def for_point(cls, n: int, point: Iterable[int], z_bound: int, a_bound: int) -> "TruncationSpec":
        """Grading adapted to a fixed point: ``l_z`` counts z-exponents inside
        the point, ``l_a`` counts a-exponents outside it."""
        inside = set(point)
        zw = tuple(1 if i in inside else 0 for i in range(n))
        aw = tuple(0 if i in inside else 1 for i in range(n))
        return cls(zw, aw, z_bound, a_bound)

    def grade(self, key) -> tuple:
        n = self.n
        gz = sum(w * e for w, e in zip(self.z_weights, key[:n]) if w)
        ga = sum(w * e for w, e in zip(self.a_weights, key[n:]) if w)
        return gz, ga

    def admits(self, key) -> bool:
        gz, ga = self.grade(key)
        return gz <= self.z_bound and ga <= self.a_bound

    def widen(self, dz: int, da: int) -> "TruncationSpec":
        return TruncationSpec(self.z_weights, self.a_weights, self.z_bound + dz, self.a_bound + da)

    def with_bounds(self, z_bound: int, a_bound: int) -> "TruncationSpec":
        return TruncationSpec(self.z_weights, self.a_weights, z_bound, a_bound)

    def swap(self) -> "TruncationSpec":
        """The spec seen after exchanging the z and a blocks."""
        return TruncationSpec(self.a_weights, self.z_weights, self.a_bound, self.z_bound)

    def to_dict(self) -> dict:
        return {"zWeights": list(self.z_weights), "aWeights": list(self.a_weights),
                "zBound": self.z_bound, "aBound": self.a_bound}


class TruncatedSeries:
    """Finite map from monomial keys to nonzero QRat coefficients, plus a spec.

    Only admitted monomials are stored; every arithmetic result is cut back
    to the spec.  Binary operations require identical specs.
    """

    __slots__ = ("spec", "terms")

    def __init__(self, spec: TruncationSpec, terms=None, *, _trusted=False):
        self.spec = spec
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(int(x) for x in key)
            if len(key) != 2 * spec.n:
                raise DimensionMismatch(f"monomial of length {len(key)} in a series over {spec.n} variables")
            c = QRat.coerce(c)
            if not c.is_zero() and spec.admits(key):
                clean[key] = c
        self.terms = clean

    # constructors

    @classmethod
    def zero(cls, spec) -> "TruncatedSeries":
        return cls(spec, {}, _trusted=True)

    @classmethod
    def one(cls, spec) -> "TruncatedSeries":
        return cls.monomial(spec, (0,) * (2 * spec.n))

    @classmethod
    def monomial(cls, spec, key, coeff=1) -> "TruncatedSeries":
        return cls(spec, {tuple(key): coeff})

    # arithmetic

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
        return TruncatedSeries(self.spec, out, _trusted=True)

    def __neg__(self):
        return TruncatedSeries(self.spec, {k: -c for k, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        spec = self.spec
        n = spec.n
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        ga = {k: spec.grade(k) for k in a}
        gb = {k: spec.grade(k) for k in b}
        zb, ab = spec.z_bound, spec.a_bound
        out = {}
        for k2, c2 in b.items():
            z2, a2 = gb[k2]
            for k1, c1 in a.items():
                z1, a1 = ga[k1]
                if z1 + z2 > zb or a1 + a2 > ab:
                    continue
                key = tuple(x + y for x, y in zip(k1, k2))
                prod = c1 * c2
                s = out.get(key)
                out[key] = prod if s is None else s + prod
        out = {k: c for k, c in out.items() if not c.is_zero()}
        return TruncatedSeries(spec, out, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "TruncatedSeries":
        c = QRat.coerce(c)
        if c.is_zero():
            return TruncatedSeries.zero(self.spec)
        if c.is_one():
            return self
        return TruncatedSeries(self.spec, {k: v * c for k, v in self.terms.items()}, _trusted=True)

    def mul_monomial(self, key, coeff=1) -> "TruncatedSeries":
        """Multiply by ``coeff * x**key``, dropping what leaves the window."""
        coeff = QRat.coerce(coeff)
        if coeff.is_zero():
            return TruncatedSeries.zero(self.spec)
        out = {}
        for k, c in self.terms.items():
            nk = add_keys(k, key)
            if self.spec.admits(nk):
                out[nk] = c * coeff
        return TruncatedSeries(self.spec, out, _trusted=True)

    def map_coefficients(self, fn) -> "TruncatedSeries":
        out = {}
        for k, c in self.terms.items():
            v = fn(k, c)
            if not v.is_zero():
                out[k] = v
        return TruncatedSeries(self.spec, out, _trusted=True)

    def truncate(self, spec: TruncationSpec) -> "TruncatedSeries":
        """Re-home the series under ``spec``, keeping only admitted terms."""
        if spec.n != self.spec.n:
            raise DimensionMismatch("truncation spec has a different number of variables")
        return TruncatedSeries(spec, {k: c for k, c in self.terms.items() if spec.admits(k)}, _trusted=True)

    def swap_blocks(self) -> "TruncatedSeries":
        return TruncatedSeries(self.spec.swap(), {swap_key(k): c for k, c in self.terms.items()},
                               _trusted=True)

    # queries

    def coefficient(self, key) -> QRat:
        key = tuple(key)
        if isinstance(key[0], tuple):
            key = key[0] + key[1]
        if not self.spec.admits(key):
            raise OutOfTruncationRange(f"monomial {key} lies outside the truncation window")
        return self.terms.get(key, QRat())

    def constant_term(self) -> QRat:
        return self.terms.get((0,) * (2 * self.spec.n), QRat())

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        """Terms in lexicographic key order."""
        for key in sorted(self.terms):
            yield key, self.terms[key]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def diff(self, other) -> list:
        """Keys (sorted) whose coefficients differ, compared on the common window."""
        keys = set(self.terms) | set(other.terms)
        return sorted(k for k in keys if self.terms.get(k, QRat()) != other.terms.get(k, QRat()))

    def to_records(self) -> list[dict]:
        n = self.spec.n
        return [{"zExp": list(k[:n]), "aExp": list(k[n:]),
                 "num": c.num_coeffs(), "den": c.den_coeffs()} for k, c in self]

    @classmethod
    def from_records(cls, spec, records) -> "TruncatedSeries":
        terms = {}
        for r in records:
            terms[monomial_key(r["zExp"], r["aExp"])] = QRat(r["num"], r["den"])
        return cls(spec, terms)

    def __repr__(self):
        return f"TruncatedSeries({len(self.terms)} terms, {self.spec})"

    def pretty(self, names=None) -> str:
        n = self.spec.n
        names = names or [f"z{i + 1}" for i in range(n)] + [f"a{i + 1}" for i in range(n)]
        lines = []
        for k, c in self:
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(names, k) if e) or "1"
            lines.append(f"({c}) * {mono}")
        return "\n".join(lines) if lines else "0"
