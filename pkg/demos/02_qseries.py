"""
Exact q-series
==============

Rational functions of q, Pochhammer symbols and the mirror map tau.
"""
from toricmirror.qseries import (
    ONE,
    QRat,
    TruncationSpec,
    apply_tau,
    infinite_pochhammer,
    inv_infinite_pochhammer,
    pochhammer_finite,
    q_pochhammer_number,
    unit_key,
)

q = QRat.q_power(1)
r = (ONE - q) / (ONE - q * q)
print("(1 - q)/(1 - q^2) =", r)
print("q -> 1/q gives   ", r.invert_q())

# negative index: (c; q)_{-d} = 1/(c q^{-d}; q)_d
c = QRat([1, 2])
for d in range(1, 4):
    assert q_pochhammer_number(c, -d) == ONE / q_pochhammer_number(c * QRat.q_power(-d), d)
print("(1+2q; q)_-2 =", q_pochhammer_number(c, -2))

# symbolic Pochhammer symbols stay factored until expanded on a window
z = unit_key(1, "z", 0)
print("(z; q)_3 =", pochhammer_finite(1, z, 3))

spec = TruncationSpec((1,), (1,), 4, 4)
s = inv_infinite_pochhammer(z, spec)
print("\n1/(z; q)_inf =")
print(s.pretty())

# tau swaps z and a and inverts q: 1/(z; q)_inf becomes (q a; q)_inf
t = apply_tau(s)
assert t == infinite_pochhammer(unit_key(1, "a", 0), spec.swap(), scale=q)
print("\ntau of it =")
print(t.pretty())
