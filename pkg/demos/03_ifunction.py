"""
I-functions at fixed points
===========================

The effective-level series of P^1 and of the blow-up, and the modified
series that carries a log prefactor.
"""
from pathlib import Path

from toricmirror import cli, ifunction, toric

DATA = Path(__file__).parent / "data"

P1 = cli.load_datum(DATA / "p1.json")
p = toric.FixedPoint.from_labels([1])
s = ifunction.i_eff(P1, p, orders=(2, 1))
print("P^1 at {1}, z-order 2, a-order 1:")
print(s.pretty())

# the level-one I-function agrees with the effective-level series
assert ifunction.i_function(P1, p, 1, orders=(2, 1)).series == s

X = cli.load_datum(DATA / "blp2.json")
print("\neffective levels:", [str(x) for x in toric.effective_levels(X)])
for pt in toric.fixed_points(X):
    t = toric.u_restriction(X, pt)
    print(pt, {f"U{i + 1}": t.exponent(i) for i in t.outside})

m = ifunction.i_eff_modified(X, toric.FixedPoint.from_labels([2, 3]), orders=(1, 1))
print("\nmodified series at {2,3}: prefactor", m.prefactor, f"and {len(m.series.terms)} terms")
