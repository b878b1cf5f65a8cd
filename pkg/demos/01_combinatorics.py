"""
Fixed points, cones and chambers of a toric stack
=================================================

The blow-up of P^2 at a point and its Gale dual, worked through by hand.
"""
from pathlib import Path

from toricmirror import cli, toric

DATA = Path(__file__).parent / "data"

X = cli.load_datum(DATA / "blp2.json")
D = toric.gale_dual(X)
print("iota =", X.iota.tolist())
print("beta =", X.beta.tolist())

# a fixed point is a k-subset of rows with nonzero minor; its mirror is the complement
for p in toric.fixed_points(X):
    print(f"{p}  K = {toric.kahler_cone(X, p).integer_generators()}  mirror point {p.complement(X.n)}")

# the Kahler cone of p^! is the attracting cone of p
for p in toric.fixed_points(X):
    assert toric.same_cone(toric.kahler_cone(D, p.complement(X.n)), toric.attracting_cone(X, p))

print("\nchambers of X")
for c in toric.chambers(X):
    print(" ", c.cone, [str(p) for p in c.points])
print("chambers of the dual")
for c in toric.chambers(D):
    print(" ", c.cone, [str(p) for p in c.points])

# the same quotient from an explicit stability parameter
print("\nX at theta = (3, 1):", [str(p) for p in toric.quotient_fixed_points(X, (3, 1))])
