"""Exact lattice algebra on coordinate vectors.

Every operation here is componentwise and exact in floating point:
no tolerances, no rounding slack.  That exactness is what lets the
rest of the package make zero-tolerance disjointness claims.
"""

from ukklattice import (
    LatticeVector,
    absolute,
    disjoint_residuals,
    is_disjoint,
    join,
    meet,
    neg_part,
    pos_part,
    truncate,
)

x = LatticeVector([3.0, -1.5, 0.0, 2.0])
y = LatticeVector([1.0, 4.0, -2.0, 0.0])

print("x          =", x.to_list())
print("y          =", y.to_list())
print("x+ (pos)   =", pos_part(x).to_list())
print("x- (neg)   =", neg_part(x).to_list())
print("|x|        =", absolute(x).to_list())
print("x ^ y      =", meet(x, y).to_list())
print("x v y      =", join(x, y).to_list())
print()

# Disjointness means the supports do not meet.
a = LatticeVector([1.0, 0.0, 0.0, 0.0])
b = LatticeVector([0.0, 0.0, 5.0, 0.0])
print("a, b disjoint:", is_disjoint(a, b))
print("x, y disjoint:", is_disjoint(x, y))
print()

# Truncation clamps the second vector into the envelope of the first.
u = LatticeVector([1.0, 1.0, 1.0, 1.0])
print("truncate(u, x) =", truncate(u, x).to_list())
print("truncate(x, u) =", truncate(x, u).to_list())
print()

# Any two vectors can be stripped to an exactly disjoint pair:
# each keeps only the coordinates where it strictly dominates.
rx, ry = disjoint_residuals(x, y)
print("residual of x  =", rx.to_list())
print("residual of y  =", ry.to_list())
print("residuals disjoint (zero tolerance):", is_disjoint(rx, ry))
