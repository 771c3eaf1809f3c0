"""Norm oracles and the axiom audit.

A NormOracle evaluates batches of vectors; `describe()` serializes it
to the JSON grammar the CLI configs use, and `parse_norm_spec` reads
that grammar back.  `audit_norm_axioms` samples random vectors and
measures worst-case violations of the norm axioms, using each kind's
monotonicity constant.
"""

import json

from ukklattice import (
    BlockNorm,
    LatticeVector,
    LqNorm,
    PosNegMaxNorm,
    WeightedLqNorm,
    audit_norm_axioms,
    parse_norm_spec,
)

x = LatticeVector([3.0, -4.0, 1.0, 0.0])

oracles = [
    LqNorm(1, 4),
    LqNorm(2, 4),
    LqNorm(float("inf"), 4),
    WeightedLqNorm(2, [2.0, 1.0, 1.0, 0.5]),
    BlockNorm([[0, 1], [2, 3]], [LqNorm(1, 2)] * 2, LqNorm(float("inf"), 2)),
    PosNegMaxNorm(LqNorm(1, 4)),
]

for N in oracles:
    print(f"{json.dumps(N.describe()):<110} N(x) = {N(x):.6f}")
print()

# Round trip through the config grammar.
spec = oracles[4].describe()
again = parse_norm_spec(spec)
print("grammar round trip stable:", again.describe() == spec)
print()

# The audit reports worst violations; all builtins pass at 1e-9.
for N in oracles:
    rep = audit_norm_axioms(N, samples=2000, seed=7)
    print(f"{N.describe()['kind']:<12} passed={rep.passed}  "
          f"triangle={rep.triangle_violation:.1e}  "
          f"homogeneity={rep.homogeneity_violation:.1e}  "
          f"monotone_constant={rep.monotone_constant}")

# The pos/neg wrapper is only 2-monotone: two vectors with the same
# modulus can differ by a factor of 2, so no constant below 2 works.
# The audit knows the kind's constant and does not flag this.
N = PosNegMaxNorm(LqNorm(1, 2))
aligned = LatticeVector([1.0, 1.0])
split = LatticeVector([1.0, -1.0])
print()
print("pos/neg wrapper: N([1,1]) =", N(aligned), " N([1,-1]) =", N(split),
      "(equal modulus, values differ by the constant 2)")
