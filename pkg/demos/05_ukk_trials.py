"""Separated-sequence trials against the renorm's modulus.

A sequence in the renorm unit ball that stays pairwise epsilon-apart
while converging coordinatewise must have a limit of renorm at most
1 - delta(epsilon).  The harness builds such sequences from disjoint
bumps (fresh atom per element), measures everything, and applies
strict validity rules so a finite horizon can never manufacture a
false violation.
"""

from ukklattice import (
    LatticeVector,
    LqNorm,
    generate_bump_sequence,
    measure_separation,
    run_bump_campaign,
    run_ukk_trial,
    ukk_modulus,
)

print("modulus at p = 2:")
for eps in (0.5, 1.0, 1.5, 2.0):
    print(f"  delta({eps}) = {ukk_modulus(eps, 2.0):.6f}")
print()

# Anatomy of one trial: core 0.8 on the first atom, bumps of 0.6 on
# fresh atoms.  Every element has renorm exactly 1.
N = LqNorm(2, 24)
core = LatticeVector([0.8] + [0.0] * 23)
seq = generate_bump_sequence(N, 2.0, core, bump_height=0.6, horizon=12)
sep = measure_separation(seq, N, 2.0)
print("separation epsilon =", sep.value, "(0.6*sqrt(2))")

trial = run_ukk_trial(N, 2.0, seq, core)
print(f"valid={trial.valid}  passed={trial.passed}")
print(f"epsilon={trial.epsilon:.6f}  delta={trial.delta:.6f}")
print(f"limit renorm {trial.limit_renorm:.6f} <= 1 - delta = {1 - trial.delta:.6f}")
print(f"liminf consistency (eps/2 <= min distance to limit): {trial.liminf_ok}")
print()

# Invalid inputs are rejected, not failed: a constant sequence is not
# separated, so it proves nothing either way.
x = LatticeVector([0.5] + [0.0] * 23)
bad = run_ukk_trial(N, 2.0, [x, x, x], x)
print("constant sequence:", "valid =", bad.valid, "| reason:", bad.reason)
print()

# A seeded campaign of randomized bump trials.
camp = run_bump_campaign(N, 2.0, trials=200, seed=0, horizon=12)
print(f"campaign: {camp.passed}/{camp.total} passed, {camp.failed} failed, "
      f"{camp.invalid} invalid, min margin {camp.min_margin:.3e}")

# Fuzz mode feeds the harness decaying non-disjoint noise.  Such
# sequences are norm-convergent, so they are never genuinely separated;
# the validity rules file them as invalid rather than letting finite
# cutoffs fake a counterexample.
fuzz = run_bump_campaign(N, 2.0, trials=50, seed=1, horizon=12, mode="fuzz")
print(f"fuzz: {fuzz.valid} valid, {fuzz.invalid} invalid, {fuzz.failed} failed "
      "(soundness: failed stays 0)")
