# An exchangeable pair for the descent count: swap two random values.
# The conditional drift is linear in the descent count, which is what
# Stein's method needs.

from fractions import Fraction

import numpy as np

from refined_eulerian import stein

# the joint law of (D, D*) is symmetric
m = stein.exact_joint_dd(6)
print(m)
print("symmetric:", (m == m.T).all())

# E[D* - D | D = d] = (2(n-1) - 4d)/n, by full enumeration
print([str(stein.exact_drift(6, d)) for d in range(6)])
print("lambda for n = 8:", stein.lambda_of(8))

# per-position drifts telescope
p = (3, 1, 4, 5, 2, 6)
print(sum(stein.per_position_drift(p, i) for i in range(1, 6)), stein.telescoped_drift(p))

# larger n: Monte Carlo with rejection sampling, reproducible from a seed
rep = stein.mc_drift(50, 24, 100_000, seed=42)
print(rep)
print("within 4 SE of", rep.exact_target, ":", rep.within(4))

# seeds spread: how often is the exact value inside 4 SE?
hits = [stein.mc_drift(20, 9, 10_000, s).within(4) for s in range(30)]
print(sum(hits), "of", len(hits))
