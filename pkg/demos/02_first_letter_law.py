# What does the first letter look like when you condition on d descents?

from fractions import Fraction

from refined_eulerian import moments

n, d = 12, 4
dist = moments.first_dist(n, d)
for k, p in enumerate(dist.probs, 1):
    print(f"P(first = {k:2d}) = {float(p):.5f}  " + "#" * int(200 * p))

# the mean is exactly d + 1, for every n
print("E[first] =", moments.expected_first(n, d))
print("E[last]  =", moments.expected_last(n, d))

# higher rising moments from a closed double sum, checked against the direct sum
for m in range(5):
    a, b = moments.rising_moment(n, d, m), moments.rising_moment_direct(n, d, m)
    print(f"m={m}: {a}  (direct sum agrees: {a == b})")

# the shape is unimodal; which of seven patterns applies depends on n and d
for dd in range(n):
    print(dd, moments.unimodal_case(n, dd))

# descent count itself: mean (n-1)/2, variance (n+1)/12
print(moments.des_mean_var(n))
