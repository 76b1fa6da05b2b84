# Descent polynomials of the permutations with a fixed first letter
# have only real, simple roots. We check that exactly with Sturm chains.

from fractions import Fraction

from refined_eulerian import real_roots as rr

# the polynomials come out of a tower of differential operators
for stage, op, h in rr.h_tower(3, 3):
    print(f"{str(stage):8s} {op:3s} numerator {h.numerator}  / (1-x)^{h.pole_order}")

# root counts are exact; intervals come from bisection on the Sturm chain
p = rr.c_poly(3, 3)
print(p, rr.sturm_distinct_real_roots(p))
for lo, hi in rr.isolate_real_roots(p, Fraction(1, 10 ** 8)):
    print(f"  root in [{float(lo):.8f}, {float(hi):.8f}]")

# every step of the tower interlaces with the one before
parent, child = rr.h_numerator(2, 3), rr.h_numerator(3, 3)
print("interlaced:", rr.check_step_interlacing(parent, child, "xD"))

# a sweep: all first-letter polynomials up to n = 16
bad = [(n, k) for n in range(1, 17) for k in range(1, n + 1)
       if not rr.check_neggers_first_fixed(n, k).verdict]
print("failures:", bad)

# fixing both ends reduces to one letter fewer
print(rr.both_fixed_polynomial(7, 2, 5), rr.check_neggers_both_fixed(7, 2, 5))
